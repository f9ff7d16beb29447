#pragma once

// Shooting formulation of the Rayleigh eigenproblem: integrate
//   psi'' = (alpha^2 + V''/(V - c)) psi
// backward from the far field with the decaying data
//   psi(Y0) = exp(-alpha Y0), psi'(Y0) = -alpha exp(-alpha Y0),
// and solve psi(0, c) = 0 for c by Newton's method.

#include <vector>

#include "couette/rayleigh_spectral.hpp"
#include "couette/spline.hpp"
#include "couette/types.hpp"

namespace couette {

struct ShootingConfig {
  double Y0 = 30.0;
  int steps = 30000;
  double newton_tol = 1e-10;
  int max_iters = 50;

  double step() const { return Y0 / steps; }
  void validate() const;
};

inline constexpr double kPoleGuard = 1e-8;

struct ShotResult {
  Complex psi0;     // psi(0, c)
  Complex dpsi0_dc; // d psi(0, c) / dc
  Complex dpsi0;    // d psi / dY at Y = 0
};

/// Rayleigh ODE coefficients sampled at the RK4 nodes and half nodes by cubic
/// spline interpolation of the profile.
class RayleighShooter {
 public:
  RayleighShooter(const RayleighProblem& problem, const ShootingConfig& config);

  /// Integrates from Y0 to 0 with initial data scale * (1, -alpha) exp(-alpha Y0).
  ShotResult shoot(Complex c, double scale = 1.0) const;

  /// Like shoot, also recording (psi, psi') at every step-th RK node, starting at Y = 0.
  /// Returns the samples in increasing Y.
  void trajectory(Complex c, int stride, CVector& psi, CVector& dpsi) const;

  const ShootingConfig& config() const { return config_; }
  double alpha() const { return alpha_; }
  /// V and V'' at Y = j * step / 2, j = 0..2 steps.
  const Vector& velocity() const { return v_; }
  const Vector& curvature() const { return vpp_; }

 private:
  template <typename Observer>
  ShotResult integrate(Complex c, double scale, Observer&& observe) const;

  ShootingConfig config_;
  double alpha_;
  Vector v_;
  Vector vpp_;
};

/// psi(0, c) and its exact c-derivative from the co-integrated variational system.
ShotResult integrate_shot(Complex c, const RayleighProblem& problem,
                          const ShootingConfig& config = {});

struct EigenPair {
  Complex c;
  Vector Y;       // profile nodes in [0, Y0]
  CVector psi;    // normalized so that max |psi| = 1, with psi real at its peak
  CVector dpsi;   // d psi / dY, same normalization
  CVector omega;  // (d^2/dY^2 - alpha^2) psi by centered differences
  Complex dpsi0;  // d psi / dY at the wall
  double psi0_residual = 0.0;  // |psi(0, c)| of the unnormalized shot
  int iterations = 0;
};

/// Newton iteration c <- c - psi(0, c) / d_c psi(0, c) from c_seed until
/// |psi(0, c)| < newton_tol, then reconstruction of the eigenfunction on the
/// profile grid. Throws ConvergenceError or PoleProximityError.
EigenPair newton_refine(Complex c_seed, const RayleighProblem& problem,
                        const ShootingConfig& config = {});

struct FarfieldRow {
  double Y0;
  Complex psi0;
};

/// psi(0, c) for each starting height in Y0_list, with the RK step of `config`.
/// The profile grid must reach max(Y0_list).
std::vector<FarfieldRow> validate_farfield(Complex c, const RayleighProblem& problem,
                                           const std::vector<double>& Y0_list,
                                           const ShootingConfig& config = {});

/// Residual (V - c)(psi'' - alpha^2 psi) - V'' psi of an eigenpair, by centered
/// differences on the interior profile nodes.
CVector rayleigh_residual(const EigenPair& pair, const RayleighProblem& problem);

}  // namespace couette
