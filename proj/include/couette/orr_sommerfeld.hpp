#pragma once

// Viscous correction of the Rayleigh mode: the Orr–Sommerfeld equation in
// boundary-layer variables,
//   (V - c)(D^2 - alpha^2) psi - V'' psi = eps (D^2 - alpha^2)^2 psi,
//   eps = nu_hat / (i alpha),  psi(0) = psi'(0) = 0,  psi -> 0 at infinity,
// for modes exp(i alpha (x - c t)). With this sign the fast viscous rate
// keeps a positive real part across the critical level when Im c > 0.

#include <vector>

#include "couette/rayleigh_shooting.hpp"
#include "couette/types.hpp"

namespace couette {

struct OSProblem {
  RayleighProblem base;
  double nu_hat = 1e-4;

  Complex epsilon() const { return nu_hat / (kI * base.alpha_ray); }
  void validate() const;
};

struct OSResidual {
  double total = 0.0;         // max |(V-c) L psi - V'' psi - eps L^2 psi|
  double rayleigh_part = 0.0; // max |(V-c) L psi - V'' psi|
  double viscous_part = 0.0;  // max |eps L^2 psi|
};

/// Orr–Sommerfeld residual of a sampled eigenpair with centered second and
/// fourth differences, over nodes at least 5h from the wall and 2h from the top.
OSResidual os_residual(const EigenPair& pair, const OSProblem& os);

struct CompoundConfig {
  double Y0 = 30.0;
  int steps = 30000;
  double newton_tol = 1e-12;  // on |delta c|
  int max_iters = 50;

  double step() const { return Y0 / steps; }
};

/// Wall determinant D(c) = psi_1(0) psi_2'(0) - psi_1'(0) psi_2(0) of the two
/// decaying Orr–Sommerfeld solutions, tracked through their 2x2 minors
/// (compound matrix) from Y0 down to the wall.
///
/// The minors are renormalized at every step, and D is reported as the ratio
/// m12(0) / m24(0), which is independent of the normalization and analytic
/// in c. m24 ~ mu^3 psi_1'(0) stays away from zero because the Rayleigh mode
/// has a nonzero wall slope.
class CompoundShooter {
 public:
  /// c_ref only sets the stiffness bound.
  CompoundShooter(const OSProblem& os, const CompoundConfig& config, Complex c_ref);

  Complex determinant(Complex c) const;

  /// The six minors (12, 13, 14, 23, 24, 34) at the wall, up to a common factor.
  Eigen::Matrix<Complex, 6, 1> wall_minors(Complex c) const;

  /// Smallest step allowed for the fast viscous rate at c_ref (one tenth of
  /// the thinnest local sub-layer width).
  double required_step() const { return required_step_; }

 private:
  double alpha_;
  Complex eps_;
  CompoundConfig config_;
  Vector v_;
  Vector vpp_;
  double required_step_ = 0.0;
};

struct OSEigenResult {
  Complex c;
  int iterations = 0;
};

/// Newton iteration on D(c) = 0 from c_seed (derivative by central
/// differences). Throws StiffnessError if the RK step cannot resolve the
/// sub-layer and ConvergenceError on divergence.
OSEigenResult os_eigen_compound(const OSProblem& os, Complex c_seed,
                                const CompoundConfig& config = {});

struct Sublayer {
  Complex gamma;  // sqrt(-i alpha c0) with Re gamma > 0
  double width;   // nu_hat^{1/2} / Re gamma in Y units
};

/// Constant-coefficient wall balance of the viscous sub-layer,
/// -c0 psi'' = eps psi'''' at V = 0, so psi ~ exp(-gamma Y / nu_hat^{1/2}). Throws
/// std::invalid_argument for c0 = 0 and NumericalError when both roots are
/// purely oscillatory (Re gamma = 0).
Sublayer sublayer_profile(Complex c0, double alpha_ray, double nu_hat);

struct ExpansionReport {
  std::vector<double> nu_hat;
  std::vector<Complex> c_os;
  Complex c_ray;
  double fitted_exponent = 0.0;
  Complex gamma;
  std::vector<double> sublayer_width;
};

inline const std::vector<double> kDefaultNuHat{1e-3, 2.5e-4, 6.25e-5};

/// Solves the Orr–Sommerfeld problem at each nu_hat (one thread per value,
/// each seeded at c_ray) and fits |c_os - c_ray| ~ nu_hat^p.
ExpansionReport expansion_study(const RayleighProblem& base, Complex c_ray,
                                const std::vector<double>& nu_hats,
                                const CompoundConfig& config = {});

/// Least-squares slope of log y against log x.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace couette
