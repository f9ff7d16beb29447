#pragma once

// Rayleigh operator in vorticity form, Ray w = V w - V'' A w with
// A = (d^2/dY^2 - alpha^2)^{-1}, discretized on the truncated half-line and
// diagonalized densely.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "couette/heat_layer.hpp"
#include "couette/tridiagonal.hpp"
#include "couette/types.hpp"

namespace couette {

inline const double kDefaultAlphaRay = std::sqrt(0.1);
inline constexpr double kUnstableThreshold = 1e-4;

struct RayleighProblem {
  double alpha_ray = kDefaultAlphaRay;
  Profile profile;

  void validate() const;
};

/// Three-point discretization of d^2/dY^2 - alpha^2 on the nodes Y_1..Y_N with
/// psi_0 = 0 at the wall and the Neumann closure psi_{N+1} = psi_N on top.
class HelmholtzInverse {
 public:
  HelmholtzInverse(double alpha, double h, Index n);

  /// psi = A omega, column by column; omega holds values at Y_1..Y_N.
  template <typename Derived>
  auto operator()(const Eigen::MatrixBase<Derived>& omega) const {
    return solver_.solve(omega);
  }

  Index size() const { return solver_.size(); }

 private:
  static TridiagonalSolver factor(double alpha, double h, Index n);
  TridiagonalSolver solver_;
};

/// Applies A to vorticity samples at Y_1..Y_N.
template <typename Derived>
auto inverse_helmholtz(const Eigen::MatrixBase<Derived>& omega, double alpha, double h) {
  return HelmholtzInverse(alpha, h, omega.rows())(omega);
}

/// M = diag(V) - diag(V'') A restricted to Y_1..Y_N (dense, N x N).
Matrix assemble_rayleigh_matrix(const RayleighProblem& problem);

enum class SpectralClass { DiscreteCandidate, ContinuousCluster };

std::string to_string(SpectralClass cls);

struct Spectrum {
  CVector eigenvalues;
  std::vector<SpectralClass> classes;
  double threshold = kUnstableThreshold;
  double matrix_norm = 0.0;  // Frobenius norm of the input matrix
};

/// All eigenvalues of a real square matrix by Hessenberg reduction and
/// Francis double-shift QR, capped at iterations_per_row * N iterations.
/// Values with |Im c| > threshold are classified as discrete candidates.
/// Throws EigenSolverError on non-convergence.
Spectrum compute_spectrum(const Matrix& matrix, double threshold = kUnstableThreshold,
                          int iterations_per_row = 30);

/// Eigenvalue with the largest imaginary part, if that part exceeds the
/// spectrum's threshold; std::nullopt means every eigenvalue is real.
std::optional<Complex> most_unstable(const Spectrum& spectrum);

struct SweepOptions {
  double alpha = 1.0;
  double alpha_ray = kDefaultAlphaRay;
  HalfLineGrid grid{30.0, 0.04};
  Convention convention = Convention::WallAnchored;
  double threshold = kUnstableThreshold;
  int jobs = 1;
};

struct SweepPoint {
  double t = 0.0;
  double im_c_max = 0.0;       // 0 when every eigenvalue is real
  std::optional<Complex> c;    // most unstable eigenvalue
  std::string error;           // non-empty if this time failed
};

struct SweepResult {
  std::vector<SweepPoint> points;
};

/// Most unstable eigenvalue of the Rayleigh matrix at each time. A failure at
/// one time is recorded in that point and does not abort the sweep.
SweepResult sweep_growth(std::span<const double> times, const SweepOptions& options = {});

/// 0.5, 0.6, ..., 16.0 (the default sweep range).
std::vector<double> default_sweep_times();

}  // namespace couette
