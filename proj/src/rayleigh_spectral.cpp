#include "couette/rayleigh_spectral.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include <Eigen/Eigenvalues>

#include "couette/errors.hpp"

namespace couette {

void RayleighProblem::validate() const {
  if (!(alpha_ray > 0.0)) throw std::invalid_argument("alpha_ray must be positive");
  profile.grid.validate();
  if (profile.V.size() != profile.grid.size() || profile.Vpp.size() != profile.grid.size()) {
    throw std::invalid_argument("profile samples do not match the grid");
  }
}

HelmholtzInverse::HelmholtzInverse(double alpha, double h, Index n)
    : solver_(factor(alpha, h, n)) {}

TridiagonalSolver HelmholtzInverse::factor(double alpha, double h, Index n) {
  if (!(alpha > 0.0)) throw std::invalid_argument("HelmholtzInverse: alpha must be positive");
  if (!(h > 0.0) || n < 2) throw std::invalid_argument("HelmholtzInverse: bad grid");
  const double inv_h2 = 1.0 / (h * h);
  Vector diag = Vector::Constant(n, -2.0 * inv_h2 - alpha * alpha);
  diag[n - 1] += inv_h2;  // psi_{N+1} = psi_N
  const Vector off = Vector::Constant(n - 1, inv_h2);
  return TridiagonalSolver(off, diag, off);
}

Matrix assemble_rayleigh_matrix(const RayleighProblem& problem) {
  problem.validate();
  const Profile& p = problem.profile;
  const Index n = p.grid.intervals();
  const HelmholtzInverse inverse(problem.alpha_ray, p.grid.h, n);
  Matrix m = inverse(Matrix::Identity(n, n));
  m = -(p.Vpp.tail(n).asDiagonal() * m);
  m.diagonal() += p.V.tail(n);
  return m;
}

std::string to_string(SpectralClass cls) {
  return cls == SpectralClass::DiscreteCandidate ? "discrete" : "continuous";
}

Spectrum compute_spectrum(const Matrix& matrix, double threshold, int iterations_per_row) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw std::invalid_argument("compute_spectrum: matrix must be square and nonempty");
  }
  if (!matrix.allFinite()) throw std::invalid_argument("compute_spectrum: non-finite entry");
  if (iterations_per_row < 1) throw std::invalid_argument("compute_spectrum: bad iteration cap");
  const Index n = matrix.rows();
  Eigen::RealSchur<Matrix> schur(n);
  schur.setMaxIterations(iterations_per_row * n);
  schur.compute(matrix, /*computeU=*/false);
  const Matrix& T = schur.matrixT();
  if (schur.info() != Eigen::Success) {
    Index row = 0;
    for (Index i = n - 1; i > 0; --i) {
      if (T(i, i - 1) != 0.0 && (i < 2 || T(i - 1, i - 2) != 0.0)) {
        row = i;
        break;
      }
    }
    throw EigenSolverError(row);
  }

  Spectrum spectrum;
  spectrum.threshold = threshold;
  spectrum.matrix_norm = matrix.norm();
  spectrum.eigenvalues.resize(n);
  for (Index i = 0; i < n;) {
    if (i + 1 < n && T(i + 1, i) != 0.0) {
      // 2x2 block with a complex conjugate pair.
      const double p = 0.5 * (T(i, i) - T(i + 1, i + 1));
      const double z = std::sqrt(std::abs(p * p + T(i + 1, i) * T(i, i + 1)));
      const double re = T(i + 1, i + 1) + p;
      spectrum.eigenvalues[i] = Complex(re, z);
      spectrum.eigenvalues[i + 1] = Complex(re, -z);
      i += 2;
    } else {
      spectrum.eigenvalues[i] = Complex(T(i, i), 0.0);
      i += 1;
    }
  }
  spectrum.classes.reserve(n);
  for (const Complex& c : spectrum.eigenvalues) {
    spectrum.classes.push_back(std::abs(c.imag()) > threshold
                                   ? SpectralClass::DiscreteCandidate
                                   : SpectralClass::ContinuousCluster);
  }
  return spectrum;
}

std::optional<Complex> most_unstable(const Spectrum& spectrum) {
  const CVector& ev = spectrum.eigenvalues;
  if (ev.size() == 0) return std::nullopt;
  Index best = 0;
  for (Index i = 1; i < ev.size(); ++i) {
    if (ev[i].imag() > ev[best].imag()) best = i;
  }
  if (ev[best].imag() > spectrum.threshold) return ev[best];
  return std::nullopt;
}

SweepResult sweep_growth(std::span<const double> times, const SweepOptions& options) {
  if (!std::is_sorted(times.begin(), times.end()) ||
      std::any_of(times.begin(), times.end(), [](double t) { return !(t > 0.0); })) {
    throw std::invalid_argument("sweep_growth: times must be positive and increasing");
  }
  options.grid.validate();

  SweepResult result;
  result.points.resize(times.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < times.size(); i = next++) {
      SweepPoint& point = result.points[i];
      point.t = times[i];
      try {
        RayleighProblem problem{
            options.alpha_ray,
            build_profile(point.t, options.grid, options.convention,
                          TimeTrace::wall(options.alpha))};
        const Spectrum spectrum =
            compute_spectrum(assemble_rayleigh_matrix(problem), options.threshold);
        point.c = most_unstable(spectrum);
        point.im_c_max = point.c ? point.c->imag() : 0.0;
      } catch (const std::exception& e) {
        point.error = e.what();
      }
    }
  };

  const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(times.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& thread : pool) thread.join();
  return result;
}

std::vector<double> default_sweep_times() {
  std::vector<double> times;
  for (int k = 5; k <= 160; ++k) times.push_back(0.1 * k);
  return times;
}

}  // namespace couette
