#include "couette/interior_euler.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "couette/errors.hpp"
#include "couette/quadrature.hpp"

namespace couette {

namespace {

double raw_bump(double u) {
  const double s = 1.0 - u * u;
  return s > 0.0 ? std::exp(-1.0 / s) : 0.0;
}

void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
}

constexpr QuadratureTolerance kMollifierTol{1e-12, 1e-16, 48};

// Integral of f(z) chi_mu(z - b) over the support of the mollifier.
template <typename F>
auto mollified_integral(const F& f, double center, double width, const Mollifier& chi) {
  return integrate(
      [&](double z) { return chi(z, center, width) * f(z); }, center - width,
      center + width, kMollifierTol);
}

}  // namespace

double Mollifier::raw_mass() {
  static const double mass = integrate(raw_bump, -1.0, 1.0, {1e-14, 1e-17, 48});
  return mass;
}

double Mollifier::profile(double u) const { return raw_bump(u) / raw_mass(); }

double Mollifier::operator()(double y, double center, double width) const {
  return profile((y - center) / width) / width;
}

WaveSetup WaveSetup::dirac(double alpha) {
  WaveSetup setup;
  setup.alpha = alpha;
  setup.a = solve_dirac_coefficients(alpha);
  return setup;
}

void WaveSetup::validate() const {
  require_positive_alpha(alpha);
  if (mu < 0.0) throw std::invalid_argument("mollification width must be >= 0");
  if (!(-1.0 < b[0] && b[0] < b[1] && b[1] < b[2] && b[2] < 1.0)) {
    throw std::invalid_argument("vortex positions must satisfy -1 < b1 < b2 < b3 < 1");
  }
  if (mu > 0.0 && (b[0] - mu <= -1.0 || b[2] + mu >= 1.0)) {
    throw std::invalid_argument("mollifier support leaves the channel");
  }
}

double green_function(double alpha, double y_src, double y_obs) {
  require_positive_alpha(alpha);
  if (std::abs(y_src) > 1.0 || std::abs(y_obs) > 1.0) {
    throw std::invalid_argument("green_function: positions must lie in [-1, 1]");
  }
  const double lo = std::min(y_src, y_obs);
  const double hi = std::max(y_src, y_obs);
  return std::sinh(alpha * (hi - 1.0)) * std::sinh(alpha * (lo + 1.0)) /
         (alpha * std::sinh(2.0 * alpha));
}

double green_wall_derivative(double alpha, double y_src, int side) {
  require_positive_alpha(alpha);
  // At y = -1 the observation point is below the source, at y = +1 above it.
  const double arg = side < 0 ? alpha * (y_src - 1.0) : alpha * (y_src + 1.0);
  return std::sinh(arg) / std::sinh(2.0 * alpha);
}

std::array<double, 3> solve_dirac_coefficients(double alpha) {
  require_positive_alpha(alpha);
  const double outer = -1.0 / (std::sinh(0.5 * alpha) + std::sinh(1.5 * alpha));
  return {outer, 1.0 / std::sinh(alpha), outer};
}

std::array<double, 2> dirac_system_residual(const WaveSetup& setup) {
  std::array<double, 2> r{0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    r[0] += setup.a[k] * std::sinh(setup.alpha * (setup.b[k] + 1.0));
    r[1] += setup.a[k] * std::sinh(setup.alpha * (setup.b[k] - 1.0));
  }
  return r;
}

std::array<double, 3> solve_mollified_coefficients(const WaveSetup& setup,
                                                   const Mollifier& chi) {
  setup.validate();
  if (!(setup.mu > 0.0)) {
    throw std::invalid_argument("solve_mollified_coefficients requires mu > 0");
  }
  // moments(row, k) = A_k^{side}: row 0 is the upper wall, row 1 the lower one.
  Eigen::Matrix<double, 2, 3> moments;
  for (int k = 0; k < 3; ++k) {
    for (int row = 0; row < 2; ++row) {
      const int side = row == 0 ? 1 : -1;
      moments(row, k) = mollified_integral(
          [&](double z) { return green_wall_derivative(setup.alpha, z, side); },
          setup.b[k], setup.mu, chi);
    }
  }
  const double a2 = 1.0 / std::sinh(setup.alpha);
  Eigen::Matrix2d lhs;
  lhs << moments(0, 0), moments(0, 2), moments(1, 0), moments(1, 2);
  const Eigen::Vector2d rhs = -a2 * moments.col(1);
  const double det = lhs.determinant();
  if (!(std::abs(det) > 1e-14 * lhs.cwiseAbs().maxCoeff() * lhs.cwiseAbs().maxCoeff())) {
    throw SingularSystemError("mollified coefficient system is singular");
  }
  const Eigen::Vector2d outer = lhs.partialPivLu().solve(rhs);
  return {outer[0], a2, outer[1]};
}

Complex wall_shear(double t, const WaveSetup& setup, int side, const Mollifier& chi) {
  const double alpha = setup.alpha;
  Complex sum{0.0, 0.0};
  for (int k = 0; k < 3; ++k) {
    if (setup.mu == 0.0) {
      sum += setup.a[k] * green_wall_derivative(alpha, setup.b[k], side) *
             std::exp(-kI * alpha * setup.b[k] * t);
    } else {
      sum += setup.a[k] * mollified_integral(
                              [&](double z) {
                                return green_wall_derivative(alpha, z, side) *
                                       std::exp(-kI * alpha * z * t);
                              },
                              setup.b[k], setup.mu, chi);
    }
  }
  return sum;
}

double wall_velocity(double t, double x, const WaveSetup& setup, const Mollifier& chi) {
  // Drop the Green function factor 1/sinh(2 alpha) and the sign of the lower wall.
  const Complex shear = wall_shear(t, setup, -1, chi);
  return std::real(-std::sinh(2.0 * setup.alpha) * shear *
                   std::exp(kI * setup.alpha * x));
}

double trace_phi(double t, double alpha) {
  const auto a = solve_dirac_coefficients(alpha);
  return -std::cos(alpha * t) - a[0] * std::sinh(1.5 * alpha) * std::cos(0.5 * alpha * t) -
         a[2] * std::sinh(0.5 * alpha) * std::cos(1.5 * alpha * t);
}

double trace_phi_dt(double t, double alpha) {
  const auto a = solve_dirac_coefficients(alpha);
  return alpha * (std::sin(alpha * t) +
                  0.5 * a[0] * std::sinh(1.5 * alpha) * std::sin(0.5 * alpha * t) +
                  1.5 * a[2] * std::sinh(0.5 * alpha) * std::sin(1.5 * alpha * t));
}

}  // namespace couette
