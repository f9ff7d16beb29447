#include "couette/heat_layer.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "couette/interior_euler.hpp"
#include "couette/quadrature.hpp"
#include "couette/tridiagonal.hpp"

namespace couette {

namespace {

// Past u = 8 the Gaussian weight is below 1e-27.
constexpr double kKernelCutoff = 8.0;
constexpr QuadratureTolerance kDuhamelTol{1e-13, 1e-15, 48};

// (2/sqrt(pi)) * integral over [Y/(2 sqrt t), cutoff] of f(t - Y^2/(4u^2)) e^{-u^2} du,
// i.e. the Duhamel integral after the substitution u = Y / (2 sqrt(t - s)).
double kernel_integral(const std::function<double(double)>& f, double Y, double t) {
  const double lower = Y / (2.0 * std::sqrt(t));
  if (lower >= kKernelCutoff) return 0.0;
  const double quarter_y2 = 0.25 * Y * Y;
  const double integral = integrate(
      [&](double u) { return f(t - quarter_y2 / (u * u)) * std::exp(-u * u); }, lower,
      kKernelCutoff, kDuhamelTol);
  return 2.0 / std::sqrt(std::numbers::pi) * integral;
}

void require_positive_time(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
}

}  // namespace

TimeTrace TimeTrace::zero() { return constant(0.0); }

TimeTrace TimeTrace::constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }};
}

TimeTrace TimeTrace::wall(double alpha) {
  return {[alpha](double t) { return trace_phi(t, alpha); },
          [alpha](double t) { return trace_phi_dt(t, alpha); }};
}

void HalfLineGrid::validate() const {
  if (!(h > 0.0)) throw std::invalid_argument("grid: h must be positive");
  if (!(Y0 >= 20.0)) throw std::invalid_argument("grid: Y0 must be at least 20");
  const double ratio = Y0 / h;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio) {
    throw std::invalid_argument("grid: Y0/h must be an integer");
  }
}

Index HalfLineGrid::intervals() const { return static_cast<Index>(std::llround(Y0 / h)); }

Vector HalfLineGrid::nodes() const {
  return Vector::LinSpaced(size(), 0.0, static_cast<double>(intervals()) * h);
}

HeatSolution solve_heat_cn(const TimeTrace& phi, const HalfLineGrid& grid, double t,
                           double dt) {
  grid.validate();
  require_positive_time(t);
  if (!(dt > 0.0)) throw std::invalid_argument("solve_heat_cn: dt must be positive");
  const long steps = std::lround(t / dt);
  if (steps < 1 || std::abs(t - static_cast<double>(steps) * dt) > 1e-12) {
    throw std::invalid_argument("solve_heat_cn: t is not an integer number of steps");
  }

  // Unknowns are the interior nodes 1..N-1.
  const Index n = grid.intervals() - 1;
  const double r = 0.5 * dt / (grid.h * grid.h);
  const Vector off = Vector::Constant(n - 1, -r);
  // (I - dt/2 L) is shared by the CN step and the implicit Euler half step.
  const TridiagonalSolver implicit(off, Vector::Constant(n, 1.0 + 2.0 * r), off);

  Vector w = Vector::Zero(n);
  Vector rhs(n);
  auto implicit_euler_half = [&](double t_new) {
    rhs = w;
    rhs[0] += r * phi.value(t_new);
    w = implicit.solve(rhs);
  };

  implicit_euler_half(0.5 * dt);
  implicit_euler_half(dt);
  for (long step = 1; step < steps; ++step) {
    const double t_old = static_cast<double>(step) * dt;
    const double t_new = static_cast<double>(step + 1) * dt;
    rhs = (1.0 - 2.0 * r) * w;
    rhs.head(n - 1) += r * w.tail(n - 1);
    rhs.tail(n - 1) += r * w.head(n - 1);
    rhs[0] += r * (phi.value(t_old) + phi.value(t_new));
    w = implicit.solve(rhs);
  }

  HeatSolution out{grid, t, Vector::Zero(grid.size()), dt, HeatMethod::CrankNicolson};
  out.w[0] = phi.value(t);
  out.w.segment(1, n) = w;
  return out;
}

double eval_duhamel(const TimeTrace& phi, double Y, double t) {
  require_positive_time(t);
  if (Y < 0.0) throw std::invalid_argument("eval_duhamel: Y must be nonnegative");
  if (Y == 0.0) return phi.value(t);
  return kernel_integral(phi.value, Y, t);
}

double eval_duhamel_yy(const TimeTrace& phi, double Y, double t) {
  require_positive_time(t);
  if (Y < 0.0) throw std::invalid_argument("eval_duhamel_yy: Y must be nonnegative");
  if (Y == 0.0) return phi.derivative(t);
  // d/dt of the substituted integral: the integrand differentiates to phi', and
  // the moving lower limit contributes phi(0) times the kernel itself.
  const double kernel = Y / (2.0 * std::sqrt(std::numbers::pi) * t * std::sqrt(t)) *
                        std::exp(-Y * Y / (4.0 * t));
  return kernel_integral(phi.derivative, Y, t) + phi.value(0.0) * kernel;
}

HeatSolution solve_heat_duhamel(const TimeTrace& phi, const HalfLineGrid& grid, double t) {
  grid.validate();
  require_positive_time(t);
  HeatSolution out{grid, t, Vector(grid.size()), 0.0, HeatMethod::Duhamel};
  for (Index k = 0; k < grid.size(); ++k) out.w[k] = eval_duhamel(phi, grid.node(k), t);
  return out;
}

std::string to_string(Convention convention) {
  return convention == Convention::WallAnchored ? "wall-anchored" : "claim-literal";
}

Convention convention_from_string(const std::string& name) {
  if (name == "wall-anchored") return Convention::WallAnchored;
  if (name == "claim-literal") return Convention::ClaimLiteral;
  throw std::invalid_argument("unknown profile convention '" + name + "'");
}

Profile build_profile(double t, const HalfLineGrid& grid, Convention convention,
                      const TimeTrace& phi) {
  grid.validate();
  require_positive_time(t);
  const double wall = phi.value(t);
  const double offset = convention == Convention::WallAnchored ? -wall : wall;

  Profile profile;
  profile.grid = grid;
  profile.t = t;
  profile.convention = convention;
  profile.V.resize(grid.size());
  profile.Vpp.resize(grid.size());
  for (Index k = 0; k < grid.size(); ++k) {
    const double Y = grid.node(k);
    profile.V[k] = offset + eval_duhamel(phi, Y, t);
    profile.Vpp[k] = eval_duhamel_yy(phi, Y, t);
  }
  if (convention == Convention::WallAnchored) profile.V[0] = 0.0;
  profile.far_field = profile.V[grid.size() - 1];
  return profile;
}

Vector centered_second_difference(const Vector& v, double h) {
  const Index n = v.size();
  if (n < 3) return Vector();
  return (v.tail(n - 2) - 2.0 * v.segment(1, n - 2) + v.head(n - 2)) / (h * h);
}

}  // namespace couette
