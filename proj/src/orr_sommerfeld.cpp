#include "couette/orr_sommerfeld.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>
#include <stdexcept>

#include "couette/errors.hpp"

namespace couette {

namespace {

using Minors = Eigen::Matrix<Complex, 6, 1>;

// Decaying far-field rate of the viscous mode: mu^2 = alpha^2 + (V - c)/eps, Re mu > 0.
Complex viscous_rate(double alpha, Complex eps, double v, Complex c) {
  return std::sqrt(alpha * alpha + (v - c) / eps);
}

}  // namespace

void OSProblem::validate() const {
  base.validate();
  if (!(nu_hat > 0.0)) throw std::invalid_argument("nu_hat must be positive");
}

OSResidual os_residual(const EigenPair& pair, const OSProblem& os) {
  const Profile& p = os.base.profile;
  const double h = p.grid.h;
  const Index n = pair.psi.size();
  if (h > 0.02 + 1e-12 || n < 11 || n > p.V.size()) {
    throw std::invalid_argument("os_residual: grid too coarse for the five-point stencil");
  }
  if (!(os.nu_hat >= 0.0)) throw std::invalid_argument("os_residual: nu_hat must be >= 0");
  const double a2 = os.base.alpha_ray * os.base.alpha_ray;
  const Complex eps = os.epsilon();
  const CVector& psi = pair.psi;
  const double h2 = h * h;
  const double h4 = h2 * h2;

  OSResidual out;
  for (Index k = 5; k + 2 < n; ++k) {
    const Complex d2 = (psi[k + 1] - 2.0 * psi[k] + psi[k - 1]) / h2;
    const Complex d4 = (psi[k + 2] - 4.0 * psi[k + 1] + 6.0 * psi[k] - 4.0 * psi[k - 1] +
                        psi[k - 2]) / h4;
    const Complex lap = d2 - a2 * psi[k];
    const Complex bilap = d4 - 2.0 * a2 * d2 + a2 * a2 * psi[k];
    const Complex inviscid = (p.V[k] - pair.c) * lap - p.Vpp[k] * psi[k];
    const Complex viscous = eps * bilap;
    out.rayleigh_part = std::max(out.rayleigh_part, std::abs(inviscid));
    out.viscous_part = std::max(out.viscous_part, std::abs(viscous));
    out.total = std::max(out.total, std::abs(inviscid - viscous));
  }
  return out;
}

CompoundShooter::CompoundShooter(const OSProblem& os, const CompoundConfig& config,
                                 Complex c_ref)
    : alpha_(os.base.alpha_ray), eps_(os.epsilon()), config_(config) {
  os.validate();
  if (!(config.Y0 > 0.0) || config.steps < 1) {
    throw std::invalid_argument("compound: bad Y0 or steps");
  }
  const RayleighShooter sampler(os.base, ShootingConfig{config.Y0, config.steps, 1e-10, 1});
  v_ = sampler.velocity();
  vpp_ = sampler.curvature();

  double fastest = 0.0;
  for (Index j = 0; j < v_.size(); ++j) {
    fastest = std::max(fastest, std::abs(viscous_rate(alpha_, eps_, v_[j], c_ref)));
  }
  required_step_ = 0.1 / fastest;
}

Eigen::Matrix<Complex, 6, 1> CompoundShooter::wall_minors(Complex c) const {
  const double a = alpha_;
  const double h = config_.step();
  const double half = 0.5 * h;

  // Minors m_ij = u_i v_j - u_j v_i of (psi, psi', psi'', psi''') in the order
  // (12, 13, 14, 23, 24, 34).
  auto rhs = [&](Index j, const Minors& y) {
    const Complex gap = v_[j] - c;
    const Complex a2 = 2.0 * a * a + gap / eps_;
    const Complex a0 = -a * a * a * a - (a * a * gap + vpp_[j]) / eps_;
    Minors d;
    d[0] = y[1];
    d[1] = y[3] + y[2];
    d[2] = y[4] + a2 * y[1];
    d[3] = y[4];
    d[4] = y[5] - a0 * y[0] + a2 * y[3];
    d[5] = -a0 * y[1];
    return d;
  };

  const Index n = config_.steps;
  const Complex mu = viscous_rate(a, eps_, v_[2 * n], c);
  const std::array<Complex, 4> slow{1.0, -a, a * a, -a * a * a};
  const std::array<Complex, 4> fast{1.0, -mu, mu * mu, -mu * mu * mu};
  auto minor = [&](int i, int j) { return slow[i] * fast[j] - slow[j] * fast[i]; };
  Minors y;
  y << minor(0, 1), minor(0, 2), minor(0, 3), minor(1, 2), minor(1, 3), minor(2, 3);
  y /= (a - mu);

  for (Index k = n; k > 0; --k) {
    const Index j = 2 * k;
    const Minors k1 = rhs(j, y);
    const Minors k2 = rhs(j - 1, y - half * k1);
    const Minors k3 = rhs(j - 1, y - half * k2);
    const Minors k4 = rhs(j - 2, y - h * k3);
    y -= h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    y /= y.cwiseAbs().maxCoeff();
  }
  return y;
}

Complex CompoundShooter::determinant(Complex c) const {
  // Near a Rayleigh root psi(0) and psi''(0) both vanish, which makes every
  // minor except m23 and m24 small; m24 ~ mu^3 psi'(0) is the safe scale.
  const Minors y = wall_minors(c);
  return y[0] / y[4];
}

OSEigenResult os_eigen_compound(const OSProblem& os, Complex c_seed,
                                const CompoundConfig& config) {
  const CompoundShooter shooter(os, config, c_seed);
  if (config.step() > shooter.required_step()) {
    throw StiffnessError(config.step(), shooter.required_step());
  }
  Complex c = c_seed;
  for (int iter = 1; iter <= config.max_iters; ++iter) {
    const double delta = 1e-6 * std::max(1.0, std::abs(c));
    const Complex d = shooter.determinant(c);
    const Complex slope =
        (shooter.determinant(c + delta) - shooter.determinant(c - delta)) / (2.0 * delta);
    const Complex step = d / slope;
    if (!std::isfinite(std::abs(step))) {
      throw ConvergenceError("Orr-Sommerfeld Newton produced a non-finite step", c, iter);
    }
    c -= step;
    if (std::abs(step) < config.newton_tol) return {c, iter};
  }
  throw ConvergenceError("Orr-Sommerfeld Newton iteration did not converge", c,
                         config.max_iters);
}

Sublayer sublayer_profile(Complex c0, double alpha_ray, double nu_hat) {
  if (c0 == Complex(0.0, 0.0)) throw std::invalid_argument("sublayer_profile: c0 = 0");
  if (!(alpha_ray > 0.0) || !(nu_hat > 0.0)) {
    throw std::invalid_argument("sublayer_profile: alpha_ray and nu_hat must be positive");
  }
  const Complex gamma = std::sqrt(-kI * alpha_ray * c0);
  if (!(gamma.real() > 1e-14 * std::abs(gamma))) {
    throw NumericalError(
        "sublayer_profile: purely oscillatory balance, no decaying sub-layer root");
  }
  return {gamma, std::sqrt(nu_hat) / gamma.real()};
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_loglog_slope: need at least two matching points");
  }
  const auto m = static_cast<Index>(x.size());
  Vector lx(m), ly(m);
  for (Index i = 0; i < m; ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const Vector dx = lx.array() - lx.mean();
  const Vector dy = ly.array() - ly.mean();
  return dx.dot(dy) / dx.squaredNorm();
}

ExpansionReport expansion_study(const RayleighProblem& base, Complex c_ray,
                                const std::vector<double>& nu_hats,
                                const CompoundConfig& config) {
  ExpansionReport report;
  report.nu_hat = nu_hats;
  report.c_ray = c_ray;
  report.c_os.resize(nu_hats.size());

  // Every point is seeded at c_ray; the points are independent.
  std::vector<std::exception_ptr> errors(nu_hats.size());
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < nu_hats.size(); ++i) {
    workers.emplace_back([&, i] {
      try {
        report.c_os[i] = os_eigen_compound(OSProblem{base, nu_hats[i]}, c_ray, config).c;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<double> gaps;
  for (const Complex& c : report.c_os) gaps.push_back(std::abs(c - c_ray));
  report.fitted_exponent = fit_loglog_slope(nu_hats, gaps);
  for (double nu : nu_hats) {
    const Sublayer layer = sublayer_profile(c_ray, base.alpha_ray, nu);
    report.gamma = layer.gamma;
    report.sublayer_width.push_back(layer.width);
  }
  return report;
}

}  // namespace couette
