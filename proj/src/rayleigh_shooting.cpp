#include "couette/rayleigh_shooting.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "couette/errors.hpp"

namespace couette {

namespace {

// State (psi, psi', d_c psi, d_c psi').
using State = Eigen::Matrix<Complex, 4, 1>;

}  // namespace

void ShootingConfig::validate() const {
  if (!(Y0 > 0.0) || steps < 1) throw std::invalid_argument("shooting: bad Y0 or steps");
  if (!(newton_tol > 0.0) || max_iters < 1) {
    throw std::invalid_argument("shooting: bad Newton settings");
  }
}

RayleighShooter::RayleighShooter(const RayleighProblem& problem, const ShootingConfig& config)
    : config_(config), alpha_(problem.alpha_ray) {
  problem.validate();
  config.validate();
  const Profile& p = problem.profile;
  if (config.Y0 > p.grid.node(p.grid.intervals()) + 1e-12) {
    throw std::invalid_argument("shooting: Y0 exceeds the profile grid");
  }
  const UniformCubicSpline v_spline(0.0, p.grid.h, p.V);
  const UniformCubicSpline vpp_spline(0.0, p.grid.h, p.Vpp);
  const double half = 0.5 * config.step();
  const Index samples = 2 * static_cast<Index>(config.steps) + 1;
  v_.resize(samples);
  vpp_.resize(samples);
  for (Index j = 0; j < samples; ++j) {
    const double y = half * static_cast<double>(j);
    v_[j] = v_spline(y);
    vpp_[j] = vpp_spline(y);
  }
}

template <typename Observer>
ShotResult RayleighShooter::integrate(Complex c, double scale, Observer&& observe) const {
  const double a2 = alpha_ * alpha_;
  const double h = config_.step();
  const double half = 0.5 * h;

  auto rhs = [&](Index j, const State& s) {
    const Complex gap = v_[j] - c;
    if (std::abs(gap) < kPoleGuard) throw PoleProximityError(half * static_cast<double>(j), c);
    const Complex q = vpp_[j] / gap;
    State d;
    d[0] = s[1];
    d[1] = (a2 + q) * s[0];
    d[2] = s[3];
    d[3] = (a2 + q) * s[2] + q / gap * s[0];
    return d;
  };

  const double start = scale * std::exp(-alpha_ * config_.Y0);
  State s(start, -alpha_ * start, 0.0, 0.0);
  const Index n = config_.steps;
  observe(n, s);
  for (Index k = n; k > 0; --k) {
    // Step from Y = k h to (k - 1) h; sample index j refers to Y = j h / 2.
    const Index j = 2 * k;
    const State k1 = rhs(j, s);
    const State k2 = rhs(j - 1, s - half * k1);
    const State k3 = rhs(j - 1, s - half * k2);
    const State k4 = rhs(j - 2, s - h * k3);
    s -= h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    observe(k - 1, s);
  }
  return {s[0], s[2], s[1]};
}

ShotResult RayleighShooter::shoot(Complex c, double scale) const {
  return integrate(c, scale, [](Index, const State&) {});
}

void RayleighShooter::trajectory(Complex c, int stride, CVector& psi, CVector& dpsi) const {
  if (stride < 1 || config_.steps % stride != 0) {
    throw std::invalid_argument("trajectory: stride must divide the step count");
  }
  const Index samples = config_.steps / stride + 1;
  psi.resize(samples);
  dpsi.resize(samples);
  integrate(c, 1.0, [&](Index k, const State& s) {
    if (k % stride == 0) {
      psi[k / stride] = s[0];
      dpsi[k / stride] = s[1];
    }
  });
}

ShotResult integrate_shot(Complex c, const RayleighProblem& problem,
                          const ShootingConfig& config) {
  return RayleighShooter(problem, config).shoot(c);
}

EigenPair newton_refine(Complex c_seed, const RayleighProblem& problem,
                        const ShootingConfig& config) {
  const RayleighShooter shooter(problem, config);
  const double h = problem.profile.grid.h;
  const double ratio = h / config.step();
  const int stride = static_cast<int>(std::lround(ratio));
  if (std::abs(ratio - stride) > 1e-9 * ratio) {
    throw std::invalid_argument("newton_refine: RK step must divide the profile spacing");
  }

  Complex c = c_seed;
  ShotResult shot{};
  int iter = 0;
  for (;; ++iter) {
    try {
      shot = shooter.shoot(c);
    } catch (const PoleProximityError&) {
      throw ConvergenceError("Newton iterate entered the continuous spectrum", c, iter);
    }
    if (std::abs(shot.psi0) < config.newton_tol) break;
    if (iter >= config.max_iters || !std::isfinite(std::abs(shot.psi0))) {
      throw ConvergenceError("Newton iteration did not converge", c, iter);
    }
    c -= shot.psi0 / shot.dpsi0_dc;
  }

  EigenPair pair;
  pair.c = c;
  pair.iterations = iter;
  pair.psi0_residual = std::abs(shot.psi0);
  shooter.trajectory(c, stride, pair.psi, pair.dpsi);
  const Index n = pair.psi.size();
  pair.Y = Vector::LinSpaced(n, 0.0, h * static_cast<double>(n - 1));

  Index peak = 0;
  pair.psi.cwiseAbs().maxCoeff(&peak);
  const Complex norm = pair.psi[peak];
  pair.psi /= norm;
  pair.dpsi /= norm;
  pair.dpsi0 = pair.dpsi[0];

  // Vorticity with the same centered operator as the matrix engine; the end
  // nodes use the ODE itself, omega = V'' psi / (V - c).
  const double a2 = problem.alpha_ray * problem.alpha_ray;
  const Profile& p = problem.profile;
  pair.omega.resize(n);
  for (Index k = 1; k + 1 < n; ++k) {
    pair.omega[k] = (pair.psi[k + 1] - 2.0 * pair.psi[k] + pair.psi[k - 1]) / (h * h) -
                    a2 * pair.psi[k];
  }
  for (Index k : {Index{0}, n - 1}) {
    pair.omega[k] = p.Vpp[k] * pair.psi[k] / (p.V[k] - c);
  }
  return pair;
}

std::vector<FarfieldRow> validate_farfield(Complex c, const RayleighProblem& problem,
                                           const std::vector<double>& Y0_list,
                                           const ShootingConfig& config) {
  std::vector<FarfieldRow> rows;
  for (double Y0 : Y0_list) {
    ShootingConfig local = config;
    local.Y0 = Y0;
    local.steps = static_cast<int>(std::lround(Y0 / config.step()));
    rows.push_back({Y0, RayleighShooter(problem, local).shoot(c).psi0});
  }
  return rows;
}

CVector rayleigh_residual(const EigenPair& pair, const RayleighProblem& problem) {
  const Profile& p = problem.profile;
  const double h = p.grid.h;
  const double a2 = problem.alpha_ray * problem.alpha_ray;
  const Index n = pair.psi.size();
  CVector r(n - 2);
  for (Index k = 1; k + 1 < n; ++k) {
    const Complex lap =
        (pair.psi[k + 1] - 2.0 * pair.psi[k] + pair.psi[k - 1]) / (h * h) - a2 * pair.psi[k];
    r[k - 1] = (p.V[k] - pair.c) * lap - p.Vpp[k] * pair.psi[k];
  }
  return r;
}

}  // namespace couette
