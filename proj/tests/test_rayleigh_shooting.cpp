#include <doctest.h>

#include <cmath>
#include <vector>

#include "couette/errors.hpp"
#include "couette/rayleigh_shooting.hpp"

using namespace couette;

namespace {

const Complex kSeed(0.1518, 0.1464);

const RayleighProblem& reference_problem() {
  static const RayleighProblem p{kDefaultAlphaRay, build_profile(7.65, HalfLineGrid{30.0, 0.02})};
  return p;
}

RayleighProblem constant_problem(double value, double Y0 = 35.0) {
  Profile p;
  p.grid = HalfLineGrid{Y0, 0.05};
  p.V = Vector::Constant(p.grid.size(), value);
  p.Vpp = Vector::Zero(p.grid.size());
  p.far_field = value;
  return {kDefaultAlphaRay, p};
}

}  // namespace

TEST_CASE("flat curvature reduces to exponential decay") {
  const RayleighProblem problem = constant_problem(0.5);
  const ShotResult r = integrate_shot(Complex(0.2, 0.1), problem);
  CHECK(std::abs(r.psi0 - 1.0) < 1e-12);
  CHECK(std::abs(r.dpsi0 + kDefaultAlphaRay) < 1e-12);
  CHECK(std::abs(r.dpsi0_dc) < 1e-14);

  for (double Y0 : {20.0, 25.0, 30.0, 35.0}) {
    ShootingConfig config;
    config.Y0 = Y0;
    config.steps = static_cast<int>(Y0 * 1000);
    CHECK(std::abs(integrate_shot(Complex(0.2, 0.1), problem, config).psi0 - 1.0) < 1e-12);
  }
}

TEST_CASE("shot is linear in the initial data") {
  const RayleighShooter shooter(reference_problem(), ShootingConfig{});
  const ShotResult a = shooter.shoot(Complex(0.3, 0.05), 1.0);
  const ShotResult b = shooter.shoot(Complex(0.3, 0.05), 3.5);
  CHECK(std::abs(b.psi0 - 3.5 * a.psi0) <= 1e-13 * std::abs(b.psi0));
  CHECK(std::abs(b.dpsi0_dc - 3.5 * a.dpsi0_dc) <= 1e-13 * std::abs(b.dpsi0_dc));
}

TEST_CASE("variational derivative matches central differences") {
  const RayleighShooter shooter(reference_problem(), ShootingConfig{});
  for (Complex c : {kSeed, Complex(0.3, 0.05), Complex(-0.1, 0.2)}) {
    const double d = 1e-6;
    const Complex fd = (shooter.shoot(c + d).psi0 - shooter.shoot(c - d).psi0) / (2 * d);
    const Complex fd_imag =
        (shooter.shoot(c + Complex(0, d)).psi0 - shooter.shoot(c - Complex(0, d)).psi0) /
        Complex(0, 2 * d);
    const Complex exact = shooter.shoot(c).dpsi0_dc;
    CHECK(std::abs(fd - exact) <= 1e-5 * std::abs(exact));
    CHECK(std::abs(fd_imag - exact) <= 1e-5 * std::abs(exact));
  }
}

TEST_CASE("pole guard") {
  const RayleighProblem problem = constant_problem(0.5);
  try {
    integrate_shot(Complex(0.5, 0.0), problem);
    FAIL("expected PoleProximityError");
  } catch (const PoleProximityError& e) {
    CHECK(e.y() == doctest::Approx(30.0));
    CHECK(e.c() == Complex(0.5, 0.0));
  }
}

TEST_CASE("configuration checks") {
  ShootingConfig config;
  config.Y0 = 40.0;
  config.steps = 40000;
  CHECK_THROWS_AS(integrate_shot(kSeed, reference_problem(), config), std::invalid_argument);
  config = {};
  config.steps = 0;
  CHECK_THROWS_AS(integrate_shot(kSeed, reference_problem(), config), std::invalid_argument);
  config = {};
  config.steps = 7000;  // step does not divide h = 0.02
  CHECK_THROWS_AS(newton_refine(kSeed, reference_problem(), config), std::invalid_argument);
}

TEST_CASE("newton converges to the unstable mode") {
  const RayleighProblem& problem = reference_problem();
  const EigenPair pair = newton_refine(kSeed, problem);
  CHECK(pair.psi0_residual <= 1e-10);
  CHECK(pair.c.imag() > 0.1);
  CHECK(std::abs(pair.c - kSeed) < 1e-3);
  CHECK(pair.iterations <= 10);

  CHECK(std::abs(pair.dpsi0) > 0.0);
  CHECK(std::abs(pair.dpsi0) > 0.01 * pair.dpsi.cwiseAbs().maxCoeff());
  CHECK(pair.psi.cwiseAbs().maxCoeff() == doctest::Approx(1.0));
  CHECK(std::abs(pair.psi[pair.psi.size() - 1]) <= std::exp(-kDefaultAlphaRay * 30.0 / 2.0));
  CHECK(pair.Y.size() == problem.profile.grid.size());
  CHECK(pair.Y[1] == doctest::Approx(0.02));

  SUBCASE("conjugate seed gives the conjugate eigenvalue") {
    const EigenPair conj = newton_refine(std::conj(kSeed), problem);
    CHECK(std::abs(conj.c - std::conj(pair.c)) < 1e-12);
  }

  SUBCASE("step refinement") {
    auto solve = [&](int steps) {
      ShootingConfig config;
      config.steps = steps;
      config.newton_tol = 1e-15;
      return newton_refine(pair.c, problem, config).c;
    };
    const Complex c_coarse = solve(15000), c_default = solve(30000);
    const Complex c_half = solve(60000), c_finest = solve(120000);
    CHECK(std::abs(c_half - c_default) < 1e-8);
    const double ratio = std::abs(c_coarse - c_finest) / std::abs(c_default - c_finest);
    MESSAGE("step-halving error ratio " << ratio);
    CHECK(ratio >= 12.0);
  }
}

TEST_CASE("vorticity and residual of the reconstructed mode") {
  const RayleighProblem& problem = reference_problem();
  const EigenPair pair = newton_refine(kSeed, problem);
  const double a2 = problem.alpha_ray * problem.alpha_ray;
  const double h = problem.profile.grid.h;
  for (Index k : {10, 200, 900}) {
    const Complex lap = (pair.psi[k + 1] - 2.0 * pair.psi[k] + pair.psi[k - 1]) / (h * h) -
                        a2 * pair.psi[k];
    CHECK(std::abs(pair.omega[k] - lap) < 1e-12);
  }
  const double r1 = rayleigh_residual(pair, problem).cwiseAbs().maxCoeff();
  CHECK(r1 < 1e-3);

  const RayleighProblem fine{kDefaultAlphaRay, build_profile(7.65, HalfLineGrid{30.0, 0.01})};
  const EigenPair finer = newton_refine(pair.c, fine);
  const double r2 = rayleigh_residual(finer, fine).cwiseAbs().maxCoeff();
  CHECK(r1 / r2 > 3.0);
}

TEST_CASE("far-field truncation") {
  const RayleighProblem problem{kDefaultAlphaRay, build_profile(7.65, HalfLineGrid{35.0, 0.02})};
  const EigenPair pair = newton_refine(kSeed, problem);
  const std::vector<FarfieldRow> rows = validate_farfield(pair.c, problem, {20.0, 25.0, 30.0, 35.0});
  REQUIRE(rows.size() == 4);
  std::vector<double> diffs;
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    diffs.push_back(std::abs(rows[i].psi0 - rows[i + 1].psi0));
  }
  CHECK(diffs[1] < diffs[0]);
  CHECK(diffs[2] < diffs[1]);
  // The curvature tail is Gaussian, so the differences fall off at least as
  // fast as exp(-2 alpha Y0) until they reach rounding level.
  const double rate = std::log(diffs[0] / diffs[1]) / 5.0;
  MESSAGE("far-field differences " << diffs[0] << " " << diffs[1] << " " << diffs[2]
                                   << ", fitted rate " << rate);
  CHECK(rate >= 2.0 * kDefaultAlphaRay);
}

TEST_CASE("newton reports its last iterate") {
  ShootingConfig config;
  config.max_iters = 1;
  config.newton_tol = 1e-14;
  try {
    newton_refine(Complex(0.3, 0.3), reference_problem(), config);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.iterations() == 1);
    CHECK(e.last_iterate() != Complex(0.3, 0.3));
  }
}
