#pragma once

// Linearized Euler solution in the channel -1 < y < 1: a vorticity made of
// three (possibly mollified) point vortices is transported by the Couette
// shear, and the stream function is recovered through the Dirichlet Green
// function of d^2/dy^2 - alpha^2. The amplitudes are chosen so that the wall
// shear vanishes at t = 0.

#include <array>

#include "couette/types.hpp"

namespace couette {

/// Smooth bump exp(-1/(1-u^2)) on [-1, 1], normalized to unit integral.
struct Mollifier {
  /// Unit-integral profile chi(u).
  double profile(double u) const;
  /// chi((y - center)/width)/width.
  double operator()(double y, double center, double width) const;
  /// Integral of the unnormalized bump over [-1, 1].
  static double raw_mass();
};

struct WaveSetup {
  double alpha = 1.0;
  std::array<double, 3> a{};
  std::array<double, 3> b{-0.5, 0.0, 0.5};
  double mu = 0.0;  // 0 selects the Dirac limit

  /// alpha, b = (-1/2, 0, 1/2), a from solve_dirac_coefficients, mu = 0.
  static WaveSetup dirac(double alpha = 1.0);

  /// Throws std::invalid_argument if the positions or supports are inadmissible.
  void validate() const;
};

/// Dirichlet Green function of d^2/dy^2 - alpha^2 on [-1, 1], normalized by the
/// unit jump of its derivative at y_obs = y_src.
double green_function(double alpha, double y_src, double y_obs);

/// d/dy_obs of the Green function evaluated at the wall y_obs = side (side = +/-1).
double green_wall_derivative(double alpha, double y_src, int side);

/// a1 = a3 = -(sinh(alpha/2) + sinh(3 alpha/2))^-1, a2 = 1/sinh(alpha), for
/// vortex positions (-1/2, 0, 1/2).
std::array<double, 3> solve_dirac_coefficients(double alpha);

/// Residuals of the two zero-wall-shear conditions
/// sum_k a_k sinh(alpha (b_k +/- 1)) = 0, as (upper, lower).
std::array<double, 2> dirac_system_residual(const WaveSetup& setup);

/// Amplitudes (a1, a2, a3) of the mollified vortices, with a2 = 1/sinh(alpha),
/// such that the initial wall shear vanishes on both walls. Requires mu > 0.
std::array<double, 3> solve_mollified_coefficients(const WaveSetup& setup,
                                                   const Mollifier& chi = {});

/// Complex wall shear d(psi_1)/dy at y = side and time t.
Complex wall_shear(double t, const WaveSetup& setup, int side, const Mollifier& chi = {});

/// Horizontal velocity of the interior solution on the lower wall,
/// u_{1,h}(t, x, -1), in the normalization where the a2 vortex contributes cos(alpha x).
double wall_velocity(double t, double x, const WaveSetup& setup, const Mollifier& chi = {});

/// Wall trace phi(t) = -u_{1,h}(t, -t, -1) driving the boundary layer, from its
/// closed form for the Dirac setup.
double trace_phi(double t, double alpha = 1.0);

/// Time derivative of trace_phi.
double trace_phi_dt(double t, double alpha = 1.0);

}  // namespace couette
