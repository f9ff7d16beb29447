#pragma once

// Boundary-layer profile: the half-line heat problem
//   w_t = w_YY,  w(0, Y) = 0,  w(t, 0) = phi(t),  w -> 0 as Y -> infinity,
// solved by Crank–Nicolson and by the Dirichlet heat-kernel (Duhamel) integral.

#include <functional>
#include <string>

#include "couette/types.hpp"

namespace couette {

/// Dirichlet wall data phi(t) together with its derivative.
struct TimeTrace {
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  static TimeTrace zero();
  static TimeTrace constant(double c);
  /// The wall trace generated by the interior wave with horizontal wavenumber alpha.
  static TimeTrace wall(double alpha = 1.0);
};

/// Nodes Y_k = k h, k = 0..N, on [0, Y0].
struct HalfLineGrid {
  double Y0 = 30.0;
  double h = 0.01;

  /// Throws std::invalid_argument unless h > 0, Y0 >= 20 and Y0/h is an integer.
  void validate() const;
  /// N = Y0/h.
  Index intervals() const;
  Index size() const { return intervals() + 1; }
  double node(Index k) const { return static_cast<double>(k) * h; }
  Vector nodes() const;
};

enum class HeatMethod { CrankNicolson, Duhamel };

struct HeatSolution {
  HalfLineGrid grid;
  double t = 0.0;
  Vector w;
  double dt = 0.0;  // Crank–Nicolson only
  HeatMethod method = HeatMethod::Duhamel;
};

/// Crank–Nicolson march from 0 to t with Dirichlet data phi at Y = 0 and 0 at Y0.
/// The first step is split into two implicit Euler half steps (Rannacher
/// start-up) to damp the corner incompatibility when phi(0) != 0.
HeatSolution solve_heat_cn(const TimeTrace& phi, const HalfLineGrid& grid, double t,
                           double dt = 1e-3);

/// w(t, Y) from the Dirichlet heat-kernel integral.
double eval_duhamel(const TimeTrace& phi, double Y, double t);

/// w_YY(t, Y) (= w_t) from the kernel integral differentiated analytically.
double eval_duhamel_yy(const TimeTrace& phi, double Y, double t);

/// eval_duhamel sampled on every node.
HeatSolution solve_heat_duhamel(const TimeTrace& phi, const HalfLineGrid& grid, double t);

enum class Convention {
  WallAnchored,  // V = -phi(t) + w(t, Y), so V(0) = 0
  ClaimLiteral,  // V = phi(t) + w(t, Y)
};

std::string to_string(Convention convention);
Convention convention_from_string(const std::string& name);

struct Profile {
  HalfLineGrid grid;
  double t = 0.0;
  Vector V;
  Vector Vpp;
  Convention convention = Convention::WallAnchored;
  double far_field = 0.0;  // V at Y0

  double min() const { return V.minCoeff(); }
  double max() const { return V.maxCoeff(); }
};

/// Samples V_s(t, .) and V_s''(t, .) on the grid; V'' comes from the
/// analytically differentiated kernel integral.
Profile build_profile(double t, const HalfLineGrid& grid,
                      Convention convention = Convention::WallAnchored,
                      const TimeTrace& phi = TimeTrace::wall());

/// Centered second differences (v[k+1] - 2 v[k] + v[k-1]) / h^2 on the
/// interior nodes k = 1..n-2.
Vector centered_second_difference(const Vector& v, double h);

}  // namespace couette
