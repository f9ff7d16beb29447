#pragma once

#include "couette/types.hpp"

namespace couette {

/// Cubic spline through samples on a uniform grid x_k = x0 + k*h.
///
/// End slopes are clamped to fourth-order one-sided difference estimates, so
/// the interpolant is O(h^4) accurate up to the boundary.
class UniformCubicSpline {
 public:
  UniformCubicSpline(double x0, double h, Vector values);

  double operator()(double x) const;

  double x0() const { return x0_; }
  double h() const { return h_; }
  double x_max() const { return x0_ + h_ * static_cast<double>(values_.size() - 1); }

 private:
  double x0_;
  double h_;
  Vector values_;
  Vector second_;  // second derivatives at the knots
};

}  // namespace couette
