#include "couette/spline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "couette/tridiagonal.hpp"

namespace couette {

UniformCubicSpline::UniformCubicSpline(double x0, double h, Vector values)
    : x0_(x0), h_(h), values_(std::move(values)) {
  const Index n = values_.size();
  if (n < 5) throw std::invalid_argument("UniformCubicSpline: need at least 5 knots");
  if (!(h > 0.0)) throw std::invalid_argument("UniformCubicSpline: h must be positive");
  const Vector& y = values_;
  const double s0 = (-25 * y[0] + 48 * y[1] - 36 * y[2] + 16 * y[3] - 3 * y[4]) / (12 * h);
  const Index m = n - 1;
  const double sn =
      (25 * y[m] - 48 * y[m - 1] + 36 * y[m - 2] - 16 * y[m - 3] + 3 * y[m - 4]) / (12 * h);

  Vector diag = Vector::Constant(n, 4.0);
  Vector off = Vector::Ones(n - 1);
  Vector rhs(n);
  diag[0] = 2.0;
  diag[m] = 2.0;
  rhs[0] = 6.0 / h * ((y[1] - y[0]) / h - s0);
  rhs[m] = 6.0 / h * (sn - (y[m] - y[m - 1]) / h);
  for (Index k = 1; k < m; ++k) {
    rhs[k] = 6.0 * (y[k + 1] - 2.0 * y[k] + y[k - 1]) / (h * h);
  }
  second_ = TridiagonalSolver(off, diag, off).solve(rhs);
}

double UniformCubicSpline::operator()(double x) const {
  const Index last = values_.size() - 2;
  const double u = (x - x0_) / h_;
  const Index k = std::clamp<Index>(static_cast<Index>(std::floor(u)), 0, last);
  const double b = u - static_cast<double>(k);
  const double a = 1.0 - b;
  return a * values_[k] + b * values_[k + 1] +
         ((a * a * a - a) * second_[k] + (b * b * b - b) * second_[k + 1]) * h_ * h_ / 6.0;
}

}  // namespace couette
