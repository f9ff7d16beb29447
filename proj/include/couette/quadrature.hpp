#pragma once

#include <cmath>
#include <type_traits>

#include "couette/types.hpp"

namespace couette {

/// Gauss–Legendre nodes and weights on [-1, 1].
struct GaussRule {
  Vector nodes;
  Vector weights;
};

/// n-point Gauss–Legendre rule, built by the Golub–Welsch eigenvalue method.
/// Rules are cached per order.
const GaussRule& gauss_legendre(int order);

struct QuadratureTolerance {
  double relative = 1e-12;
  double absolute = 1e-15;
  int max_depth = 48;
};

namespace detail {

template <typename F>
auto gauss_panel(const F& f, double a, double b, const GaussRule& rule) {
  using Value = std::decay_t<decltype(f(a))>;
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  Value sum{};
  for (Index i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

template <typename F, typename Value>
Value adaptive_step(const F& f, double a, double b, Value whole,
                    const GaussRule& rule, const QuadratureTolerance& tol,
                    int depth) {
  const double mid = 0.5 * (a + b);
  const Value left = gauss_panel(f, a, mid, rule);
  const Value right = gauss_panel(f, mid, b, rule);
  const Value refined = left + right;
  const double err = std::abs(refined - whole);
  if (depth >= tol.max_depth ||
      err <= std::max(tol.absolute, tol.relative * std::abs(refined))) {
    return refined;
  }
  QuadratureTolerance half = tol;
  half.absolute *= 0.5;
  return adaptive_step(f, a, mid, left, rule, half, depth + 1) +
         adaptive_step(f, mid, b, right, rule, half, depth + 1);
}

}  // namespace detail

/// Adaptive Gauss–Legendre quadrature of f over [a, b] by recursive bisection.
/// Works for any f returning double or std::complex<double>.
template <typename F>
auto integrate(const F& f, double a, double b, const QuadratureTolerance& tol = {},
               int order = 10) {
  const GaussRule& rule = gauss_legendre(order);
  const auto whole = detail::gauss_panel(f, a, b, rule);
  return detail::adaptive_step(f, a, b, whole, rule, tol, 0);
}

}  // namespace couette
