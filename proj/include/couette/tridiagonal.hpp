#pragma once

#include <cmath>
#include <limits>

#include "couette/errors.hpp"
#include "couette/types.hpp"

namespace couette {

/// LU factorization (Thomas algorithm, no pivoting) of a real tridiagonal
/// matrix. The factorization is computed once and can be applied to real or
/// complex right-hand sides, one column or many.
class TridiagonalSolver {
 public:
  /// lower[i] is entry (i+1, i), upper[i] is entry (i, i+1).
  TridiagonalSolver(const Vector& lower, const Vector& diag, const Vector& upper)
      : lower_(lower), pivot_(diag.size()), upper_mod_(upper.size()) {
    const Index n = diag.size();
    if (lower.size() != n - 1 || upper.size() != n - 1) {
      throw std::invalid_argument("TridiagonalSolver: band sizes do not match");
    }
    const double scale = diag.cwiseAbs().maxCoeff();
    for (Index i = 0; i < n; ++i) {
      double p = diag[i];
      if (i > 0) p -= lower[i - 1] * upper_mod_[i - 1];
      if (!(std::abs(p) > 1e3 * std::numeric_limits<double>::epsilon() * scale)) {
        throw SingularSystemError("tridiagonal system is singular at row " +
                                  std::to_string(i));
      }
      pivot_[i] = p;
      if (i < n - 1) upper_mod_[i] = upper[i] / p;
    }
  }

  Index size() const { return pivot_.size(); }

  template <typename Derived>
  Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Derived::ColsAtCompileTime>
  solve(const Eigen::MatrixBase<Derived>& rhs) const {
    using Result =
        Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Derived::ColsAtCompileTime>;
    Result x = rhs;
    const Index n = size();
    x.row(0) /= pivot_[0];
    for (Index i = 1; i < n; ++i) {
      x.row(i) = (x.row(i) - lower_[i - 1] * x.row(i - 1)) / pivot_[i];
    }
    for (Index i = n - 2; i >= 0; --i) {
      x.row(i) -= upper_mod_[i] * x.row(i + 1);
    }
    return x;
  }

 private:
  Vector lower_;
  Vector pivot_;
  Vector upper_mod_;
};

}  // namespace couette
