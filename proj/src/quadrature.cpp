#include "couette/quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include <Eigen/Eigenvalues>


namespace couette {

namespace {

GaussRule golub_welsch(int order) {
  // Jacobi matrix of the Legendre recurrence.
  Matrix jacobi = Matrix::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = beta;
    jacobi(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(jacobi);
  GaussRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) {
    throw std::invalid_argument("gauss_legendre: order must be positive");
  }
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache.emplace(order, golub_welsch(order)).first;
  }
  return it->second;
}

}  // namespace couette
