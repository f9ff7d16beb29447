#pragma once

#include <complex>

#include <Eigen/Core>

namespace couette {

using Complex = std::complex<double>;
using Index = Eigen::Index;

using Vector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXd;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline constexpr Complex kI{0.0, 1.0};

}  // namespace couette
