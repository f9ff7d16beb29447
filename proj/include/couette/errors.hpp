#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace couette {

/// Base class for failures of a numerical procedure (as opposed to bad input,
/// which is reported with std::invalid_argument).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularSystemError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// The Rayleigh coefficient V''/(V - c) blew up: c is too close to the range of V.
class PoleProximityError : public NumericalError {
 public:
  PoleProximityError(double y, std::complex<double> c);
  double y() const { return y_; }
  std::complex<double> c() const { return c_; }

 private:
  double y_;
  std::complex<double> c_;
};

/// Newton (or another iteration) failed; carries the last iterate.
class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, std::complex<double> last_iterate,
                   int iterations);
  std::complex<double> last_iterate() const { return last_; }
  int iterations() const { return iterations_; }

 private:
  std::complex<double> last_;
  int iterations_;
};

/// Shifted QR did not reduce the Hessenberg matrix within the iteration cap.
class EigenSolverError : public NumericalError {
 public:
  explicit EigenSolverError(Eigen::Index unreduced_row);
  /// Row index of the lowest subdiagonal entry that was not deflated.
  Eigen::Index unreduced_row() const { return row_; }

 private:
  Eigen::Index row_;
};

/// RK step too large to resolve the fast viscous decay rate.
class StiffnessError : public NumericalError {
 public:
  StiffnessError(double step, double required_step);
  double required_step() const { return required_; }

 private:
  double required_;
};

}  // namespace couette
