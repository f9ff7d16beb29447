#include "couette/errors.hpp"

namespace couette {

PoleProximityError::PoleProximityError(double y, std::complex<double> c)
    : NumericalError("Rayleigh coefficient singular: |V - c| below guard at Y = " +
                     std::to_string(y)),
      y_(y),
      c_(c) {}

ConvergenceError::ConvergenceError(const std::string& what,
                                   std::complex<double> last_iterate, int iterations)
    : NumericalError(what + " (last iterate " + std::to_string(last_iterate.real()) +
                     (last_iterate.imag() < 0 ? " - " : " + ") +
                     std::to_string(std::abs(last_iterate.imag())) + "i after " +
                     std::to_string(iterations) + " iterations)"),
      last_(last_iterate),
      iterations_(iterations) {}

EigenSolverError::EigenSolverError(Eigen::Index unreduced_row)
    : NumericalError("shifted QR failed to converge; unreduced subdiagonal at row " +
                     std::to_string(unreduced_row)),
      row_(unreduced_row) {}

StiffnessError::StiffnessError(double step, double required_step)
    : NumericalError("integration step " + std::to_string(step) +
                     " does not resolve the viscous sub-layer; need step <= " +
                     std::to_string(required_step)),
      required_(required_step) {}

}  // namespace couette
