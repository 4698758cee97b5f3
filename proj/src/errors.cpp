#include "gjw/errors.hpp"

namespace gjw {

ParseError::ParseError(std::size_t offset, const std::string& message)
    : Error("at offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

UnknownIdentifierError::UnknownIdentifierError(std::size_t offset, const std::string& name)
    : ParseError(offset, "unknown identifier '" + name + "'"), name_(name) {}

ConvergenceError::ConvergenceError(std::size_t iterations, double residual)
    : Error("eigensolver did not converge after " + std::to_string(iterations) +
            " iterations (residual " + std::to_string(residual) + ")"),
      iterations_(iterations),
      residual_(residual) {}

}  // namespace gjw
