#include "gjw/configuration.hpp"

#include <cmath>

#include "gjw/errors.hpp"

namespace gjw {

Configuration::Configuration(std::size_t n, std::size_t dim, std::vector<double> coords)
    : n_(n), dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw ParameterError("dimension must be >= 1");
  if (coords_.size() != n_ * dim_) throw ParameterError("coordinate count does not match N*D");
  for (double c : coords_)
    if (!std::isfinite(c)) throw ParameterError("coordinates must be finite");
}

Configuration Configuration::line(std::vector<double> x) {
  const std::size_t n = x.size();
  return Configuration(n, 1, std::move(x));
}

double Configuration::distance(std::size_t i, std::size_t j) const {
  double s = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    const double u = (*this)(i, d) - (*this)(j, d);
    s += u * u;
  }
  return std::sqrt(s);
}

double Configuration::radius(std::size_t i) const {
  double s = 0.0;
  for (std::size_t d = 0; d < dim_; ++d) s += (*this)(i, d) * (*this)(i, d);
  return std::sqrt(s);
}

}  // namespace gjw
