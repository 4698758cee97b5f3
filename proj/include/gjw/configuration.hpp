#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gjw {

// N particles in D dimensions, stored particle-major: coords[i*D + d].
class Configuration {
 public:
  Configuration(std::size_t n, std::size_t dim, std::vector<double> coords);
  static Configuration line(std::vector<double> x);

  std::size_t size() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  double operator()(std::size_t i, std::size_t d) const { return coords_[i * dim_ + d]; }
  double& at(std::size_t i, std::size_t d) { return coords_[i * dim_ + d]; }
  std::span<const double> particle(std::size_t i) const { return {coords_.data() + i * dim_, dim_}; }
  std::span<const double> coords() const noexcept { return coords_; }

  /// |r_i - r_j|
  double distance(std::size_t i, std::size_t j) const;
  /// |r_i|
  double radius(std::size_t i) const;

 private:
  std::size_t n_;
  std::size_t dim_;
  std::vector<double> coords_;
};

}  // namespace gjw
