#include "qrfsim/num/grid.hpp"

#include <string>

#include "qrfsim/errors.hpp"

namespace qrfsim::num {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Grid1D make_uniform_grid(int n, double length, double offset) {
  if (!is_power_of_two(n)) {
    throw ConfigError("grid size must be a power of two, got " + std::to_string(n));
  }
  if (!(length > 0.0)) {
    throw ConfigError("grid length must be positive, got " + std::to_string(length));
  }
  return Grid1D{n, length / n, offset};
}

}  // namespace qrfsim::num
