#pragma once

#include <cstdint>
#include <numbers>

namespace qrfsim::num {

/// Uniform periodic 1D grid. The conjugate (spectral) grid is derived:
/// n points spaced 2*pi/(n*spacing), centered around zero.
struct Grid1D {
  int n = 0;
  double spacing = 0.0;
  double offset = 0.0;

  double length() const { return n * spacing; }
  double point(int i) const { return offset + i * spacing; }

  double conjugate_spacing() const {
    return 2.0 * std::numbers::pi / (n * spacing);
  }
  double conjugate_offset() const { return -(n / 2) * conjugate_spacing(); }
  double conjugate_point(int i) const {
    return conjugate_offset() + i * conjugate_spacing();
  }

  bool operator==(const Grid1D&) const = default;
};

/// n must be a power of two (radix-2 spectral transform), length > 0.
Grid1D make_uniform_grid(int n, double length, double offset);

bool is_power_of_two(int n);

}  // namespace qrfsim::num
