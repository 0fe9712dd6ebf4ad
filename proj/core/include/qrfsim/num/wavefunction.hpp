#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qrfsim/num/grid.hpp"

namespace qrfsim::num {

using cplx = std::complex<double>;

enum class Basis { Position, Momentum };

struct Axis {
  Grid1D grid;
  std::string label;
  Basis basis = Basis::Position;

  /// Grid measure in the current basis (dx or dk).
  double measure() const {
    return basis == Basis::Position ? grid.spacing : grid.conjugate_spacing();
  }
  /// Coordinate of point i in the current basis.
  double coord(int i) const {
    return basis == Basis::Position ? grid.point(i) : grid.conjugate_point(i);
  }
};

/// Complex amplitudes over a tensor product of 1D grids, row-major with
/// axis 0 slowest. Value type: operations return fresh objects.
class WaveFunction {
 public:
  WaveFunction() = default;
  WaveFunction(std::vector<Axis> axes, std::vector<cplx> amplitudes);

  static WaveFunction zeros(std::vector<Axis> axes);

  const std::vector<Axis>& axes() const { return axes_; }
  const Axis& axis(std::size_t i) const { return axes_[i]; }
  std::size_t axis_index(const std::string& label) const;  // throws ContractError
  std::size_t rank() const { return axes_.size(); }

  std::vector<cplx>& amplitudes() { return amp_; }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  std::size_t size() const { return amp_.size(); }

  /// Row-major stride of axis i.
  std::size_t stride(std::size_t axis) const;

  /// Product of per-axis measures in the current bases.
  double measure() const;

  double norm2() const;  ///< integral |psi|^2 with grid measure
  double norm() const;
  void scale(cplx s);
  void normalize();  ///< throws ConfigError on zero norm

  Basis basis(std::size_t axis) const { return axes_[axis].basis; }
  void set_basis(std::size_t axis, Basis b) { axes_[axis].basis = b; }

 private:
  std::vector<Axis> axes_;
  std::vector<cplx> amp_;
};

/// Marginal probability distribution along one axis (measure-weighted so the
/// entries sum to norm2).
std::vector<double> marginal(const WaveFunction& psi, std::size_t axis);

/// First and second moments of the marginal along one axis.
struct Moments {
  double mean = 0.0;
  double var = 0.0;
};
Moments axis_moments(const WaveFunction& psi, std::size_t axis);

/// Probability mass in the outer `fraction` of the named axes (both ends).
double edge_leakage(const WaveFunction& psi, const std::vector<std::size_t>& axes,
                    double fraction = 0.05);

/// Normalized Gaussian packet exp(-(x-center)^2/(2 width^2) + i k0 x) on a grid.
std::vector<cplx> gaussian_profile(const Grid1D& grid, double center, double width,
                                   double k0);

double l2_distance(const WaveFunction& a, const WaveFunction& b);
double max_abs_diff(const WaveFunction& a, const WaveFunction& b);

}  // namespace qrfsim::num
