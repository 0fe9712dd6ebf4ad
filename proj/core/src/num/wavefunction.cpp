#include "qrfsim/num/wavefunction.hpp"

#include <cmath>
#include <set>

#include "qrfsim/errors.hpp"

namespace qrfsim::num {

WaveFunction::WaveFunction(std::vector<Axis> axes, std::vector<cplx> amplitudes)
    : axes_(std::move(axes)), amp_(std::move(amplitudes)) {
  std::size_t expect = 1;
  std::set<std::string> labels;
  for (const auto& ax : axes_) {
    expect *= static_cast<std::size_t>(ax.grid.n);
    if (!labels.insert(ax.label).second) {
      throw ContractError("duplicate axis label '" + ax.label + "'");
    }
  }
  if (amp_.size() != expect) {
    throw ContractError("amplitude array size does not match the axis product");
  }
}

WaveFunction WaveFunction::zeros(std::vector<Axis> axes) {
  std::size_t total = 1;
  for (const auto& ax : axes) total *= static_cast<std::size_t>(ax.grid.n);
  return WaveFunction(std::move(axes), std::vector<cplx>(total, cplx{0.0, 0.0}));
}

std::size_t WaveFunction::axis_index(const std::string& label) const {
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (axes_[i].label == label) return i;
  }
  throw ContractError("unknown axis label '" + label + "'");
}

std::size_t WaveFunction::stride(std::size_t axis) const {
  std::size_t s = 1;
  for (std::size_t i = axes_.size(); i-- > axis + 1;) {
    s *= static_cast<std::size_t>(axes_[i].grid.n);
  }
  return s;
}

double WaveFunction::measure() const {
  double m = 1.0;
  for (const auto& ax : axes_) m *= ax.measure();
  return m;
}

double WaveFunction::norm2() const {
  double s = 0.0;
  for (const auto& a : amp_) s += std::norm(a);
  return s * measure();
}

double WaveFunction::norm() const { return std::sqrt(norm2()); }

void WaveFunction::scale(cplx s) {
  for (auto& a : amp_) a *= s;
}

void WaveFunction::normalize() {
  const double n = norm();
  if (n <= 0.0) throw ConfigError("cannot normalize a zero wavefunction");
  scale(cplx{1.0 / n, 0.0});
}

std::vector<double> marginal(const WaveFunction& psi, std::size_t axis) {
  const int n = psi.axis(axis).grid.n;
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
  const std::size_t stride = psi.stride(axis);
  const std::size_t total = psi.size();
  const auto& amp = psi.amplitudes();
  for (std::size_t idx = 0; idx < total; ++idx) {
    const std::size_t i = (idx / stride) % static_cast<std::size_t>(n);
    out[i] += std::norm(amp[idx]);
  }
  const double w = psi.measure();
  for (auto& v : out) v *= w;
  return out;
}

Moments axis_moments(const WaveFunction& psi, std::size_t axis) {
  const auto dist = marginal(psi, axis);
  const auto& ax = psi.axis(axis);
  double w = 0.0, m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < ax.grid.n; ++i) {
    const double x = ax.coord(i);
    w += dist[static_cast<std::size_t>(i)];
    m1 += x * dist[static_cast<std::size_t>(i)];
    m2 += x * x * dist[static_cast<std::size_t>(i)];
  }
  Moments mom;
  mom.mean = m1 / w;
  mom.var = m2 / w - mom.mean * mom.mean;
  return mom;
}

double edge_leakage(const WaveFunction& psi, const std::vector<std::size_t>& axes,
                    double fraction) {
  double total = 0.0;
  const double n2 = psi.norm2();
  for (std::size_t axis : axes) {
    const auto dist = marginal(psi, axis);
    const int n = psi.axis(axis).grid.n;
    const int edge = std::max(1, static_cast<int>(n * fraction));
    double mass = 0.0;
    for (int i = 0; i < edge; ++i) mass += dist[static_cast<std::size_t>(i)];
    for (int i = n - edge; i < n; ++i) mass += dist[static_cast<std::size_t>(i)];
    total += mass;
  }
  return n2 > 0.0 ? total / n2 : 0.0;
}

std::vector<cplx> gaussian_profile(const Grid1D& grid, double center, double width,
                                   double k0) {
  std::vector<cplx> out(static_cast<std::size_t>(grid.n));
  double n2 = 0.0;
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.point(i);
    const double d = (x - center) / width;
    const double env = std::exp(-0.5 * d * d);
    out[static_cast<std::size_t>(i)] = env * std::polar(1.0, k0 * x);
    n2 += env * env;
  }
  const double norm = std::sqrt(n2 * grid.spacing);
  for (auto& a : out) a /= norm;
  return out;
}

double l2_distance(const WaveFunction& a, const WaveFunction& b) {
  if (a.size() != b.size()) throw ContractError("l2_distance: shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a.amplitudes()[i] - b.amplitudes()[i]);
  return std::sqrt(s * a.measure());
}

double max_abs_diff(const WaveFunction& a, const WaveFunction& b) {
  if (a.size() != b.size()) throw ContractError("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.amplitudes()[i] - b.amplitudes()[i]));
  }
  return m;
}

}  // namespace qrfsim::num
