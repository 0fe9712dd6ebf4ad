#pragma once

#include <string>

#include "qrfsim/num/wavefunction.hpp"

namespace qrfsim::num {

/// Unitary transform of one axis between position and momentum representation.
/// Momentum amplitudes are stored in monotonic k order on the centered
/// conjugate grid; absolute-coordinate phase conventions are kept so the
/// transform is exactly unitary and an involution.
WaveFunction to_conjugate_basis(const WaveFunction& psi, const std::string& axis_label);

/// In-place variant used by the propagators.
void toggle_axis_basis(WaveFunction& psi, std::size_t axis);

}  // namespace qrfsim::num
