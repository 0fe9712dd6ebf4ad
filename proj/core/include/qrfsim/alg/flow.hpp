#pragma once

#include "qrfsim/alg/expr.hpp"

namespace qrfsim::alg {

/// Conjugation e^G A e^{-G} = A + [G,A] + [G,[G,A]]/2! + ..., with every
/// increment truncated under the rule. Termination holds because each nested
/// commutator either raises the stored grading or strictly reduces the
/// polynomial degree. Throws RegimeError if the series has not vanished by
/// depth_cap.
OperatorExpr conjugate_by_flow(const OperatorExpr& generator, const OperatorExpr& a,
                               const GradingRule& rule, int depth_cap = 12);

/// Ordered list of flow generators; conjugation applies them first to last
/// (the first element is the rightmost factor of the unitary).
struct FlowSequence {
  std::vector<OperatorExpr> generators;

  FlowSequence inverse() const;
  FlowSequence then(const FlowSequence& next) const;
};

OperatorExpr conjugate_by_sequence(const FlowSequence& seq, const OperatorExpr& a,
                                   const GradingRule& rule, int depth_cap = 12);

}  // namespace qrfsim::alg
