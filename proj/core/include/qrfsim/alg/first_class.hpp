#pragma once

#include <string>
#include <vector>

#include "qrfsim/alg/builders.hpp"

namespace qrfsim::alg {

struct PairResult {
  std::string a, b;
  bool exact_zero = false;  // commutator vanishes with no truncation
  bool weak_zero = false;   // vanishes after truncation under the rule
  std::vector<std::string> residual_terms;    // untruncated residual
  std::vector<Grading> residual_gradings;
  bool residual_all_mixed_gp2 = true;  // every residual term has g>=1 and p>=2
};

struct FirstClassReport {
  std::vector<PairResult> pairs;
  bool all_weakly_zero = true;
};

/// Pairwise commutators of a constraint set; exact zeros flagged as exact,
/// weak zeros certified by the grading of every dropped term.
FirstClassReport verify_first_class(
    const std::vector<std::pair<std::string, OperatorExpr>>& constraints,
    const GradingRule& rule);

}  // namespace qrfsim::alg
