#include "qrfsim/alg/first_class.hpp"

namespace qrfsim::alg {

FirstClassReport verify_first_class(
    const std::vector<std::pair<std::string, OperatorExpr>>& constraints,
    const GradingRule& rule) {
  FirstClassReport report;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    for (std::size_t j = i + 1; j < constraints.size(); ++j) {
      PairResult pr;
      pr.a = constraints[i].first;
      pr.b = constraints[j].first;
      const OperatorExpr com = commutator(constraints[i].second, constraints[j].second);
      pr.exact_zero = com.is_zero();
      pr.weak_zero = truncate(com, rule).is_zero();
      if (!pr.exact_zero) {
        for (const auto& t : com.terms()) {
          pr.residual_terms.push_back(t.str());
          pr.residual_gradings.push_back(t.grading);
          if (!(t.grading.g >= 1 && t.grading.p >= 2)) pr.residual_all_mixed_gp2 = false;
        }
      }
      if (!pr.weak_zero) report.all_weakly_zero = false;
      report.pairs.push_back(std::move(pr));
    }
  }
  return report;
}

}  // namespace qrfsim::alg
