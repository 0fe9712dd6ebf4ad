#pragma once

#include <string>
#include <vector>

#include "qrfsim/alg/builders.hpp"

namespace qrfsim::alg {

enum class ConjugationTable { T1, T2, T12 };

std::string table_name(ConjugationTable t);

struct TableLine {
  std::string lhs_name;
  SymbolId lhs;
  OperatorExpr rhs;  // in base symbols, untruncated
};

/// The conjugation tables of the frame-change operators: every phase-space
/// symbol of the N-particle + mass model and its image.
std::vector<TableLine> expected_table(const ModelAlgebra& model, ConjugationTable t);

/// Flow realization of the corresponding operator.
FlowSequence table_flows(const ModelAlgebra& model, ConjugationTable t);

struct TableLineResult {
  std::string lhs;
  bool pass = false;
  std::vector<std::string> residual_terms;
  std::vector<Grading> residual_gradings;
};

struct TableReport {
  ConjugationTable table;
  std::vector<TableLineResult> lines;
  bool all_pass = true;
  int failures = 0;
};

/// Conjugates every table line through the flow sequence and compares with
/// the expected image, both sides truncated under the given rule. Failures
/// are report content, never exceptions.
TableReport verify_table(const ModelAlgebra& model, ConjugationTable t,
                         const GradingRule& rule = GradingRule::transform());

}  // namespace qrfsim::alg
