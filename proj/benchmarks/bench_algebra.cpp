#include <benchmark/benchmark.h>

#include "qrfsim/alg/first_class.hpp"
#include "qrfsim/alg/tables.hpp"

using namespace qrfsim::alg;

namespace {

void BM_first_class(benchmark::State& state) {
  ModelAlgebra m;
  m.n_particles = static_cast<int>(state.range(0));
  const auto cs = m.constraints_full();
  for (auto _ : state) {
    auto report = verify_first_class(cs.all, GradingRule::regime());
    benchmark::DoNotOptimize(report.all_weakly_zero);
  }
}
BENCHMARK(BM_first_class)->Arg(2)->Arg(3);

void BM_table_line(benchmark::State& state) {
  ModelAlgebra m;
  const auto flows = table_flows(m, ConjugationTable::T12);
  const auto lines = expected_table(m, ConjugationTable::T12);
  const auto rule = GradingRule::transform();
  for (auto _ : state) {
    // the heaviest line: the frame momentum through six flows
    auto moved = conjugate_by_sequence(flows, OperatorExpr::symbol(lines[8].lhs), rule);
    benchmark::DoNotOptimize(moved.size());
  }
}
BENCHMARK(BM_table_line);

void BM_commutator(benchmark::State& state) {
  ModelAlgebra m;
  const auto cs = m.constraints_full();
  for (auto _ : state) {
    auto com = commutator(cs.dispersion[0], cs.f0);
    benchmark::DoNotOptimize(com.size());
  }
}
BENCHMARK(BM_commutator);

}  // namespace
