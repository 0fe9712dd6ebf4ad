#include "qrfsim/alg/tables.hpp"

namespace qrfsim::alg {

std::string table_name(ConjugationTable t) {
  switch (t) {
    case ConjugationTable::T1:
      return "T1";
    case ConjugationTable::T2:
      return "T2";
    case ConjugationTable::T12:
      return "T12";
  }
  return "?";
}

namespace {

ParamPow inv_c(int e) {
  ParamPow p;
  p.c = -e;
  return p;
}

// T_f table for the full model, frame particle f (Appendix-D layout).
std::vector<TableLine> frame_table(const ModelAlgebra& m, ParticleId f) {
  using M = ModelAlgebra;
  std::vector<TableLine> lines;
  const OperatorExpr gM_inv_half = m.g00_pow(M::at(M::x(kMass)), Rational(-1, 2));
  const OperatorExpr gM_half = m.g00_pow(M::at(M::x(kMass)), Rational(1, 2));
  const auto others = m.others(f);

  auto name = [&](const std::string& base, ParticleId p) {
    return base + (p == kMass ? std::string("M") : std::to_string(p));
  };

  lines.push_back({name("x0_", f), M::x0(f), gM_inv_half * M::sym(M::x0(f))});
  lines.push_back({name("x", f), M::x(f), M::sym(M::x(f))});
  for (ParticleId i : others) {
    lines.push_back({name("x0_", i), M::x0(i),
                     gM_inv_half * (M::sym(M::x0(i)) + M::sym(M::x0(f)))});
    lines.push_back({name("x", i), M::x(i), M::sym(M::x(i)) + M::sym(M::x(f))});
  }
  lines.push_back({"x0_M", M::x0(kMass),
                   M::sym(M::x0(kMass)) + gM_inv_half * M::sym(M::x0(f))});
  lines.push_back({"xM", M::x(kMass), M::sym(M::x(kMass)) + M::sym(M::x(f))});

  // momentum of the frame particle
  OperatorExpr p0_f_rhs = M::sym(M::mom0(f));
  for (ParticleId i : others) p0_f_rhs = p0_f_rhs - M::sym(M::mom0(i));
  p0_f_rhs = gM_half * p0_f_rhs;
  for (ParticleId i : others) {
    p0_f_rhs = p0_f_rhs -
               (m.delta_factor(M::rel_pos(i), M::sym(M::mom(i)), i) * M::sym(M::energy(i)))
                   .scaled(CRational(Rational(1)), inv_c(1));
  }
  p0_f_rhs = p0_f_rhs - M::sym(M::mom0(kMass));
  OperatorExpr frame_mom = M::sym(M::mom(f)) - m.momentum_sum(true, f);
  p0_f_rhs = p0_f_rhs -
             (m.delta_factor(M::at(M::x(kMass)), frame_mom, f) * M::sym(M::energy(f)))
                 .scaled(CRational(Rational(1)), inv_c(1));
  lines.push_back({name("p0_", f), M::mom0(f), p0_f_rhs});
  lines.push_back({name("p", f), M::mom(f), frame_mom});

  for (ParticleId i : others) {
    lines.push_back({name("p0_", i), M::mom0(i), gM_half * M::sym(M::mom0(i))});
    lines.push_back({name("p", i), M::mom(i), M::sym(M::mom(i))});
  }
  lines.push_back({"p0_M", M::mom0(kMass), M::sym(M::mom0(kMass))});
  lines.push_back({"pM", M::mom(kMass), M::sym(M::mom(kMass))});
  return lines;
}

// T12 = T2 T1^dagger table: what the frame-1 relational operators look like
// from frame 2 (Appendix-D layout, general N).
std::vector<TableLine> swap_table(const ModelAlgebra& m) {
  using M = ModelAlgebra;
  std::vector<TableLine> lines;
  // A = sqrt(g00(x1-xM)/g00(xM)); B = sqrt(g^00(x1-xM)/g^00(xM)) = 1/A
  const OperatorExpr A = m.g00_pow(M::rel_pos(1), Rational(1, 2)) *
                         m.g00_pow(M::at(M::x(kMass)), Rational(-1, 2));
  const OperatorExpr B = m.g00_pow(M::rel_pos(1), Rational(-1, 2)) *
                         m.g00_pow(M::at(M::x(kMass)), Rational(1, 2));
  const OperatorExpr g1M_inv_half = m.g00_pow(M::rel_pos(1), Rational(-1, 2));
  const OperatorExpr gM_inv_half = m.g00_pow(M::at(M::x(kMass)), Rational(-1, 2));
  const OperatorExpr gM_half = m.g00_pow(M::at(M::x(kMass)), Rational(1, 2));

  std::vector<ParticleId> tail;  // particles 3..N
  for (ParticleId p = 3; p <= m.n_particles; ++p) tail.push_back(p);

  lines.push_back({"q0_1", M::x0(1), A * (M::sym(M::x0(1)) + M::sym(M::x0(2)))});
  lines.push_back({"q1", M::x(1), M::sym(M::x(1)) + M::sym(M::x(2))});
  lines.push_back({"q0_2", M::x0(2), -(A * M::sym(M::x0(1)))});
  lines.push_back({"q2", M::x(2), -M::sym(M::x(1))});
  for (ParticleId l : tail) {
    lines.push_back({"q0_" + std::to_string(l), M::x0(l),
                     A * (M::sym(M::x0(l)) - M::sym(M::x0(1)))});
    lines.push_back({"q" + std::to_string(l), M::x(l),
                     M::sym(M::x(l)) - M::sym(M::x(1))});
  }
  lines.push_back({"q0_M", M::x0(kMass),
                   M::sym(M::x0(kMass)) - gM_inv_half * M::sym(M::x0(1))});
  lines.push_back({"qM", M::x(kMass), M::sym(M::x(kMass)) - M::sym(M::x(1))});

  lines.push_back({"k0_1", M::mom0(1), g1M_inv_half * gM_half * M::sym(M::mom0(2))});
  lines.push_back({"k1", M::mom(1), M::sym(M::mom(2))});

  // k0_2: the transformed f0-like combination seen from frame 2
  OperatorExpr k0_2 = M::sym(M::mom0(2));
  for (ParticleId j : m.others(2)) k0_2 = k0_2 - M::sym(M::mom0(j));
  k0_2 = B * k0_2;
  OperatorExpr bracket = M::sym(M::mom0(kMass));
  for (ParticleId j : m.others(2)) {
    bracket = bracket +
              (m.delta_factor(M::rel_pos(j), M::sym(M::mom(j)), j) * M::sym(M::energy(j)))
                  .scaled(CRational(Rational(1)), inv_c(1));
  }
  const OperatorExpr frame2_mom = M::sym(M::mom(2)) - m.momentum_sum(true, 2);
  bracket = bracket +
            (m.delta_factor(M::at(M::x(kMass)), frame2_mom, 2) * M::sym(M::energy(2)))
                .scaled(CRational(Rational(1)), inv_c(1));
  k0_2 = k0_2 - g1M_inv_half * bracket;
  lines.push_back({"k0_2", M::mom0(2), k0_2});
  lines.push_back({"k2", M::mom(2), frame2_mom});

  for (ParticleId l : tail) {
    lines.push_back({"k0_" + std::to_string(l), M::mom0(l), B * M::sym(M::mom0(l))});
    lines.push_back({"k" + std::to_string(l), M::mom(l), M::sym(M::mom(l))});
  }
  lines.push_back({"k0_M", M::mom0(kMass), M::sym(M::mom0(kMass))});
  lines.push_back({"kM", M::mom(kMass), M::sym(M::mom(kMass))});
  return lines;
}

}  // namespace

std::vector<TableLine> expected_table(const ModelAlgebra& model, ConjugationTable t) {
  switch (t) {
    case ConjugationTable::T1:
      return frame_table(model, 1);
    case ConjugationTable::T2: {
      auto lines = frame_table(model, 1);
      for (auto& line : lines) {
        const auto kind = kind_of(line.lhs);
        const auto p = particle_of(line.lhs);
        const ParticleId q = p == 1 ? 2 : (p == 2 ? 1 : p);
        line.lhs = symbol_id(kind, q);
        line.rhs = swap_labels(line.rhs, 1, 2);
        if (!line.lhs_name.empty() && line.lhs_name.back() == '1') {
          line.lhs_name.back() = '2';
        } else if (!line.lhs_name.empty() && line.lhs_name.back() == '2') {
          line.lhs_name.back() = '1';
        }
      }
      return lines;
    }
    case ConjugationTable::T12:
      return swap_table(model);
  }
  return {};
}

FlowSequence table_flows(const ModelAlgebra& model, ConjugationTable t) {
  switch (t) {
    case ConjugationTable::T1:
      return model.t_full(1);
    case ConjugationTable::T2:
      return model.t_full(2);
    case ConjugationTable::T12:
      return model.t_swap(1, 2);
  }
  return {};
}

TableReport verify_table(const ModelAlgebra& model, ConjugationTable t,
                         const GradingRule& rule) {
  TableReport report;
  report.table = t;
  const auto flows = table_flows(model, t);
  for (const auto& line : expected_table(model, t)) {
    TableLineResult res;
    res.lhs = line.lhs_name;
    const OperatorExpr computed =
        conjugate_by_sequence(flows, OperatorExpr::symbol(line.lhs), rule);
    const OperatorExpr expected = truncate(line.rhs, rule);
    const OperatorExpr diff = truncate(computed - expected, rule);
    res.pass = diff.is_zero();
    if (!res.pass) {
      for (const auto& term : diff.terms()) {
        res.residual_terms.push_back(term.str());
        res.residual_gradings.push_back(term.grading);
      }
      report.all_pass = false;
      ++report.failures;
    }
    report.lines.push_back(std::move(res));
  }
  return report;
}

}  // namespace qrfsim::alg
