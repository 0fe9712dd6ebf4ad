#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qrfsim/errors.hpp"
#include "qrfsim/alg/builders.hpp"
#include "qrfsim/alg/expr.hpp"
#include "qrfsim/alg/first_class.hpp"
#include "qrfsim/alg/flow.hpp"
#include "qrfsim/alg/tables.hpp"

using namespace qrfsim::alg;

namespace {

using M = ModelAlgebra;

OperatorExpr i_over_hbar(const OperatorExpr& e) {
  ParamPow p;
  p.hbar = -1;
  return e.scaled(CRational::i(), p);
}

// random polynomial in the N=2 model's symbols, optionally with a Phi atom
OperatorExpr random_expr(std::mt19937& rng, bool with_funcs) {
  std::uniform_int_distribution<int> n_terms(1, 3);
  std::uniform_int_distribution<int> n_factors(0, 2);
  std::uniform_int_distribution<int> coeff(-3, 3);
  const std::vector<SymbolId> symbols = {
      M::x(1),  M::x(2),  M::x(kMass),  M::x0(1),   M::x0(2),
      M::mom(1), M::mom(2), M::mom(kMass), M::mom0(1), M::mom0(2),
      M::clock(2), M::energy(2),
  };
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);

  OperatorExpr acc = OperatorExpr::zero();
  const int terms = n_terms(rng);
  for (int t = 0; t < terms; ++t) {
    int c = coeff(rng);
    if (c == 0) c = 1;
    OperatorExpr term = OperatorExpr::constant(CRational(Rational(c)));
    const int nf = n_factors(rng);
    for (int f = 0; f < nf; ++f) {
      term = term * OperatorExpr::symbol(symbols[pick(rng)]);
    }
    if (with_funcs && (rng() & 3u) == 0) {
      term = OperatorExpr::func(FuncFamily::Potential, 0, M::rel_pos(2), Grading{1, 0}) *
             term;
    }
    acc = acc + term;
  }
  return acc;
}

}  // namespace

TEST_CASE("canonical pairs") {
  const auto com = commutator(OperatorExpr::symbol(M::x(1)), OperatorExpr::symbol(M::mom(1)));
  REQUIRE(com.size() == 1);
  const auto& t = com.terms()[0];
  CHECK(t.coeff == CRational::i());
  CHECK(t.params.hbar == 1);
  CHECK(t.pos.empty());
  CHECK(t.mom.empty());

  CHECK(commutator(OperatorExpr::symbol(M::x(1)), OperatorExpr::symbol(M::mom(2))).is_zero());
  CHECK(commutator(OperatorExpr::symbol(M::x(1)), OperatorExpr::symbol(M::mom0(1))).is_zero());
  const auto clock = commutator(OperatorExpr::symbol(M::clock(2)),
                                OperatorExpr::symbol(M::energy(2)));
  REQUIRE(clock.size() == 1);
  CHECK(clock.terms()[0].coeff == CRational::i());
}

TEST_CASE("reordering p^2 against a potential atom") {
  // [p2^2, Phi(x2-xM)] = -2 i hbar (dPhi/dx2) p2 - hbar^2 d2Phi/dx2^2.
  // Canonical argument form is (xM - x2), so dPhi/dx2 = -Phi'(xM - x2).
  const auto p = OperatorExpr::symbol(M::mom(2));
  const auto phi = OperatorExpr::func(FuncFamily::Potential, 0, M::rel_pos(2), {1, 0});
  const auto com = commutator(p * p, phi);
  REQUIRE(com.size() == 2);
  for (const auto& t : com.terms()) {
    // conserved grading: children of (0,2) x (1,0)
    CHECK(t.grading == Grading{1, 2});
    REQUIRE(t.funcs.size() == 1);
    if (t.funcs[0].deriv == 1) {
      CHECK(t.params.hbar == 1);
      CHECK(t.coeff == CRational(Rational(0), Rational(2)));
      CHECK(t.mom.factors.size() == 1);
    } else {
      CHECK(t.funcs[0].deriv == 2);
      CHECK(t.params.hbar == 2);
      CHECK(t.coeff == CRational(Rational(-1)));
      CHECK(t.mom.empty());
    }
  }
}

TEST_CASE("translation and dilation flows") {
  ModelAlgebra m;
  const auto rule = GradingRule::transform();

  SUBCASE("constant-shift generator translates") {
    const auto gen = i_over_hbar(
        OperatorExpr::symbol(M::mom(1)).scaled(CRational(Rational(3, 2))));
    const auto out = conjugate_by_flow(gen, OperatorExpr::symbol(M::x(1)), rule);
    const auto expect = OperatorExpr::symbol(M::x(1)) +
                        OperatorExpr::constant(CRational(Rational(3, 2)));
    CHECK(out == expect);
  }

  SUBCASE("middle factor shifts the other positions") {
    const auto gen = i_over_hbar(OperatorExpr::symbol(M::x(1)) * m.momentum_sum(true, 1));
    const auto out = conjugate_by_flow(gen, OperatorExpr::symbol(M::x(2)), rule);
    CHECK(out == OperatorExpr::symbol(M::x(2)) + OperatorExpr::symbol(M::x(1)));
    // and the frame momentum picks up the full balance
    const auto pf = conjugate_by_flow(gen, OperatorExpr::symbol(M::mom(1)), rule);
    CHECK(pf == OperatorExpr::symbol(M::mom(1)) - m.momentum_sum(true, 1));
  }

  SUBCASE("dilation factor rescales p0 by sqrt(g00)") {
    const auto flows = m.t_full(1);
    const auto out = conjugate_by_flow(flows.generators[2],
                                       OperatorExpr::symbol(M::mom0(2)), rule);
    const auto expect = truncate(
        m.g00_pow(M::at(M::x(kMass)), Rational(1, 2)) * OperatorExpr::symbol(M::mom0(2)),
        rule);
    CHECK(out == expect);
  }
}

TEST_CASE("grading rule truncation") {
  ModelAlgebra m;
  // eps_p^4 kept
  const auto g4 = m.gamma_pow(OperatorExpr::symbol(M::mom(2)), 2, Rational(-1, 2));
  bool has_p4 = false;
  for (const auto& t : g4.terms()) has_p4 |= (t.grading.p == 4);
  CHECK(has_p4);

  // eps_g * eps_p^2 dropped by the regime rule, kept by the loosened one
  const auto mixed = m.g00_pow(M::rel_pos(2), Rational(1, 2)) *
                     (OperatorExpr::symbol(M::mom(2)) * OperatorExpr::symbol(M::mom(2)));
  const auto kept = truncate(mixed, GradingRule::regime());
  for (const auto& t : kept.terms()) CHECK(!(t.grading.g >= 1 && t.grading.p >= 2));
  const auto loose = truncate(mixed, GradingRule::loosened());
  bool has_mixed = false;
  for (const auto& t : loose.terms()) has_mixed |= (t.grading.g >= 1 && t.grading.p >= 2);
  CHECK(has_mixed);

  // idempotence
  CHECK(truncate(kept, GradingRule::regime()) == kept);
}

TEST_CASE("commutator properties on random expressions") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = random_expr(rng, true);
    const auto b = random_expr(rng, true);
    CHECK(commutator(a, b) == -commutator(b, a));
  }
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_expr(rng, false);
    const auto b = random_expr(rng, false);
    const auto c = random_expr(rng, false);
    const auto jacobi = commutator(a, commutator(b, c)) +
                        commutator(b, commutator(c, a)) +
                        commutator(c, commutator(a, b));
    CHECK(jacobi.is_zero());
  }
}

TEST_CASE("flow homomorphism over the frame-change generators") {
  ModelAlgebra m;
  const auto rule = GradingRule::transform();
  std::mt19937 rng(77);
  const auto flows = m.t_full(1);
  for (const auto& gen : flows.generators) {
    for (int trial = 0; trial < 8; ++trial) {
      const auto a = random_expr(rng, false);
      const auto b = random_expr(rng, false);
      const auto lhs = conjugate_by_flow(gen, truncate(commutator(a, b), rule), rule);
      const auto rhs = commutator(conjugate_by_flow(gen, a, rule),
                                  conjugate_by_flow(gen, b, rule));
      CHECK(truncate(lhs - truncate(rhs, rule), rule).is_zero());
    }
  }
}

TEST_CASE("constraint algebra is first class") {
  for (int n : {2, 3}) {
    ModelAlgebra m;
    m.n_particles = n;
    const auto cs = m.constraints_full();
    const auto report = verify_first_class(cs.all, GradingRule::regime());
    CHECK(report.all_weakly_zero);
    for (const auto& pr : report.pairs) {
      const bool has_f0 = pr.a == "f0" || pr.b == "f0";
      const bool has_f1 = pr.a == "f1" || pr.b == "f1";
      if (has_f1) {
        // [C_I, f1] and [f0, f1] hold exactly
        CHECK(pr.exact_zero);
      } else if (!has_f0) {
        // [C_I, C_J]
        CHECK(pr.exact_zero);
      } else {
        // [C_I, f0]: residual entirely of grading >= eps_g eps_p^2
        CHECK(!pr.exact_zero);
        CHECK(pr.weak_zero);
        CHECK(pr.residual_all_mixed_gp2);
      }
    }
  }
}

TEST_CASE("first-class check with the measurement constraint") {
  ModelAlgebra m;
  const auto cs = m.constraints_full(true, 2);
  const auto report = verify_first_class(cs.all, GradingRule::regime());
  CHECK(report.all_weakly_zero);
}

TEST_CASE("loosened grading exposes the dropped residual") {
  ModelAlgebra m;
  const auto cs = m.constraints_full();
  const auto report = verify_first_class(cs.all, GradingRule::loosened());
  bool c_f0_nonzero = false;
  for (const auto& pr : report.pairs) {
    if ((pr.a == "C_1" && pr.b == "f0") || (pr.a == "f0" && pr.b == "C_1")) {
      c_f0_nonzero = !pr.weak_zero;
    }
  }
  CHECK(c_f0_nonzero);
}

TEST_CASE("limit constraint sets look like the displayed forms") {
  ModelAlgebra m;
  const auto gal = m.constraints_galilean();
  // C_1 = p0_1 - p1^2/(2 m1 c)
  ParamPow inv_mc;
  inv_mc.c = -1;
  inv_mc.mul_mass(1, -1);
  const auto expect =
      OperatorExpr::symbol(M::mom0(1)) -
      (OperatorExpr::symbol(M::mom(1)) * OperatorExpr::symbol(M::mom(1)))
          .scaled(CRational(Rational(1, 2)), inv_mc);
  CHECK(gal.dispersion[0] == expect);

  // full constraints truncated to the galilean grading reproduce the
  // galilean list term by term after the rest term m_I c is put back
  GradingRule slow;
  slow.max_g = 0;
  slow.max_p = 2;
  const auto full = m.constraints_full();
  for (int i = 0; i < 2; ++i) {
    ParamPow mc;
    mc.c = 1;
    mc.mul_mass(i + 1, 1);
    const auto rest = OperatorExpr::constant(CRational(Rational(1))).scaled(
        CRational(Rational(1)), mc);
    CHECK(truncate(full.dispersion[i], slow) + rest == gal.dispersion[i]);
  }
}

TEST_CASE("Appendix-D conjugation tables") {
  ModelAlgebra m;
  for (auto table : {ConjugationTable::T1, ConjugationTable::T2, ConjugationTable::T12}) {
    const auto report = verify_table(m, table);
    INFO(table_name(table));
    for (const auto& line : report.lines) {
      INFO(line.lhs);
      for (const auto& r : line.residual_terms) INFO("residual: " << r);
      CHECK(line.pass);
    }
    CHECK(report.all_pass);
  }
}

TEST_CASE("conjugation tables at N=3 exercise the spectator lines") {
  ModelAlgebra m;
  m.n_particles = 3;
  const auto report = verify_table(m, ConjugationTable::T12);
  for (const auto& line : report.lines) {
    INFO(line.lhs);
    for (const auto& r : line.residual_terms) INFO("residual: " << r);
    CHECK(line.pass);
  }
}

TEST_CASE("swap involution: T12 then T21 is the identity") {
  ModelAlgebra m;
  const auto rule = GradingRule::transform();
  const auto t12 = m.t_swap(1, 2);
  const auto t21 = m.t_swap(2, 1);
  for (const auto& line : expected_table(m, ConjugationTable::T12)) {
    const auto there = conjugate_by_sequence(t12, OperatorExpr::symbol(line.lhs), rule);
    const auto back = conjugate_by_sequence(t21, there, rule);
    INFO(line.lhs_name);
    CHECK(back == truncate(OperatorExpr::symbol(line.lhs), rule));
  }
}

TEST_CASE("flow termination guard") {
  ModelAlgebra m;
  // x0^2 p0 carries no grading and raises the polynomial degree each step,
  // so the series cannot terminate within the cap.
  const auto gen = i_over_hbar(OperatorExpr::symbol(M::x0(1)) *
                               OperatorExpr::symbol(M::x0(1)) *
                               OperatorExpr::symbol(M::mom0(1)));
  CHECK_THROWS_AS(
      conjugate_by_flow(gen, OperatorExpr::symbol(M::x0(1)), GradingRule::transform(), 6),
      qrfsim::RegimeError);
}
