#include "qrfsim/alg/flow.hpp"

#include <algorithm>
#include <optional>

#include "qrfsim/errors.hpp"

namespace qrfsim::alg {

namespace {

// Generators of the form (i/hbar) x_s (sum_t r_t p_t), p_t not conjugate to
// x_s, act as exact canonical shifts: q_t -> q_t + r_t x_s on the conjugate
// positions, p_s -> p_s - sum_t r_t p_t, function arguments substituted.
// Recognizing them keeps Taylor series of shifted coefficient functions out
// of the term algebra (they would not terminate).
struct ShiftFlow {
  SymbolId shift_pos = 0;
  std::vector<std::pair<SymbolId, Rational>> momenta;  // (p_t, r_t)

  Rational shift_of_position(SymbolId q) const {
    const auto conj = conjugate_symbol(q);
    if (!conj) return Rational(0);
    for (const auto& [p, r] : momenta) {
      if (p == *conj) return r;
    }
    return Rational(0);
  }
};

std::optional<ShiftFlow> as_shift_flow(const OperatorExpr& gen) {
  if (gen.is_zero()) return std::nullopt;
  ShiftFlow flow;
  bool first = true;
  for (const auto& t : gen.terms()) {
    if (!t.coeff.re.is_zero()) return std::nullopt;
    if (t.params.hbar != -1 || t.params.c != 0 || !t.params.mass.empty()) {
      return std::nullopt;
    }
    if (!t.funcs.empty()) return std::nullopt;
    if (t.pos.factors.size() != 1 || t.pos.factors[0].second != 1) return std::nullopt;
    if (t.mom.factors.size() != 1 || t.mom.factors[0].second != 1) return std::nullopt;
    const SymbolId xs = t.pos.factors[0].first;
    const SymbolId pt = t.mom.factors[0].first;
    if (conjugate_symbol(xs) == pt) return std::nullopt;  // dilation, not a shift
    if (first) {
      flow.shift_pos = xs;
      first = false;
    } else if (flow.shift_pos != xs) {
      return std::nullopt;
    }
    flow.momenta.emplace_back(pt, t.coeff.im);
  }
  return flow;
}

OperatorExpr power_expr(const OperatorExpr& base, int e) {
  OperatorExpr acc = OperatorExpr::constant(CRational(Rational(1)));
  for (int i = 0; i < e; ++i) acc = acc * base;
  return acc;
}

OperatorExpr apply_shift_flow(const ShiftFlow& flow, const OperatorExpr& expr) {
  const auto conj_s = conjugate_symbol(flow.shift_pos);
  std::vector<Term> out;
  for (const auto& term : expr.terms()) {
    // Seed: coefficient, params, substituted function atoms; the stored
    // grading minus the momentum content that the factors below re-add.
    Term seed;
    seed.coeff = term.coeff;
    seed.params = term.params;
    seed.grading = term.grading;
    seed.grading.p -= term.mom.degree_of_kind(SymbolKind::MomSpace);
    for (const auto& f : term.funcs) {
      FuncAtom atom = f;
      Rational xs_coeff = atom.arg.coefficient_of(flow.shift_pos);
      for (const auto& [sym, c] : f.arg.terms) {
        const Rational r = flow.shift_of_position(sym);
        if (!r.is_zero()) xs_coeff += c * r;
      }
      LinArg arg;
      for (const auto& [sym, c] : f.arg.terms) {
        if (sym != flow.shift_pos) arg.add(sym, c);
      }
      arg.add(flow.shift_pos, xs_coeff);
      arg.tau_star = f.arg.tau_star;
      atom.arg = std::move(arg);
      if (atom.family == FuncFamily::Potential && !atom.arg.terms.empty() &&
          atom.arg.terms.front().second.negative()) {
        atom.arg = atom.arg.negated();
        if ((atom.deriv * atom.power) % 2 == 1) seed.coeff = -seed.coeff;
      }
      seed.funcs.push_back(std::move(atom));
    }

    OperatorExpr acc(std::vector<Term>{seed});
    for (const auto& [q, e] : term.pos.factors) {
      const Rational r = flow.shift_of_position(q);
      OperatorExpr base = OperatorExpr::symbol(q);
      if (!r.is_zero()) {
        base = base + OperatorExpr::symbol(flow.shift_pos).scaled(CRational(r));
      }
      acc = acc * power_expr(base, e);
    }
    for (const auto& [p, e] : term.mom.factors) {
      OperatorExpr base = OperatorExpr::symbol(p);
      if (conj_s && p == *conj_s) {
        for (const auto& [pt, r] : flow.momenta) {
          base = base - OperatorExpr::symbol(pt).scaled(CRational(r));
        }
      }
      acc = acc * power_expr(base, e);
    }
    for (const auto& t : acc.terms()) out.push_back(t);
  }
  return OperatorExpr(std::move(out));
}

}  // namespace

OperatorExpr conjugate_by_flow(const OperatorExpr& generator, const OperatorExpr& a,
                               const GradingRule& rule, int depth_cap) {
  if (const auto shift = as_shift_flow(generator)) {
    return truncate(apply_shift_flow(*shift, a), rule);
  }
  OperatorExpr result = truncate(a, rule);
  OperatorExpr incr = result;
  for (int depth = 1; depth <= depth_cap; ++depth) {
    incr = truncate(commutator(generator, incr), rule)
               .scaled(CRational(Rational(1, depth)));
    if (incr.is_zero()) return result;
    result = result + incr;
  }
  std::string gradings;
  for (const auto& t : incr.terms()) gradings += t.grading.str();
  throw RegimeError("conjugate_by_flow: series not terminated at depth " +
                    std::to_string(depth_cap) + "; residual gradings " + gradings);
}

FlowSequence FlowSequence::inverse() const {
  FlowSequence inv;
  inv.generators.reserve(generators.size());
  for (auto it = generators.rbegin(); it != generators.rend(); ++it) {
    inv.generators.push_back(-(*it));
  }
  return inv;
}

FlowSequence FlowSequence::then(const FlowSequence& next) const {
  FlowSequence seq = *this;
  seq.generators.insert(seq.generators.end(), next.generators.begin(),
                        next.generators.end());
  return seq;
}

OperatorExpr conjugate_by_sequence(const FlowSequence& seq, const OperatorExpr& a,
                                   const GradingRule& rule, int depth_cap) {
  OperatorExpr cur = a;
  for (const auto& gen : seq.generators) {
    cur = conjugate_by_flow(gen, cur, rule, depth_cap);
  }
  return cur;
}

}  // namespace qrfsim::alg
