#include "qrfsim/alg/expr.hpp"

#include <algorithm>
#include <sstream>

#include "qrfsim/errors.hpp"

namespace qrfsim::alg {

std::optional<SymbolId> conjugate_symbol(SymbolId s) {
  const auto k = kind_of(s);
  const auto p = particle_of(s);
  switch (k) {
    case SymbolKind::PosSpace:
      return symbol_id(SymbolKind::MomSpace, p);
    case SymbolKind::MomSpace:
      return symbol_id(SymbolKind::PosSpace, p);
    case SymbolKind::PosTime:
      return symbol_id(SymbolKind::MomTime, p);
    case SymbolKind::MomTime:
      return symbol_id(SymbolKind::PosTime, p);
    case SymbolKind::ClockTime:
      return symbol_id(SymbolKind::ClockEnergy, p);
    case SymbolKind::ClockEnergy:
      return symbol_id(SymbolKind::ClockTime, p);
    case SymbolKind::KickOp:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string symbol_name(SymbolId s) {
  const auto p = particle_of(s);
  const std::string suffix = p == kMass ? "M" : std::to_string(p);
  switch (kind_of(s)) {
    case SymbolKind::PosSpace:
      return "x" + suffix;
    case SymbolKind::PosTime:
      return "x0_" + suffix;
    case SymbolKind::ClockTime:
      return "T" + suffix;
    case SymbolKind::MomSpace:
      return "p" + suffix;
    case SymbolKind::MomTime:
      return "p0_" + suffix;
    case SymbolKind::ClockEnergy:
      return "H" + suffix;
    case SymbolKind::KickOp:
      return "Q" + suffix;
  }
  return "?";
}

void ParamPow::mul_mass(ParticleId p, int e) {
  if (e == 0) return;
  auto it = std::lower_bound(mass.begin(), mass.end(), p,
                             [](const auto& a, ParticleId b) { return a.first < b; });
  if (it != mass.end() && it->first == p) {
    it->second += e;
    if (it->second == 0) mass.erase(it);
  } else {
    mass.insert(it, {p, e});
  }
}

ParamPow ParamPow::operator*(const ParamPow& o) const {
  ParamPow r = *this;
  r.hbar += o.hbar;
  r.c += o.c;
  for (const auto& [p, e] : o.mass) r.mul_mass(p, e);
  return r;
}

std::string ParamPow::str() const {
  std::ostringstream os;
  auto pow = [&](const std::string& base, int e) {
    if (e == 0) return;
    os << "*" << base;
    if (e != 1) os << "^" << e;
  };
  pow("hbar", hbar);
  pow("c", c);
  for (const auto& [p, e] : mass) {
    pow(p == kMass ? "mM" : "m" + std::to_string(p), e);
  }
  return os.str();
}

void LinArg::add(SymbolId s, Rational c) {
  if (c.is_zero()) return;
  auto it = std::lower_bound(terms.begin(), terms.end(), s,
                             [](const auto& a, SymbolId b) { return a.first < b; });
  if (it != terms.end() && it->first == s) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  } else {
    terms.insert(it, {s, c});
  }
}

Rational LinArg::coefficient_of(SymbolId s) const {
  for (const auto& [sym, c] : terms) {
    if (sym == s) return c;
  }
  return Rational(0);
}

LinArg LinArg::negated() const {
  LinArg r = *this;
  for (auto& [s, c] : r.terms) c = -c;
  r.tau_star = -r.tau_star;
  return r;
}

std::string LinArg::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : terms) {
    if (c.negative()) {
      os << (c == Rational(-1) ? "-" : "-" + (-c).str() + "*");
    } else if (!first) {
      os << (c.is_one() ? "+" : "+" + c.str() + "*");
    } else if (!c.is_one()) {
      os << c.str() << "*";
    }
    os << symbol_name(s);
    first = false;
  }
  if (!tau_star.is_zero()) {
    os << (tau_star.negative() ? "-" : "+")
       << ((tau_star == Rational(1) || tau_star == Rational(-1))
               ? std::string("tau2*")
               : (tau_star.negative() ? -tau_star : tau_star).str() + "*tau2*");
  }
  return os.str();
}

std::string FuncAtom::str() const {
  std::string base = family == FuncFamily::Potential ? "Phi" : "w";
  for (int i = 0; i < deriv; ++i) base += "'";
  base += "(" + arg.str() + ")";
  if (power != 1) base += "^" + std::to_string(power);
  return base;
}

int Monomial::degree_of_kind(SymbolKind k) const {
  int d = 0;
  for (const auto& [s, e] : factors) {
    if (kind_of(s) == k) d += e;
  }
  return d;
}

void Monomial::mul(SymbolId s, int power) {
  if (power == 0) return;
  auto it = std::lower_bound(factors.begin(), factors.end(), s,
                             [](const auto& a, SymbolId b) { return a.first < b; });
  if (it != factors.end() && it->first == s) {
    it->second += power;
    if (it->second == 0) factors.erase(it);
  } else {
    factors.insert(it, {s, power});
  }
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r = *this;
  for (const auto& [s, e] : o.factors) r.mul(s, e);
  return r;
}

std::string Monomial::str() const {
  std::ostringstream os;
  for (const auto& [s, e] : factors) {
    os << "*" << symbol_name(s);
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

std::string Grading::str() const {
  return "(g=" + std::to_string(g) + ",p=" + std::to_string(p) + ")";
}

bool GradingRule::keeps(const Term& t) const {
  if (t.grading.g > max_g || t.grading.p > max_p) return false;
  if (drop_mixed_gp && t.grading.g >= 1 && t.grading.p >= 2) return false;
  if (transform_law) {
    if (t.params.hbar >= 1) return false;
    if (!t.pos.empty() && !t.mom.empty()) return false;
  }
  return true;
}

GradingRule GradingRule::regime() { return {}; }

GradingRule GradingRule::transform() {
  GradingRule r;
  r.transform_law = true;
  return r;
}

GradingRule GradingRule::loosened() {
  GradingRule r;
  r.drop_mixed_gp = false;
  return r;
}

std::string Term::str() const {
  std::ostringstream os;
  os << coeff.str() << params.str();
  for (const auto& f : funcs) os << "*" << f.str();
  os << pos.str() << mom.str();
  return os.str();
}

OperatorExpr OperatorExpr::constant(CRational c) {
  Term t;
  t.coeff = c;
  return OperatorExpr({t});
}

OperatorExpr OperatorExpr::symbol(SymbolId s) {
  Term t;
  t.coeff = CRational(Rational(1));
  if (position_like(kind_of(s))) {
    t.pos.mul(s, 1);
  } else {
    t.mom.mul(s, 1);
    if (kind_of(s) == SymbolKind::MomSpace) t.grading.p = 1;
  }
  return OperatorExpr({t});
}

OperatorExpr OperatorExpr::func(FuncFamily fam, int deriv, LinArg arg, Grading grading) {
  Term t;
  t.coeff = CRational(Rational(1));
  // canonical argument sign for even families: Phi^(d)(-a) = (-1)^d Phi^(d)(a)
  if (fam == FuncFamily::Potential && !arg.terms.empty() &&
      arg.terms.front().second.negative()) {
    arg = arg.negated();
    if (deriv % 2 == 1) t.coeff = -t.coeff;
  }
  t.funcs.push_back(FuncAtom{fam, deriv, std::move(arg), 1});
  t.grading = grading;
  return OperatorExpr({t});
}

void OperatorExpr::normalize() {
  for (auto& t : terms_) {
    std::sort(t.funcs.begin(), t.funcs.end());
    // merge equal atoms
    std::vector<FuncAtom> merged;
    for (auto& f : t.funcs) {
      if (!merged.empty() && merged.back().key() == f.key()) {
        merged.back().power += f.power;
      } else {
        merged.push_back(f);
      }
    }
    std::erase_if(merged, [](const FuncAtom& f) { return f.power == 0; });
    t.funcs = std::move(merged);
  }
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.shape() < b.shape(); });
  std::vector<Term> out;
  for (auto& t : terms_) {
    if (t.coeff.is_zero()) continue;
    if (!out.empty() && out.back().shape() == t.shape()) {
      out.back().coeff += t.coeff;
      out.back().grading.g = std::min(out.back().grading.g, t.grading.g);
      out.back().grading.p = std::min(out.back().grading.p, t.grading.p);
      if (out.back().coeff.is_zero()) out.pop_back();
    } else {
      out.push_back(std::move(t));
    }
  }
  terms_ = std::move(out);
}

bool OperatorExpr::operator==(const OperatorExpr& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].shape() != o.terms_[i].shape()) return false;
    if (!(terms_[i].coeff == o.terms_[i].coeff)) return false;
  }
  return true;
}

OperatorExpr OperatorExpr::operator+(const OperatorExpr& o) const {
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  return OperatorExpr(std::move(all));
}

OperatorExpr OperatorExpr::operator-() const {
  std::vector<Term> all = terms_;
  for (auto& t : all) t.coeff = -t.coeff;
  return OperatorExpr(std::move(all));
}

OperatorExpr OperatorExpr::operator-(const OperatorExpr& o) const { return *this + (-o); }

OperatorExpr OperatorExpr::scaled(CRational c) const {
  std::vector<Term> all = terms_;
  for (auto& t : all) t.coeff *= c;
  return OperatorExpr(std::move(all));
}

OperatorExpr OperatorExpr::scaled(CRational c, ParamPow p) const {
  std::vector<Term> all = terms_;
  for (auto& t : all) {
    t.coeff *= c;
    t.params = t.params * p;
  }
  return OperatorExpr(std::move(all));
}

namespace {

Rational binomial(int n, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) {
    r *= Rational(n - i, i + 1);
  }
  return r;
}

CRational minus_i_pow(int k) {
  switch (k % 4) {
    case 0:
      return CRational(Rational(1));
    case 1:
      return CRational(Rational(0), Rational(-1));
    case 2:
      return CRational(Rational(-1));
    default:
      return CRational(Rational(0), Rational(1));
  }
}

// Position-side content of a term while momenta are being moved through it.
struct Piece {
  CRational coeff{Rational(1)};
  int hbar = 0;
  std::vector<FuncAtom> funcs;
  Monomial pos;
  Monomial mom_residual;
};

// d/dq of (funcs, pos): product rule over bare powers and function arguments.
std::vector<Piece> derivative(const Piece& in, SymbolId q) {
  std::vector<Piece> out;
  for (std::size_t i = 0; i < in.pos.factors.size(); ++i) {
    const auto [sym, e] = in.pos.factors[i];
    if (sym != q) continue;
    Piece d = in;
    d.coeff *= CRational(Rational(e));
    d.pos.mul(q, -1);
    out.push_back(std::move(d));
  }
  for (std::size_t i = 0; i < in.funcs.size(); ++i) {
    const auto& atom = in.funcs[i];
    const Rational r = atom.arg.coefficient_of(q);
    if (r.is_zero()) continue;
    Piece d = in;
    d.coeff *= CRational(r * Rational(atom.power));
    d.funcs[i].power -= 1;
    FuncAtom up{atom.family, atom.deriv + 1, atom.arg, 1};
    d.funcs.push_back(std::move(up));
    std::erase_if(d.funcs, [](const FuncAtom& f) { return f.power == 0; });
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

OperatorExpr term_product(const Term& a, const Term& b) {
  // Move a.mom past (b.funcs, b.pos):
  //   p^n f(q) = sum_k C(n,k) (-i hbar)^k f^(k)(q) p^(n-k)
  std::vector<Piece> pieces(1);
  pieces[0].funcs = b.funcs;
  pieces[0].pos = b.pos;

  for (const auto& [sym, n] : a.mom.factors) {
    const auto conj = conjugate_symbol(sym);
    std::vector<Piece> next;
    for (const auto& piece : pieces) {
      if (!conj) {  // central symbol
        Piece p0 = piece;
        p0.mom_residual.mul(sym, n);
        next.push_back(std::move(p0));
        continue;
      }
      std::vector<Piece> deriv_level{piece};
      for (int k = 0; k <= n; ++k) {
        for (const auto& dp : deriv_level) {
          Piece p = dp;
          p.coeff *= CRational(binomial(n, k)) * minus_i_pow(k);
          p.hbar += k;
          p.mom_residual.mul(sym, n - k);
          next.push_back(std::move(p));
        }
        if (k == n) break;
        std::vector<Piece> next_level;
        for (const auto& dp : deriv_level) {
          auto ds = derivative(dp, *conj);
          next_level.insert(next_level.end(), ds.begin(), ds.end());
        }
        deriv_level = std::move(next_level);
        if (deriv_level.empty()) break;
      }
    }
    pieces = std::move(next);
  }

  std::vector<Term> terms;
  terms.reserve(pieces.size());
  for (auto& piece : pieces) {
    Term t;
    t.coeff = a.coeff * b.coeff * piece.coeff;
    t.params = a.params * b.params;
    t.params.hbar += piece.hbar;
    t.funcs = a.funcs;
    t.funcs.insert(t.funcs.end(), piece.funcs.begin(), piece.funcs.end());
    t.pos = a.pos * piece.pos;
    t.mom = piece.mom_residual * b.mom;
    t.grading = a.grading + b.grading;
    terms.push_back(std::move(t));
  }
  return OperatorExpr(std::move(terms));
}

OperatorExpr OperatorExpr::operator*(const OperatorExpr& o) const {
  std::vector<Term> acc;
  for (const auto& ta : terms_) {
    for (const auto& tb : o.terms_) {
      const auto prod = term_product(ta, tb);
      acc.insert(acc.end(), prod.terms().begin(), prod.terms().end());
    }
  }
  return OperatorExpr(std::move(acc));
}

OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b) {
  return a * b - b * a;
}

OperatorExpr truncate(const OperatorExpr& a, const GradingRule& rule) {
  std::vector<Term> kept;
  for (const auto& t : a.terms()) {
    if (rule.keeps(t)) kept.push_back(t);
  }
  return OperatorExpr(std::move(kept));
}

namespace {

ParticleId swap_particle(ParticleId p, ParticleId a, ParticleId b) {
  if (p == a) return b;
  if (p == b) return a;
  return p;
}

}  // namespace

OperatorExpr swap_labels(const OperatorExpr& e, ParticleId a, ParticleId b) {
  std::vector<Term> out;
  for (const auto& t : e.terms()) {
    Term s;
    s.coeff = t.coeff;
    s.params.hbar = t.params.hbar;
    s.params.c = t.params.c;
    for (const auto& [p, ex] : t.params.mass) {
      s.params.mul_mass(swap_particle(p, a, b), ex);
    }
    for (const auto& [sym, ex] : t.pos.factors) {
      s.pos.mul(symbol_id(kind_of(sym), swap_particle(particle_of(sym), a, b)), ex);
    }
    for (const auto& [sym, ex] : t.mom.factors) {
      s.mom.mul(symbol_id(kind_of(sym), swap_particle(particle_of(sym), a, b)), ex);
    }
    for (const auto& f : t.funcs) {
      LinArg arg;
      for (const auto& [sym, c] : f.arg.terms) {
        arg.add(symbol_id(kind_of(sym), swap_particle(particle_of(sym), a, b)), c);
      }
      arg.tau_star = f.arg.tau_star;
      // restore the sign canonical form (even families absorb a flip)
      FuncAtom atom{f.family, f.deriv, std::move(arg), f.power};
      if (atom.family == FuncFamily::Potential && !atom.arg.terms.empty() &&
          atom.arg.terms.front().second.negative()) {
        atom.arg = atom.arg.negated();
        if ((atom.deriv * atom.power) % 2 == 1) s.coeff = -s.coeff;
      }
      s.funcs.push_back(std::move(atom));
    }
    s.grading = t.grading;
    out.push_back(std::move(s));
  }
  return OperatorExpr(std::move(out));
}

std::string OperatorExpr::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) os << " + ";
    os << terms_[i].str();
  }
  return os.str();
}

}  // namespace qrfsim::alg
