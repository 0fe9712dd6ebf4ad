#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qrfsim/alg/rational.hpp"

namespace qrfsim::alg {

/// Particle labels: 1..N for the particles, 0 for the source mass M.
using ParticleId = int;
inline constexpr ParticleId kMass = 0;

enum class SymbolKind : std::uint8_t {
  PosSpace = 0,    // spatial position
  PosTime = 1,     // time coordinate
  ClockTime = 2,   // internal clock time
  MomSpace = 3,    // spatial momentum (carries the eps_p grading)
  MomTime = 4,     // time-component momentum
  ClockEnergy = 5, // internal clock energy
  KickOp = 6,      // measurement observable, commutes with everything
};

constexpr bool position_like(SymbolKind k) {
  return k == SymbolKind::PosSpace || k == SymbolKind::PosTime ||
         k == SymbolKind::ClockTime;
}
constexpr bool momentum_like(SymbolKind k) {
  return k == SymbolKind::MomSpace || k == SymbolKind::MomTime ||
         k == SymbolKind::ClockEnergy;
}

/// Packed symbol id: kind * 64 + particle.
using SymbolId = int;
constexpr SymbolId symbol_id(SymbolKind k, ParticleId p) {
  return static_cast<int>(k) * 64 + p;
}
constexpr SymbolKind kind_of(SymbolId s) { return static_cast<SymbolKind>(s / 64); }
constexpr ParticleId particle_of(SymbolId s) { return s % 64; }

/// Conjugate partner under the canonical pairing; nullopt for KickOp.
std::optional<SymbolId> conjugate_symbol(SymbolId s);

std::string symbol_name(SymbolId s);

/// Exponents of the formal parameters hbar, c and the per-particle masses.
struct ParamPow {
  int hbar = 0;
  int c = 0;
  std::vector<std::pair<ParticleId, int>> mass;  // sorted, nonzero exponents

  void mul_mass(ParticleId p, int e);
  ParamPow operator*(const ParamPow& o) const;
  bool operator==(const ParamPow& o) const = default;
  auto operator<=>(const ParamPow& o) const = default;
  std::string str() const;
};

/// Formal coefficient-function families with registered derivative rules.
enum class FuncFamily : std::uint8_t {
  Potential = 0,   // Phi(arg); even in its argument; counts one eps_g per factor
  KickWindow = 1,  // regularized delta w(arg); not even
};

/// Linear argument  sum coef_s * q_s  + tau_star_coeff * tau2*.
struct LinArg {
  std::vector<std::pair<SymbolId, Rational>> terms;  // sorted, nonzero; position-like only
  Rational tau_star;                                 // coefficient of the formal tau2*

  void add(SymbolId s, Rational c);
  Rational coefficient_of(SymbolId s) const;
  LinArg negated() const;
  bool operator==(const LinArg& o) const = default;
  auto operator<=>(const LinArg& o) const = default;
  std::string str() const;
};

struct FuncAtom {
  FuncFamily family = FuncFamily::Potential;
  int deriv = 0;
  LinArg arg;
  int power = 1;

  auto key() const { return std::tie(family, deriv, arg); }
  bool operator==(const FuncAtom& o) const = default;
  auto operator<=>(const FuncAtom& o) const = default;
  std::string str() const;
};

/// Sorted (symbol, power) monomial.
struct Monomial {
  std::vector<std::pair<SymbolId, int>> factors;

  bool empty() const { return factors.empty(); }
  int degree_of_kind(SymbolKind k) const;
  void mul(SymbolId s, int power);
  Monomial operator*(const Monomial& o) const;
  bool operator==(const Monomial& o) const = default;
  auto operator<=>(const Monomial& o) const = default;
  std::string str() const;
};

/// Perturbative multidegree, stored per term and conserved: products add
/// gradings, and a canonical contraction child inherits the sum of its
/// parents' gradings (the paper's own bookkeeping, which rates
/// [sqrt(g00), omega_p] as order Phi p^2 / m^2 c^4).
struct Grading {
  int g = 0;  // powers of Phi/c^2
  int p = 0;  // powers of k/(m c)

  Grading operator+(const Grading& o) const { return {g + o.g, p + o.p}; }
  bool operator==(const Grading& o) const = default;
  std::string str() const;
};

/// Which terms survive truncation.
struct GradingRule {
  int max_g = 1;
  int max_p = 4;
  bool drop_mixed_gp = true;  // drop d_g >= 1 && d_p >= 2 (the §II regime)
  /// Transformation-law mode (conjugation-table checks): additionally drop
  /// terms mixing bare position and momentum factors in one monomial, and
  /// terms carrying explicit hbar powers; the tables display the leading
  /// relational order where neither occurs.
  bool transform_law = false;

  bool keeps(const struct Term& t) const;

  static GradingRule regime();
  static GradingRule transform();
  /// Loosened rule keeping the eps_g*eps_p^2 mixed terms (cli test hook).
  static GradingRule loosened();
};

/// positions-first normal form: coeff * params * funcs(positions) * pos * mom.
struct Term {
  CRational coeff;
  ParamPow params;
  std::vector<FuncAtom> funcs;  // sorted by key
  Monomial pos;                 // position-like symbols
  Monomial mom;                 // momentum-like + kick symbols
  Grading grading;

  int eps_g() const { return grading.g; }
  int eps_p() const { return grading.p; }

  auto shape() const { return std::tie(params, funcs, pos, mom); }
  bool operator==(const Term& o) const = default;
  std::string str() const;
};

class OperatorExpr {
 public:
  OperatorExpr() = default;
  explicit OperatorExpr(std::vector<Term> terms) : terms_(std::move(terms)) {
    normalize();
  }

  static OperatorExpr zero() { return {}; }
  static OperatorExpr constant(CRational c);
  static OperatorExpr symbol(SymbolId s);
  static OperatorExpr func(FuncFamily fam, int deriv, LinArg arg, Grading grading);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  OperatorExpr operator+(const OperatorExpr& o) const;
  OperatorExpr operator-(const OperatorExpr& o) const;
  OperatorExpr operator*(const OperatorExpr& o) const;  // normal-ordered
  OperatorExpr operator-() const;

  OperatorExpr scaled(CRational c) const;
  OperatorExpr scaled(CRational c, ParamPow p) const;

  /// Symbolic equality: same normal-form terms and coefficients. The stored
  /// grading is bookkeeping metadata and does not enter.
  bool operator==(const OperatorExpr& o) const;

  std::string str() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

/// Exact [A, B] via Leibniz expansion over the canonical pairs, re-normal-ordered.
OperatorExpr commutator(const OperatorExpr& a, const OperatorExpr& b);

OperatorExpr truncate(const OperatorExpr& a, const GradingRule& rule);

/// Relabels particles a <-> b everywhere (symbols, function arguments, masses).
OperatorExpr swap_labels(const OperatorExpr& e, ParticleId a, ParticleId b);

/// Single normal-ordered term product (exposed for tests).
OperatorExpr term_product(const Term& a, const Term& b);

}  // namespace qrfsim::alg
