#pragma once

#include <cstdint>
#include <string>

namespace qrfsim::alg {

/// Exact rational on 64-bit words with 128-bit intermediates. Keeps the
/// algebra's normal forms decidable; throws on overflow instead of degrading.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d);

  bool is_zero() const { return num == 0; }
  bool is_one() const { return num == 1 && den == 1; }
  bool negative() const { return num < 0; }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  auto operator<=>(const Rational& o) const;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  static Rational reduce128(__int128 n, __int128 d);
};

inline auto Rational::operator<=>(const Rational& o) const {
  return static_cast<__int128>(num) * o.den <=> static_cast<__int128>(o.num) * den;
}

/// Gaussian rational a + b*i; commutators bring in factors of i.
struct CRational {
  Rational re, im;

  CRational() = default;
  CRational(Rational r) : re(r) {}  // NOLINT
  CRational(Rational r, Rational i) : re(r), im(i) {}

  static CRational i() { return CRational(Rational(0), Rational(1)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  CRational operator-() const { return {-re, -im}; }
  CRational operator+(const CRational& o) const { return {re + o.re, im + o.im}; }
  CRational operator-(const CRational& o) const { return {re - o.re, im - o.im}; }
  CRational operator*(const CRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  CRational& operator+=(const CRational& o) { return *this = *this + o; }
  CRational& operator*=(const CRational& o) { return *this = *this * o; }
  bool operator==(const CRational& o) const = default;

  std::string str() const;
};

}  // namespace qrfsim::alg
