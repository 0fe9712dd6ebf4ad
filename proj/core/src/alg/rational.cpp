#include "qrfsim/alg/rational.hpp"

#include <numeric>
#include <stdexcept>

namespace qrfsim::alg {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw std::overflow_error("Rational: 64-bit overflow after reduction");
  }
  return static_cast<long long>(v);
}

}  // namespace

Rational Rational::reduce128(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("Rational: zero denominator");
  if (n == 0) return Rational(0);
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const __int128 g = gcd128(n, d);
  Rational r;
  r.num = narrow(n / g);
  r.den = narrow(d / g);
  return r;
}

Rational::Rational(long long n, long long d) {
  *this = reduce128(n, d);
}

Rational Rational::operator-() const {
  Rational r;
  r.num = -num;
  r.den = den;
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  return reduce128(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                   static_cast<__int128>(den) * o.den);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  return reduce128(static_cast<__int128>(num) * o.num,
                   static_cast<__int128>(den) * o.den);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  return reduce128(static_cast<__int128>(num) * o.den,
                   static_cast<__int128>(den) * o.num);
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::string CRational::str() const {
  if (im.is_zero()) return re.str();
  if (re.is_zero()) return im.str() + "*i";
  return "(" + re.str() + (im.negative() ? "" : "+") + im.str() + "*i)";
}

}  // namespace qrfsim::alg
