#include "otsp/rational.hpp"

#include <cmath>

#include "otsp/error.hpp"

namespace otsp {

std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_fraction(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(mpz_class(s));
    mpz_class num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("not a rational: '" + s + "'");
  }
}

namespace {

std::string decimal_rounded(const Rational& r, int digits, bool up) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class num = r.get_num() * scale;
  mpz_class q;
  if (up)
    mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), r.get_den().get_mpz_t());
  else
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), r.get_den().get_mpz_t());
  bool neg = q < 0;
  if (neg) q = -q;
  std::string body = q.get_str();
  if (digits == 0) return (neg ? "-" : "") + body;
  if (static_cast<int>(body.size()) <= digits) body.insert(0, digits + 1 - body.size(), '0');
  body.insert(body.size() - digits, ".");
  return (neg ? "-" : "") + body;
}

Rational round_up_decimal(const Rational& r, int digits) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  mpz_class num = r.get_num() * scale;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), r.get_den().get_mpz_t());
  Rational out(q, scale);
  out.canonicalize();
  return out;
}

}  // namespace

std::string decimal_upper(const Rational& r, int digits) { return decimal_rounded(r, digits, true); }
std::string decimal_lower(const Rational& r, int digits) { return decimal_rounded(r, digits, false); }

Rational from_int64(std::int64_t v) {
  // mpz_class has no portable int64 constructor on every platform
  return Rational(mpz_class(std::to_string(v)));
}

double to_double(const Rational& r) { return r.get_d(); }

Rational guarantee_constant() { return parse_fraction("186787944118/100000000000"); }

namespace {

// Alternating series for 1/e: partial sums ending on a positive term bound it from
// above, those ending on a negative term from below.
Rational inv_e_partial(int last) {
  Rational sum = 0, term = 1;
  for (int j = 0; j <= last; ++j) {
    if (j > 0) term /= j;
    sum += (j % 2 == 0) ? term : Rational(-term);
  }
  return sum;
}

}  // namespace

Rational inv_e_power_upper(int l) {
  Rational sum = inv_e_partial(30), p = 1;
  for (int i = 0; i < l; ++i) p *= sum;
  return round_up_decimal(p, 20);
}

Rational inv_e_power_lower(int l) {
  Rational sum = inv_e_partial(31), p = 1;
  for (int i = 0; i < l; ++i) p *= sum;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 20);
  mpz_class num = p.get_num() * scale, q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), p.get_den().get_mpz_t());
  Rational out(q, scale);
  out.canonicalize();
  return out;
}

Rational chain_constant(int chains) {
  Rational c = Rational(2 * chains + 1, 2) + inv_e_power_upper(chains);
  c += Rational(1, 1000000000);
  return c;
}

}  // namespace otsp
