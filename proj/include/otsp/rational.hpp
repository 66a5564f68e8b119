#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace otsp {

using Rational = mpq_class;

// "p/q" always, also for integers ("3/1").
std::string to_fraction_string(const Rational& r);
Rational parse_fraction(std::string_view text);

// Decimal with `digits` fractional digits, rounded toward +inf / -inf.
std::string decimal_upper(const Rational& r, int digits = 10);
std::string decimal_lower(const Rational& r, int digits = 10);

Rational from_int64(std::int64_t v);
double to_double(const Rational& r);

// Safe upper bound on 3/2 + 1/e.
Rational guarantee_constant();
// Safe upper bound on l + 1/2 + e^{-l}, plus the 1e-9 slack used for chains.
Rational chain_constant(int chains);
// Rational upper bound on 1/e^l (rounded up at 20 digits).
Rational inv_e_power_upper(int l);
// Rational lower bound on 1/e^l (rounded down at 20 digits).
Rational inv_e_power_lower(int l);

}  // namespace otsp
