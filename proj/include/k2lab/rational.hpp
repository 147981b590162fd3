#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace k2lab {

using Int = mpz_class;
using Rat = mpq_class;

// base^exp for exp >= 0.
Int int_pow(std::int64_t base, unsigned long exp);

// base^exp as an exact rational; exp may be negative.
Rat rat_pow(std::int64_t base, long exp);

// Truncating conversion via mpq_get_d; deterministic.
double to_double(const Rat& value);

// Normalized scientific notation with `sig` significant digits, round half
// up on the first dropped digit. Pure integer arithmetic, so renderings are
// stable across platforms; fixture constants use this form.
std::string decimal_string(const Rat& value, int sig);

// Locale-independent rendering of a double (std::to_chars, general format).
std::string display_real(double value, int sig = 12);

}  // namespace k2lab
