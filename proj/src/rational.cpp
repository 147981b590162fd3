#include "k2lab/rational.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>
#include <system_error>

namespace k2lab {

Int int_pow(std::int64_t base, unsigned long exp) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), exp);
  if (base < 0) throw std::invalid_argument("int_pow: negative base");
  return r;
}

Rat rat_pow(std::int64_t base, long exp) {
  if (base <= 0) throw std::invalid_argument("rat_pow: base must be positive");
  Int p = int_pow(base, static_cast<unsigned long>(exp < 0 ? -exp : exp));
  Rat r = exp < 0 ? Rat(1, p) : Rat(p);
  r.canonicalize();
  return r;
}

double to_double(const Rat& value) { return mpq_get_d(value.get_mpq_t()); }

std::string decimal_string(const Rat& value, int sig) {
  if (sig < 1) throw std::invalid_argument("decimal_string: sig < 1");
  if (value == 0) return "0";
  Int a = abs(value.get_num());
  Int b = value.get_den();  // canonical form keeps den > 0

  // Find e with 10^e <= a/b < 10^(e+1); size estimates can be off by one.
  long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 10));
  auto pow10 = [](unsigned long k) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, k);
    return p;
  };
  auto at_least = [&](long ex) {
    // true iff a/b >= 10^ex
    if (ex >= 0) return a >= b * pow10(static_cast<unsigned long>(ex));
    return a * pow10(static_cast<unsigned long>(-ex)) >= b;
  };
  while (!at_least(e)) --e;
  while (at_least(e + 1)) ++e;

  // digits = round(a/b * 10^(sig-1-e)), half up.
  long shift = sig - 1 - e;
  Int num = a, den = b;
  if (shift >= 0)
    num *= pow10(static_cast<unsigned long>(shift));
  else
    den *= pow10(static_cast<unsigned long>(-shift));
  Int digits = (2 * num + den) / (2 * den);
  std::string ds = digits.get_str();
  if (static_cast<int>(ds.size()) > sig) {  // 99..9 rounded up to 100..0
    ds.pop_back();
    ++e;
  }
  std::string out;
  if (sgn(value) < 0) out += '-';
  out += ds[0];
  if (ds.size() > 1) {
    out += '.';
    out += ds.substr(1);
  }
  out += 'e';
  out += std::to_string(e);
  return out;
}

std::string display_real(double value, int sig) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value,
                           std::chars_format::general, sig);
  if (res.ec != std::errc()) throw std::runtime_error("display_real failed");
  return std::string(buf, res.ptr);
}

}  // namespace k2lab
