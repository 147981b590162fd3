#include "k2lab/ffield.hpp"

#include <stdexcept>
#include <string>

namespace k2lab {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::int64_t mod_pow(std::int64_t a, std::int64_t e, std::int64_t q) {
  a %= q;
  if (a < 0) a += q;
  std::int64_t r = 1;
  while (e > 0) {
    if (e & 1) r = r * a % q;
    a = a * a % q;
    e >>= 1;
  }
  return r;
}

std::int64_t mod_inv(std::int64_t a, std::int64_t q) {
  a %= q;
  if (a < 0) a += q;
  if (a == 0) throw std::domain_error("mod_inv: zero has no inverse");
  return mod_pow(a, q - 2, q);
}

std::int64_t element_order(std::int64_t a, std::int64_t q) {
  a %= q;
  if (a < 0) a += q;
  if (a == 0) throw std::domain_error("element_order: zero element");
  std::int64_t x = a, ord = 1;
  while (x != 1) {
    x = x * a % q;
    ++ord;
  }
  return ord;
}

FieldSpec make_field(std::int64_t q, std::int64_t gamma_override) {
  if (q % 2 == 0) throw std::invalid_argument("q must be odd, got " + std::to_string(q));
  if (q <= 3) throw std::invalid_argument("q must be at least 5, got " + std::to_string(q));
  if (!is_prime(q)) throw std::invalid_argument("q must be prime, got " + std::to_string(q));

  std::int64_t gamma = 0;
  if (gamma_override != 0) {
    std::int64_t g = gamma_override % q;
    if (g < 0) g += q;
    if (g == 0 || element_order(g, q) != q - 1)
      throw std::invalid_argument("gamma override " + std::to_string(gamma_override) +
                                  " does not generate the unit group of F_" + std::to_string(q));
    gamma = g;
  } else {
    for (std::int64_t g = 2; g < q; ++g)
      if (element_order(g, q) == q - 1) {
        gamma = g;
        break;
      }
  }
  FieldSpec F{q, gamma};
  // A generator is automatically a non-square; assert it independently.
  if (legendre_const(gamma, F) != -1)
    throw std::logic_error("generator unexpectedly a square in F_" + std::to_string(q));
  return F;
}

int legendre_const(FieldElement a, const FieldSpec& F) {
  std::int64_t r = mod_pow(a, (F.q - 1) / 2, F.q);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

}  // namespace k2lab
