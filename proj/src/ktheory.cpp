#include "k2lab/ktheory.hpp"

#include <stdexcept>

#include "k2lab/lfunc.hpp"

namespace k2lab {

namespace {

K2Size finalize(Rat value, const Poly& m, K2Parity parity) {
  value.canonicalize();
  if (value.get_den() != 1)
    throw std::logic_error("K2 size not integral for m=" + m.to_string() + ": " +
                           value.get_str());
  if (value <= 0)
    throw std::logic_error("K2 size not positive for m=" + m.to_string() + ": " +
                           value.get_str());
  return K2Size{value.get_num(), m.degree(), parity};
}

}  // namespace

K2Size k2_size_odd(const Poly& m, const FieldSpec& F, int threads) {
  if (m.degree() % 2 == 0) throw std::invalid_argument("k2_size_odd: degree must be odd");
  Discriminant chi = make_discriminant(F, m, false);
  const long exponent = 3L * (m.degree() - 1) / 2;
  Rat value = rat_pow(F.q, exponent) * l_value_at_2(l_polynomial(chi, threads));
  return finalize(std::move(value), m, K2Parity::odd);
}

K2Size k2_size_even_twisted(const Poly& D, const FieldSpec& F, int threads) {
  if (D.degree() < 2 || D.degree() % 2 != 0)
    throw std::invalid_argument("k2_size_even_twisted: degree must be even and >= 2");
  Discriminant chi = make_discriminant(F, D, true);
  const int g = D.degree() / 2 - 1;
  const std::int64_t q = F.q;
  Rat prefactor = rat_pow(q, 3L * (g + 1)) * Rat(q + 1) / Rat(q * (q * q + 1));
  Rat value = prefactor * l_value_at_2(l_polynomial(chi, threads));
  return finalize(std::move(value), D, K2Parity::even_twisted);
}

}  // namespace k2lab
