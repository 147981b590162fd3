#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "k2lab/charsym.hpp"
#include "k2lab/rational.hpp"

namespace k2lab {

enum class LKind { raw, completed };

// Integer coefficient sequence of the L-polynomial in u = q^{-s}.
//   raw:       sigma_0 .. sigma_{deg D - 1}
//   completed: the raw twisted polynomial divided by (1+u), degree 2g where
//              deg D = 2g+2; exists because u = -1 is a trivial zero.
struct LPolynomial {
  std::vector<std::int64_t> coeffs;
  LKind kind;
  Discriminant source;
};

LPolynomial l_polynomial(const Discriminant& chi, int threads = 1);

// Exact division of a raw twisted even-degree L-polynomial by (1+u). The
// quotient is recomputed independently via the alternating partial sums and
// the two must agree; a nonzero remainder or a mismatch is an internal
// consistency failure (std::logic_error), not a user error.
LPolynomial complete(const LPolynomial& L);

Rat eval_l(const LPolynomial& L, const Rat& u);

// L evaluated at u = q^{-2}, i.e. L(2, chi).
Rat l_value_at_2(const LPolynomial& L);

// L(2, chi_{gamma D}) assembled from untwisted character sums of D:
//   sum_{deg f <= 2g} (-1)^(deg f) chi_D(f)/|f|^2
//     + q^(-4g-2) * sum_{deg f <= 2g} chi_D(f)
// with deg D = 2g+2. Independent of l_polynomial's route, which makes the
// equality of the two a checkable identity.
Rat l2_charsum_route(const FieldSpec& F, const Poly& D, int threads = 1);

// True iff the untwisted L-polynomial of even-degree D vanishes at u = 1.
bool untwisted_unit_zero_check(const FieldSpec& F, const Poly& D, int threads = 1);

// zeta of the quadratic order: zeta_A(s) * L(s, chi). Requires s >= 2 (the
// zeta_A factor has a pole at s = 1).
Rat zeta_O_eval(const Discriminant& chi, int s, int threads = 1);

// Coefficient-level functional equation for a completed L-polynomial of
// degree 2g: sigma*_m = q^(m-g) * sigma*_(2g-m) for all m. Checked by exact
// integer cross-multiplication.
bool functional_equation_check(const LPolynomial& Lstar, int g);

// Serialization used inside experiment reports:
// {"q":..,"D":"<poly>","twisted":..,"coeffs":[..],"kind":"raw|completed"}
nlohmann::ordered_json lpoly_to_json(const LPolynomial& L);
LPolynomial lpoly_from_json(const nlohmann::json& j);

}  // namespace k2lab
