#include "k2lab/lfunc.hpp"

#include <stdexcept>

#include "k2lab/asympt.hpp"

namespace k2lab {

LPolynomial l_polynomial(const Discriminant& chi, int threads) {
  LPolynomial out{{}, LKind::raw, chi};
  const int d = chi.D.degree();
  out.coeffs.reserve(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n) out.coeffs.push_back(sigma(chi, n, threads));
  if (out.coeffs.empty() || out.coeffs[0] != 1)
    throw std::logic_error("l_polynomial: sigma_0 != 1");
  return out;
}

LPolynomial complete(const LPolynomial& L) {
  if (L.kind != LKind::raw) throw std::invalid_argument("complete: input must be raw");
  if (!L.source.twisted) throw std::invalid_argument("complete: character must be twisted");
  const int deg_d = L.source.D.degree();
  if (deg_d < 2 || deg_d % 2 != 0)
    throw std::invalid_argument("complete: discriminant degree must be even and >= 2");
  const int n = static_cast<int>(L.coeffs.size());  // = 2g+2

  // Route one: synthetic division by (1+u).
  std::vector<std::int64_t> quo(static_cast<std::size_t>(n - 1), 0);
  std::int64_t carry = 0;
  for (int k = 0; k < n - 1; ++k) {
    quo[static_cast<std::size_t>(k)] = L.coeffs[static_cast<std::size_t>(k)] - carry;
    carry = quo[static_cast<std::size_t>(k)];
  }
  const std::int64_t remainder = L.coeffs[static_cast<std::size_t>(n - 1)] - carry;
  if (remainder != 0)
    throw std::logic_error("complete: no trivial zero at u=-1 for D=" + L.source.D.to_string() +
                           " (upstream sigma bug)");

  // Route two: alternating partial sums, computed from scratch.
  for (int k = 0; k < n - 1; ++k) {
    std::int64_t alt = 0;
    for (int i = 0; i <= k; ++i) {
      const std::int64_t term = L.coeffs[static_cast<std::size_t>(i)];
      alt += ((k - i) & 1) ? -term : term;
    }
    if (alt != quo[static_cast<std::size_t>(k)])
      throw std::logic_error("complete: division and alternating-sum routes disagree");
  }

  return LPolynomial{std::move(quo), LKind::completed, L.source};
}

Rat eval_l(const LPolynomial& L, const Rat& u) {
  Rat acc(0);
  for (auto it = L.coeffs.rbegin(); it != L.coeffs.rend(); ++it) {
    acc = acc * u + Rat(static_cast<long>(*it));
  }
  acc.canonicalize();
  return acc;
}

Rat l_value_at_2(const LPolynomial& L) {
  return eval_l(L, rat_pow(L.source.F.q, -2));
}

Rat l2_charsum_route(const FieldSpec& F, const Poly& D, int threads) {
  const int deg_d = D.degree();
  if (deg_d < 2 || deg_d % 2 != 0)
    throw std::invalid_argument("l2_charsum_route: degree must be even and >= 2");
  const int g = deg_d / 2 - 1;
  Discriminant plain = make_discriminant(F, D, false);
  Rat main_part(0), dual_part(0);
  for (int m = 0; m <= 2 * g; ++m) {
    const std::int64_t s = sigma(plain, m, threads);
    Rat weighted = Rat(static_cast<long>(s)) * rat_pow(F.q, -2 * m);
    if (m & 1) weighted = -weighted;
    main_part += weighted;
    dual_part += Rat(static_cast<long>(s));
  }
  Rat out = main_part + dual_part * rat_pow(F.q, -(4L * g + 2));
  out.canonicalize();
  return out;
}

bool untwisted_unit_zero_check(const FieldSpec& F, const Poly& D, int threads) {
  if (D.degree() < 2 || D.degree() % 2 != 0)
    throw std::invalid_argument("untwisted_unit_zero_check: degree must be even and >= 2");
  LPolynomial L = l_polynomial(make_discriminant(F, D, false), threads);
  std::int64_t total = 0;
  for (auto c : L.coeffs) total += c;
  return total == 0;
}

Rat zeta_O_eval(const Discriminant& chi, int s, int threads) {
  if (s < 2) throw std::domain_error("zeta_O_eval: s must be >= 2 (pole at s=1)");
  LPolynomial L = l_polynomial(chi, threads);
  return zeta_A(s, chi.F) * eval_l(L, rat_pow(chi.F.q, -s));
}

bool functional_equation_check(const LPolynomial& Lstar, int g) {
  if (Lstar.kind != LKind::completed)
    throw std::invalid_argument("functional_equation_check: input must be completed");
  if (static_cast<int>(Lstar.coeffs.size()) != 2 * g + 1)
    throw std::invalid_argument("functional_equation_check: wrong degree for g");
  const std::int64_t q = Lstar.source.F.q;
  for (int m = 0; m <= 2 * g; ++m) {
    // sigma*_m * q^g == sigma*_(2g-m) * q^m, cross-multiplied to stay exact
    const Int lhs = Int(static_cast<long>(Lstar.coeffs[static_cast<std::size_t>(m)])) *
                    int_pow(q, static_cast<unsigned long>(g));
    const Int rhs = Int(static_cast<long>(Lstar.coeffs[static_cast<std::size_t>(2 * g - m)])) *
                    int_pow(q, static_cast<unsigned long>(m));
    if (lhs != rhs) return false;
  }
  return true;
}

nlohmann::ordered_json lpoly_to_json(const LPolynomial& L) {
  nlohmann::ordered_json j;
  j["q"] = L.source.F.q;
  j["D"] = L.source.D.to_string();
  j["twisted"] = L.source.twisted;
  j["coeffs"] = L.coeffs;
  j["kind"] = (L.kind == LKind::raw) ? "raw" : "completed";
  return j;
}

LPolynomial lpoly_from_json(const nlohmann::json& j) {
  const std::int64_t q = j.at("q").get<std::int64_t>();
  FieldSpec F = make_field(q);
  Poly D = Poly::parse(q, j.at("D").get<std::string>());
  Discriminant chi = make_discriminant(F, std::move(D), j.at("twisted").get<bool>());
  const std::string kind = j.at("kind").get<std::string>();
  if (kind != "raw" && kind != "completed")
    throw std::invalid_argument("lpoly_from_json: bad kind '" + kind + "'");
  return LPolynomial{j.at("coeffs").get<std::vector<std::int64_t>>(),
                     kind == "raw" ? LKind::raw : LKind::completed, std::move(chi)};
}

}  // namespace k2lab
