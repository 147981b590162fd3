#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "k2lab/charsym.hpp"
#include "k2lab/polyring.hpp"

using namespace k2lab;

namespace {

Poly P(std::int64_t q, std::initializer_list<std::int64_t> coeffs) {
  return Poly(q, std::vector<std::int64_t>(coeffs));
}

Poly random_monic(std::mt19937_64& rng, std::int64_t q, int maxdeg) {
  const int d = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(maxdeg));
  std::vector<std::int64_t> c(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] =
      static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
  c[static_cast<std::size_t>(d)] = 1;
  return Poly(q, std::move(c));
}

}  // namespace

TEST_CASE("discriminant validation") {
  const FieldSpec F = make_field(5);
  CHECK_NOTHROW(make_discriminant(F, P(5, {0, 1, 1}), false));
  CHECK_THROWS_AS(make_discriminant(F, P(5, {0, 0, 1}), false),
                  std::invalid_argument);  // T^2 is not square-free
  CHECK_THROWS_AS(make_discriminant(F, P(5, {0, 1, 1}).scaled(2), false),
                  std::invalid_argument);  // not monic
  CHECK_THROWS_AS(make_discriminant(F, Poly(5), false), std::invalid_argument);
  CHECK_THROWS_AS(make_discriminant(F, P(7, {0, 1, 1}), false), std::invalid_argument);
}

TEST_CASE("twisting scales by the generator") {
  const FieldSpec F = make_field(5);
  const Discriminant un = make_discriminant(F, P(5, {0, 1, 1}), false);
  const Discriminant tw = make_discriminant(F, P(5, {0, 1, 1}), true);
  CHECK(effective(un) == P(5, {0, 1, 1}));
  CHECK(effective(tw) == P(5, {0, 2, 2}));
}

TEST_CASE("residue symbol on degree-one moduli is the constant symbol") {
  const FieldSpec F = make_field(5);
  const Poly T = P(5, {0, 1});
  for (std::int64_t c = 0; c < 5; ++c)
    CHECK(residue_symbol(Poly::constant(5, c), T) == legendre_const(c, F));
  CHECK(residue_symbol(T, T) == 0);
  CHECK(residue_symbol(P(5, {1, 1}) * P(5, {1, 1}), T) == 1);  // (T+1)^2 at T=0 is 1
}

TEST_CASE("residue symbol validates its modulus") {
  CHECK_THROWS_AS(residue_symbol(P(5, {1, 1}), P(5, {1, 0, 1})),
                  std::invalid_argument);  // T^2+1 factors
  CHECK_THROWS_AS(residue_symbol(P(5, {1, 1}), P(5, {0, 2})), std::invalid_argument);
  CHECK_THROWS_AS(residue_symbol(P(7, {1, 1}), P(5, {0, 1})), std::invalid_argument);
}

TEST_CASE("residue symbol detects squares in the residue field") {
  const Poly Pmod = P(5, {2, 0, 1});  // T^2+2, irreducible
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 50; ++it) {
    Poly a = random_monic(rng, 5, 3);
    if (divrem(a, Pmod).second.is_zero()) continue;
    CHECK(residue_symbol(a * a, Pmod) == 1);
  }
  // gamma is a constant non-square in F_5 but a square in F_25
  CHECK(residue_symbol(Poly::constant(5, 2), Pmod) == 1);
}

TEST_CASE("both symbol routes agree on a dense grid") {
  const FieldSpec F = make_field(5);
  for (int dd = 1; dd <= 2; ++dd)
    for (const Poly& D : enumerate_monic_squarefree(5, dd))
      for (bool twisted : {false, true}) {
        const Discriminant chi = make_discriminant(F, D, twisted);
        for (int df = 0; df <= 3; ++df)
          for (const Poly& f : enumerate_monic(5, df))
            CHECK(kronecker(chi, f) == kronecker_fast(chi, f));
      }
}

TEST_CASE("symbol routes agree when the numerator has smaller degree") {
  // exercises reduction starting from deg(effective) < deg(f)
  const FieldSpec F = make_field(7);
  for (const Poly& D : enumerate_monic_squarefree(7, 2))
    for (bool twisted : {false, true}) {
      const Discriminant chi = make_discriminant(F, D, twisted);
      for (const Poly& f : enumerate_monic(7, 4))
        CHECK(kronecker(chi, f) == kronecker_fast(chi, f));
    }
}

TEST_CASE("character is completely multiplicative") {
  const FieldSpec F = make_field(5);
  std::mt19937_64 rng(777);
  for (int it = 0; it < 300; ++it) {
    Poly D = random_monic(rng, 5, 4);
    if (!is_squarefree(D)) continue;
    const Discriminant chi = make_discriminant(F, D, (rng() & 1) != 0);
    const Poly f = random_monic(rng, 5, 4);
    const Poly g = random_monic(rng, 5, 4);
    CHECK(kronecker_fast(chi, f * g) == kronecker_fast(chi, f) * kronecker_fast(chi, g));
  }
}

TEST_CASE("first character sums of a known discriminant") {
  const FieldSpec F = make_field(5);
  const Discriminant un = make_discriminant(F, P(5, {0, 1, 1}), false);
  const Discriminant tw = make_discriminant(F, P(5, {0, 1, 1}), true);
  CHECK(sigma(un, 0) == 1);
  CHECK(sigma(un, 1) == -1);
  CHECK(sigma(tw, 0) == 1);
  CHECK(sigma(tw, 1) == 1);
}

TEST_CASE("character sums vanish at and beyond the conductor degree") {
  const FieldSpec F = make_field(5);
  for (const Poly& D : enumerate_monic_squarefree(5, 2))
    for (bool twisted : {false, true}) {
      const Discriminant chi = make_discriminant(F, D, twisted);
      CHECK(sigma(chi, 2) == 0);
      CHECK(sigma(chi, 3) == 0);
    }
}

TEST_CASE("sigma magnitudes stay within the trivial bound") {
  const FieldSpec F = make_field(5);
  for (const Poly& D : enumerate_monic_squarefree(5, 4)) {
    const Discriminant chi = make_discriminant(F, D, true);
    for (int n = 0; n < 4; ++n) {
      const std::int64_t s = sigma(chi, n);
      CHECK(s <= 125);
      CHECK(s >= -125);
    }
  }
}

TEST_CASE("twist relation holds across a family") {
  const FieldSpec F = make_field(5);
  for (const Poly& D : enumerate_monic_squarefree(5, 2))
    for (int n = 0; n <= 1; ++n) CHECK(twist_relation_check(F, D, n));
}

TEST_CASE("sigma vector has conductor-degree length") {
  const FieldSpec F = make_field(5);
  const Discriminant chi = make_discriminant(F, P(5, {1, 0, 0, 0, 1}), true);
  const SigmaVector v = sigma_vector(chi);
  REQUIRE(v.values.size() == 4);
  CHECK(v.values[0] == 1);
}

TEST_CASE("sigma is invariant under the worker count") {
  const FieldSpec F = make_field(5);
  const Poly D = Poly::parse(5, "T^7+T+1");
  REQUIRE(is_squarefree(D));
  const Discriminant chi = make_discriminant(F, D, false);
  const std::int64_t serial = sigma(chi, 6, 1);
  CHECK(sigma(chi, 6, 2) == serial);
  CHECK(sigma(chi, 6, 8) == serial);
}

TEST_CASE("non-square column sums over the degree-four family") {
  const FieldSpec F = make_field(5);
  const CharsumStat stat = nonsquare_charsum_stat(F, 1, 2);
  bool found_T = false;
  for (const CharsumRow& row : stat.rows) {
    if (row.f == P(5, {0, 1})) {
      found_T = true;
      CHECK(row.sum == -4);
    }
  }
  CHECK(found_T);
  CHECK(stat.max_ratio == doctest::Approx(0.12521980673998823).epsilon(1e-14));
  CHECK(stat.max_ratio_pow4 == Rat(2401, 9765625));
  CHECK_THROWS_AS(nonsquare_charsum_stat(F, 1, 3), std::invalid_argument);
}

TEST_CASE("column-sum statistic is invariant under the worker count") {
  const FieldSpec F = make_field(5);
  const CharsumStat a = nonsquare_charsum_stat(F, 1, 2, 1);
  const CharsumStat b = nonsquare_charsum_stat(F, 1, 2, 4);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].sum == b.rows[i].sum);
  CHECK(a.max_ratio_pow4 == b.max_ratio_pow4);
}
