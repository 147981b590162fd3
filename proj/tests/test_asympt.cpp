#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "k2lab/asympt.hpp"
#include "k2lab/polyring.hpp"
#include "k2lab/rational.hpp"

using namespace k2lab;

namespace {

Poly P(std::int64_t q, std::initializer_list<std::int64_t> coeffs) {
  return Poly(q, std::vector<std::int64_t>(coeffs));
}

}  // namespace

TEST_CASE("rational zeta values over F_5") {
  const FieldSpec F = make_field(5);
  CHECK(zeta_A(2, F) == Rat(5, 4));
  CHECK(zeta_A(4, F) == Rat(125, 124));
  CHECK(zeta_A(5, F) == Rat(625, 624));
  // 1/zeta_A(2) = 1 - 1/q is the square-free density.
  CHECK(zeta_A(2, F) * (Rat(1) - Rat(1, 5)) == 1);
  CHECK_THROWS_AS(zeta_A(1, F), std::domain_error);
  CHECK_THROWS_AS(zeta_A(0, F), std::domain_error);
}

TEST_CASE("irreducible counts by degree match direct factorization") {
  const FieldSpec F = make_field(5);
  const auto irr = irreducibles_by_degree(F, 4);
  REQUIRE(irr.size() == 5);
  CHECK(irr[1].size() == 5);
  CHECK(irr[2].size() == 10);
  CHECK(irr[3].size() == 40);
  CHECK(irr[4].size() == 150);
  for (const auto& layer : irr)
    for (const Poly& p : layer) CHECK(is_irreducible(p));
  std::size_t brute = 0;
  for (const Poly& f : enumerate_monic(5, 3))
    if (is_irreducible(f)) ++brute;
  CHECK(brute == irr[3].size());
}

TEST_CASE("truncated Euler product meets its tolerance") {
  const FieldSpec F = make_field(5);
  const EulerConstant e = euler_product_P(4, F, 1e-10);
  CHECK(e.s == 4);
  CHECK(e.tail_bound <= 1e-10);
  CHECK(e.tail_bound > 0.0);
  // The reference value is the full product to double precision, so the
  // truncation can only be off by its own certified tail.
  CHECK(std::abs(e.value_product - 0.9986663929851913) <= e.tail_bound + 1e-15);
  CHECK(to_double(e.product_exact) == doctest::Approx(e.value_product).epsilon(1e-15));
  // A tighter tolerance can only deepen the truncation and refine the value.
  const EulerConstant tight = euler_product_P(4, F, 1e-14);
  CHECK(tight.truncation_degree >= e.truncation_degree);
  CHECK(std::abs(tight.value_product - e.value_product) <= e.tail_bound);
}

TEST_CASE("character-sum route to the Euler constant, partial sums") {
  const FieldSpec F = make_field(5);
  CHECK(mobius_sum_P(4, 0, F) == Rat(1));
  CHECK(mobius_sum_P(4, 1, F) == Rat(749, 750));
  CHECK(mobius_sum_P(4, 2, F) == Rat(1825687, 1828125));
  CHECK(mobius_sum_P(4, 3, F) == Rat("95848567483/95976562500"));
  CHECK_THROWS_AS(mobius_sum_P(3, 2, F), std::invalid_argument);
  CHECK_THROWS_AS(mobius_sum_P(4, -1, F), std::invalid_argument);
}

TEST_CASE("the two routes to the Euler constant agree") {
  const FieldSpec F = make_field(5);
  const EulerConstant e = euler_product_P(4, F, 1e-10);
  const double diff = std::abs(to_double(mobius_sum_P(4, 6, F) - e.product_exact));
  CHECK(diff <= 1e-8);
}

TEST_CASE("signed square-free tail bounds") {
  const FieldSpec F5 = make_field(5);
  MobiusBound b = mobius_bound_check(0, F5);
  CHECK(b.value == Rat(1));
  CHECK(b.ok_abs);
  CHECK(b.ok_signed);
  b = mobius_bound_check(1, F5);
  CHECK(b.value == Rat(1, 6));
  CHECK(b.ok_signed);
  b = mobius_bound_check(2, F5);
  CHECK(b.value == Rat(7, 117));
  CHECK(b.ok_signed);

  const FieldSpec F7 = make_field(7);
  CHECK(mobius_bound_check(1, F7).value == Rat(1, 8));
  CHECK(mobius_bound_check(2, F7).value == Rat(53, 1600));
}

TEST_CASE("divisor-weighted sum identity over monic polynomials") {
  const FieldSpec F = make_field(5);
  ProductIdentity id = mobius_product_identity(0, F);
  CHECK(id.lhs == Rat(1));
  CHECK(id.equal);
  id = mobius_product_identity(1, F);
  CHECK(id.lhs == Rat(25, 6));
  CHECK(id.equal);
  id = mobius_product_identity(2, F);
  CHECK(id.lhs == Rat(2425, 117));
  CHECK(id.equal);
  id = mobius_product_identity(3, F);
  CHECK(id.lhs == Rat(1018075, 9828));
  CHECK(id.equal);
  for (int m = 4; m <= 6; ++m) CHECK(mobius_product_identity(m, F).equal);
  const FieldSpec F7 = make_field(7);
  for (int m = 0; m <= 6; ++m) CHECK(mobius_product_identity(m, F7).equal);
}

TEST_CASE("square-free counts coprime to a fixed polynomial") {
  const FieldSpec F = make_field(5);
  CoprimeCount c = squarefree_coprime_count(0, P(5, {0, 1}), F);
  CHECK(c.count == 16);
  CHECK(c.main == Rat(50, 3));
  CHECK(c.rel_err_exact == Rat(1, 25));
  CHECK(c.rel_err == doctest::Approx(0.04).epsilon(1e-12));
  for (auto l : {P(5, {0, 1}), P(5, {1, 1}), P(5, {0, 0, 1})}) {
    c = squarefree_coprime_count(1, l, F);
    CHECK(c.count == 416);
    CHECK(c.main == Rat(1250, 3));
    CHECK(c.rel_err_exact == Rat(1, 625));
  }
  // l = 1: every square-free polynomial is coprime to it, no error term at all.
  c = squarefree_coprime_count(1, Poly::constant(5, 1), F);
  CHECK(c.count == 500);
  CHECK(c.main == Rat(500));
  CHECK(c.rel_err_exact == 0);
}
