#pragma once

#include <cstdint>
#include <vector>

#include "k2lab/ffield.hpp"
#include "k2lab/polyring.hpp"
#include "k2lab/rational.hpp"

namespace k2lab {

// (1 - q^(1-s))^(-1), exact. s >= 2; the function has a pole at s = 1.
Rat zeta_A(int s, const FieldSpec& F);

// Monic irreducibles of each degree 1..maxdeg, found by trial-division
// sieving of all monic polynomials (no probabilistic tests).
std::vector<std::vector<Poly>> irreducibles_by_degree(const FieldSpec& F, int maxdeg);

// The Euler product over monic irreducibles P of (1 - 1/(|P|^s (|P|+1))),
// truncated at degree B with a rigorous tail bound.
struct EulerConstant {
  int s;
  int truncation_degree;  // B
  Rat product_exact;      // exact partial product over deg P <= B
  double value_product;   // double rendering of product_exact
  double tail_bound;      // |true value - partial product| <= tail_bound
};

// B is chosen adaptively as the smallest degree whose tail bound (from the
// prime-counting inequality #P_n <= q^n/n) is below tol; B is capped at 8,
// and an unreachable tol throws.
EulerConstant euler_product_P(int s, const FieldSpec& F, double tol);

// Mobius route to the same constant: the exact truncated sum
//   sum_{monic d, deg d <= g} mu(d)/|d|^s * prod_{P|d} 1/(|P|+1).
// Only s in {1, 4} is accepted.
Rat mobius_sum_P(int s, int g, const FieldSpec& F);

// The s-free Mobius sum sum_{deg d <= g} mu(d) prod_{P|d} 1/(|P|+1),
// bounded by g+1 in absolute value. Signed and absolute readings of the
// bound are both reported.
struct MobiusBound {
  Rat value;
  bool ok_abs;     // |value| <= g+1
  bool ok_signed;  // value <= g+1
};

MobiusBound mobius_bound_check(int g, const FieldSpec& F);

// Exact identity between the direct coprime-density sum and its Mobius form:
//   lhs = sum_{monic l, deg l = m} prod_{P|l} |P|/(|P|+1)
//   rhs = q^m * sum_{monic d, deg d <= m} mu(d)/|d| * prod_{P|d} 1/(|P|+1)
struct ProductIdentity {
  Rat lhs;
  Rat rhs;
  bool equal;
};

ProductIdentity mobius_product_identity(int m, const FieldSpec& F);

// Count of D in H_{2g+2} coprime to l, against the density main term
// q^(2g+2)/zeta_A(2) * prod_{P|l} |P|/(|P|+1).
struct CoprimeCount {
  std::uint64_t count;
  Rat main;
  Rat rel_err_exact;  // |count - main| / main
  double rel_err;
};

CoprimeCount squarefree_coprime_count(int g, const Poly& l, const FieldSpec& F);

}  // namespace k2lab
