#pragma once

#include <cstdint>
#include <vector>

#include "k2lab/ffield.hpp"
#include "k2lab/polyring.hpp"
#include "k2lab/rational.hpp"

namespace k2lab {

// A quadratic character datum: untwisted chi_D for monic square-free D, or
// the twisted character of gamma*D (same degree, non-square leading
// coefficient) when twisted is set.
struct Discriminant {
  FieldSpec F;
  Poly D;
  bool twisted;
};

// Validates D (monic, square-free, nonzero, over F.q).
Discriminant make_discriminant(const FieldSpec& F, Poly D, bool twisted);

// The polynomial whose residue symbols the character takes: D or gamma*D.
Poly effective(const Discriminant& chi);

// Quadratic residue symbol of a modulo the monic irreducible P, by Euler's
// criterion a^((|P|-1)/2) mod P. Rejects reducible or non-monic P.
int residue_symbol(const Poly& a, const Poly& P);

// chi(f) for monic f via the factorization of f (the slow reference route).
int kronecker(const Discriminant& chi, const Poly& f);

// Same contract, evaluated by quadratic reciprocity without factoring.
int kronecker_fast(const Discriminant& chi, const Poly& f);

// Reciprocity core: symbol (a / b) for monic b, arbitrary nonzero a over the
// same field. Exposed for the dual-oracle agreement tests.
int jacobi_symbol(const Poly& a, const Poly& b, const FieldSpec& F);

// sigma_n = sum of chi(f) over all monic f of degree n (exact).
std::int64_t sigma(const Discriminant& chi, int n, int threads = 1);

// sigma_0 .. sigma_{deg D - 1}; sigma_0 = 1 and |sigma_n| <= q^n.
struct SigmaVector {
  std::vector<std::int64_t> values;
};

SigmaVector sigma_vector(const Discriminant& chi, int threads = 1);

// sigma_n of the twisted character equals (-1)^n times the untwisted one;
// checked by evaluating both sides independently.
bool twist_relation_check(const FieldSpec& F, const Poly& D, int n, int threads = 1);

// One table row of the non-square character sum statistic: f, the exact sum
// S_f over D in H_{2g+2}, and |S_f| / (q^(g+1) * q^(deg f / 4)).
struct CharsumRow {
  Poly f;
  Int sum;
  double ratio;
};

struct CharsumStat {
  std::vector<CharsumRow> rows;
  double max_ratio;
  Rat max_ratio_pow4;  // exact fourth power of max_ratio
};

// Exact S_f for every non-square monic f with 1 <= deg f <= fmax_degree
// (fmax_degree <= 2g), summed over all of H_{2g+2}.
CharsumStat nonsquare_charsum_stat(const FieldSpec& F, int g, int fmax_degree,
                                   int threads = 1);

}  // namespace k2lab
