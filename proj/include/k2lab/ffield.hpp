#pragma once

#include <cstdint>

namespace k2lab {

// Residue in [0, q); reduced by the operations that produce it.
using FieldElement = std::int64_t;

// The prime field F_q with a fixed generator gamma of the unit group.
// Invariants: q odd prime >= 5; gamma has multiplicative order q-1 (hence is
// a non-square).
struct FieldSpec {
  std::int64_t q;
  FieldElement gamma;
};

bool is_prime(std::int64_t n);

// Multiplicative order of a in F_q^*; a must be nonzero mod q.
std::int64_t element_order(std::int64_t a, std::int64_t q);

// Builds a FieldSpec with the smallest-integer generator, or with
// gamma_override (must itself generate F_q^*) when nonzero. Rejects even,
// too-small, and composite q with distinct diagnostics.
FieldSpec make_field(std::int64_t q, std::int64_t gamma_override = 0);

// Euler's criterion on the constant a: 0 for a = 0, +1 for nonzero squares,
// -1 for non-squares.
int legendre_const(FieldElement a, const FieldSpec& F);

std::int64_t mod_pow(std::int64_t a, std::int64_t e, std::int64_t q);
std::int64_t mod_inv(std::int64_t a, std::int64_t q);

}  // namespace k2lab
