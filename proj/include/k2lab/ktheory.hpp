#pragma once

#include "k2lab/charsym.hpp"
#include "k2lab/rational.hpp"

namespace k2lab {

enum class K2Parity { odd, even_twisted };

// Order of the K2 group of the quadratic order attached to m; always a
// positive integer (it is a group order, and the constructors enforce it).
struct K2Size {
  Int value;
  int m_degree;
  K2Parity parity;
};

// Odd degree M: #K2 = q^(3(M-1)/2) * L(2, chi_m). The half-integer powers
// of q in the source formula pair up, so only integer powers appear here.
K2Size k2_size_odd(const Poly& m, const FieldSpec& F, int threads = 1);

// Even degree 2g+2 with the twist by gamma (non-square leading coefficient):
// #K2 = q^(3(g+1)) * (q+1) / (q (q^2+1)) * L(2, chi_{gamma D}).
K2Size k2_size_even_twisted(const Poly& D, const FieldSpec& F, int threads = 1);

}  // namespace k2lab
