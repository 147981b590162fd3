#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "k2lab/ffield.hpp"
#include "k2lab/rational.hpp"

namespace k2lab {

// Dense polynomial over F_q, coefficients lowest degree first, highest
// stored coefficient nonzero. The zero polynomial has no coefficients and
// degree() == -1.
class Poly {
 public:
  explicit Poly(std::int64_t q) : q_(q) {}
  Poly(std::int64_t q, std::vector<std::int64_t> coeffs);

  static Poly constant(std::int64_t q, std::int64_t c);
  // c * T^degree
  static Poly monomial(std::int64_t q, int degree, std::int64_t c = 1);

  std::int64_t q() const { return q_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  // 0 beyond the degree (and for the zero polynomial).
  std::int64_t coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
  }
  std::int64_t leading() const { return c_.empty() ? 0 : c_.back(); }
  const std::vector<std::int64_t>& coeffs() const { return c_; }

  Poly scaled(std::int64_t c) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.q_ == b.q_ && a.c_ == b.c_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  // Degree, then enumeration order (a_0 weighted highest); total order used
  // for canonical factor lists.
  friend bool operator<(const Poly& a, const Poly& b);

  // Canonical text form "c0+c1*T+c2*T^2+..." with every coefficient listed.
  std::string to_string() const;
  // Accepts the canonical form plus minor freedoms (missing terms, any term
  // order, bare "T^k"); coefficients reduced mod q.
  static Poly parse(std::int64_t q, const std::string& text);

 private:
  std::int64_t q_;
  std::vector<std::int64_t> c_;
  void trim();
};

// Throws std::invalid_argument on mismatched fields or division by zero.
std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic (or zero for gcd(0,0))
Poly derivative(const Poly& f);
Int norm(const Poly& f);  // q^deg f, or 0 for the zero polynomial

// gcd(f, f') test with the characteristic-p caveat: nonconstant f with
// vanishing derivative is a p-th power, hence not square-free.
bool is_squarefree(const Poly& f);

// True iff f = h*h with h monic; non-monic input is never a perfect square
// under this convention. The witness (when requested and true) receives h.
bool is_perfect_square(const Poly& f, Poly* witness = nullptr);

// unit * prod factors[i].first ^ factors[i].second reconstructs the input;
// factors monic irreducible, pairwise distinct, in canonical order.
struct Factorization {
  std::int64_t q;
  std::int64_t unit;
  std::vector<std::pair<Poly, int>> factors;
  Poly reconstruct() const;
};

// Distinct-degree decomposition plus seeded equal-degree splitting; output
// order and the splitting seed are deterministic functions of f.
Factorization factor(const Poly& f);

bool is_irreducible(const Poly& f);

// 0 when not square-free, else (-1)^(number of distinct irreducible
// factors); evaluated on the monic normalization of f.
int mobius(const Poly& f);

// --- enumeration of monic polynomials -------------------------------------
//
// Index scheme: the monic f = T^n + a_{n-1}T^{n-1} + ... + a_0 has
// idx = sum_i a_i * q^(n-1-i), i.e. lexicographic in (a_0, ..., a_{n-1}).

std::uint64_t monic_count(std::int64_t q, int n);            // q^n
std::uint64_t monic_squarefree_count(std::int64_t q, int n); // q^n - q^(n-1) for n >= 2

Poly monic_by_index(std::int64_t q, int n, std::uint64_t idx);
std::uint64_t index_of_monic(const Poly& f);

// Streams coefficient vectors (size n+1, c[n] = 1) for idx in [begin, end)
// in index order without per-item allocation. visit sees the same buffer
// each call and must not retain it.
template <typename Visit>
void for_each_monic(std::int64_t q, int n, std::uint64_t begin, std::uint64_t end,
                    Visit&& visit) {
  if (begin >= end) return;
  std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
  c[static_cast<std::size_t>(n)] = 1;
  std::uint64_t idx = begin;
  for (int i = 0; i < n; ++i) {
    c[static_cast<std::size_t>(n - 1 - i)] =
        static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(q));
    idx /= static_cast<std::uint64_t>(q);
  }
  for (std::uint64_t k = begin; k < end; ++k) {
    visit(static_cast<const std::vector<std::int64_t>&>(c));
    // odometer: a_{n-1} carries the lowest index weight, so it moves fastest
    for (int i = n - 1; i >= 0; --i) {
      auto& d = c[static_cast<std::size_t>(i)];
      if (++d < q) break;
      d = 0;
    }
  }
}

std::vector<Poly> enumerate_monic(std::int64_t q, int n);
std::vector<Poly> enumerate_monic_squarefree(std::int64_t q, int n);

}  // namespace k2lab
