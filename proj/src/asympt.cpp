#include "k2lab/asympt.hpp"

#include <cmath>
#include <stdexcept>

namespace k2lab {

Rat zeta_A(int s, const FieldSpec& F) {
  if (s < 2) throw std::domain_error("zeta_A: s must be >= 2 (pole at s=1)");
  // (1 - q^(1-s))^(-1) = q^(s-1) / (q^(s-1) - 1)
  Int p = int_pow(F.q, static_cast<unsigned long>(s - 1));
  Rat r(p, p - 1);
  r.canonicalize();
  return r;
}

std::vector<std::vector<Poly>> irreducibles_by_degree(const FieldSpec& F, int maxdeg) {
  std::vector<std::vector<Poly>> irr(static_cast<std::size_t>(maxdeg) + 1);
  for (int d = 1; d <= maxdeg; ++d) {
    for_each_monic(F.q, d, 0, monic_count(F.q, d), [&](const std::vector<std::int64_t>& c) {
      Poly f(F.q, c);
      for (int e = 1; 2 * e <= d; ++e)
        for (const Poly& p : irr[static_cast<std::size_t>(e)])
          if (divrem(f, p).second.is_zero()) return;
      irr[static_cast<std::size_t>(d)].push_back(std::move(f));
    });
  }
  return irr;
}

EulerConstant euler_product_P(int s, const FieldSpec& F, double tol) {
  if (s < 1) throw std::invalid_argument("euler_product_P: s must be >= 1");
  if (tol <= 0) throw std::invalid_argument("euler_product_P: tol must be positive");
  const std::int64_t q = F.q;
  constexpr int kMaxB = 8;

  // tail(B) = sum_{n > B} #P_n / (q^(ns) (q^n + 1))
  //        <= q^(-(B+1)s) / ((B+1) (1 - q^(-s)))   using #P_n <= q^n / n.
  const double qs = std::pow(static_cast<double>(q), -s);
  auto tail = [&](int B) {
    return std::pow(static_cast<double>(q), -static_cast<double>(s) * (B + 1)) /
           ((B + 1) * (1.0 - qs));
  };
  int B = 1;
  while (tail(B) >= tol) {
    if (++B > kMaxB) throw std::invalid_argument("euler_product_P: tol unreachable at degree cap 8");
  }

  auto irr = irreducibles_by_degree(F, B);
  Rat product(1);
  for (int d = 1; d <= B; ++d) {
    const unsigned long count = irr[static_cast<std::size_t>(d)].size();
    if (count == 0) continue;
    // factor for one prime of degree d: 1 - 1/(q^(sd) (q^d + 1))
    Int den = int_pow(q, static_cast<unsigned long>(s) * static_cast<unsigned long>(d)) *
              (int_pow(q, static_cast<unsigned long>(d)) + 1);
    Int num = den - 1;
    Int num_pow, den_pow;
    mpz_pow_ui(num_pow.get_mpz_t(), num.get_mpz_t(), count);
    mpz_pow_ui(den_pow.get_mpz_t(), den.get_mpz_t(), count);
    product *= Rat(num_pow, den_pow);
    product.canonicalize();
  }
  return EulerConstant{s, B, product, to_double(product), tail(B)};
}

namespace {

// mu(d) and prod_{P|d} 1/(|P|+1) in one factorization pass; zero mu means
// the caller skips the term.
struct MobiusData {
  int mu;
  Rat prime_factor;  // prod 1/(|P|+1)
};

MobiusData mobius_data(const Poly& d) {
  MobiusData out{1, Rat(1)};
  if (d.degree() == 0) return out;
  Factorization fac = factor(d);
  for (const auto& [p, mult] : fac.factors) {
    if (mult > 1) return MobiusData{0, Rat(0)};
    out.mu = -out.mu;
    out.prime_factor /= Rat(int_pow(p.q(), static_cast<unsigned long>(p.degree())) + 1);
  }
  out.prime_factor.canonicalize();
  return out;
}

}  // namespace

Rat mobius_sum_P(int s, int g, const FieldSpec& F) {
  if (s != 1 && s != 4) throw std::invalid_argument("mobius_sum_P: s must be 1 or 4");
  if (g < 0) throw std::invalid_argument("mobius_sum_P: negative g");
  Rat acc(0);
  for (int m = 0; m <= g; ++m) {
    for_each_monic(F.q, m, 0, monic_count(F.q, m), [&](const std::vector<std::int64_t>& c) {
      Poly d(F.q, c);
      MobiusData md = mobius_data(d);
      if (md.mu == 0) return;
      Rat term = md.prime_factor * rat_pow(F.q, -static_cast<long>(s) * m);
      acc += (md.mu > 0) ? term : -term;
    });
  }
  acc.canonicalize();
  return acc;
}

MobiusBound mobius_bound_check(int g, const FieldSpec& F) {
  if (g < 0) throw std::invalid_argument("mobius_bound_check: negative g");
  Rat acc(0);
  for (int m = 0; m <= g; ++m) {
    for_each_monic(F.q, m, 0, monic_count(F.q, m), [&](const std::vector<std::int64_t>& c) {
      Poly d(F.q, c);
      MobiusData md = mobius_data(d);
      if (md.mu == 0) return;
      acc += (md.mu > 0) ? md.prime_factor : -md.prime_factor;
    });
  }
  acc.canonicalize();
  const Rat bound(g + 1);
  return MobiusBound{acc, abs(acc) <= bound, acc <= bound};
}

ProductIdentity mobius_product_identity(int m, const FieldSpec& F) {
  if (m < 0) throw std::invalid_argument("mobius_product_identity: negative m");
  Rat lhs(0);
  for_each_monic(F.q, m, 0, monic_count(F.q, m), [&](const std::vector<std::int64_t>& c) {
    Poly l(F.q, c);
    Rat term(1);
    if (l.degree() > 0)
      for (const auto& [p, mult] : factor(l).factors) {
        (void)mult;
        Int np = int_pow(p.q(), static_cast<unsigned long>(p.degree()));
        term *= Rat(np, np + 1);
      }
    term.canonicalize();
    lhs += term;
  });
  lhs.canonicalize();
  Rat rhs = rat_pow(F.q, m) * mobius_sum_P(1, m, F);
  rhs.canonicalize();
  return ProductIdentity{lhs, rhs, lhs == rhs};
}

CoprimeCount squarefree_coprime_count(int g, const Poly& l, const FieldSpec& F) {
  if (l.is_zero()) throw std::invalid_argument("squarefree_coprime_count: l must be nonzero");
  if (g < 0) throw std::invalid_argument("squarefree_coprime_count: negative g");
  const int n = 2 * g + 2;
  std::uint64_t count = 0;
  for_each_monic(F.q, n, 0, monic_count(F.q, n), [&](const std::vector<std::int64_t>& c) {
    Poly d(F.q, c);
    if (!is_squarefree(d)) return;
    if (l.degree() == 0 || gcd(d, l).degree() == 0) ++count;
  });
  Rat main = rat_pow(F.q, n) / zeta_A(2, F);
  if (l.degree() > 0)
    for (const auto& [p, mult] : factor(l).factors) {
      (void)mult;
      Int np = int_pow(p.q(), static_cast<unsigned long>(p.degree()));
      main *= Rat(np, np + 1);
    }
  main.canonicalize();
  Rat rel = abs(Rat(static_cast<unsigned long>(count)) - main) / main;
  rel.canonicalize();
  return CoprimeCount{count, main, rel, to_double(rel)};
}

}  // namespace k2lab
