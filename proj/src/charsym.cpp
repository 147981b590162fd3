#include "k2lab/charsym.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <thread>

namespace k2lab {

namespace {

constexpr int kMaxSymbolDeg = 63;

// Core reciprocity loop on stack buffers. Computes (a / b) for monic b,
// destroying both buffers. half = (q-1)/2.
int jacobi_raw(std::int64_t* a, int da, std::int64_t* b, int db, std::int64_t q,
               std::int64_t half) {
  const bool half_odd = (half & 1) != 0;
  int sign = 1;
  for (;;) {
    if (db == 0) return sign;  // denominator is 1
    // reduce a mod b in place (b monic)
    for (int k = da - db; k >= 0; --k) {
      std::int64_t c = a[k + db];
      if (c == 0) continue;
      a[k + db] = 0;
      for (int i = 0; i < db; ++i) {
        std::int64_t v = (a[k + i] - c * b[i]) % q;
        a[k + i] = v < 0 ? v + q : v;
      }
    }
    int dr = db - 1;
    while (dr >= 0 && a[dr] == 0) --dr;
    if (dr < 0) return 0;  // shared irreducible factor
    std::int64_t lc = a[dr];
    if (lc != 1) {
      // (c*A / b) = legendre(c)^deg(b) * (A / b) for the monic part A
      if (db & 1) {
        std::int64_t r = 1;
        for (std::int64_t i = 0; i < half; ++i) r = r * lc % q;
        if (r != 1) sign = -sign;
      }
      std::int64_t inv = 1, x = lc;  // lc^(q-2)
      for (std::int64_t e = q - 2; e > 0; e >>= 1) {
        if (e & 1) inv = inv * x % q;
        x = x * x % q;
      }
      for (int i = 0; i <= dr; ++i) a[i] = a[i] * inv % q;
    }
    // reciprocity for monic A, b: (A/b)(b/A) = (-1)^(half * deg A * deg b)
    if (half_odd && (dr & 1) && (db & 1)) sign = -sign;
    std::swap(a, b);
    da = db;
    db = dr;
  }
}

// The scratch arrays are zero-filled past the copied coefficients: when the
// numerator has smaller degree than the denominator, jacobi_raw's leading-
// coefficient scan walks down from the denominator's degree.
int jacobi_buffers(const std::vector<std::int64_t>& num, const std::vector<std::int64_t>& den,
                   std::int64_t q, std::int64_t half) {
  std::int64_t a[kMaxSymbolDeg + 1] = {0}, b[kMaxSymbolDeg + 1] = {0};
  std::memcpy(a, num.data(), num.size() * sizeof(std::int64_t));
  std::memcpy(b, den.data(), den.size() * sizeof(std::int64_t));
  return jacobi_raw(a, static_cast<int>(num.size()) - 1, b,
                    static_cast<int>(den.size()) - 1, q, half);
}

void check_symbol_degrees(const Poly& a, const Poly& b) {
  if (a.degree() > kMaxSymbolDeg || b.degree() > kMaxSymbolDeg)
    throw std::invalid_argument("symbol evaluation: degree too large");
}

int residue_symbol_unchecked(const Poly& a, const Poly& P) {
  const std::int64_t q = P.q();
  Poly r = divrem(a, P).second;
  if (r.is_zero()) return 0;
  // Euler criterion in the residue field of size q^deg(P)
  std::uint64_t e = 1;
  for (int i = 0; i < P.degree(); ++i) e *= static_cast<std::uint64_t>(q);
  e = (e - 1) / 2;
  Poly acc = Poly::constant(q, 1);
  Poly base = r;
  while (e > 0) {
    if (e & 1) acc = divrem(acc * base, P).second;
    base = divrem(base * base, P).second;
    e >>= 1;
  }
  if (acc.degree() != 0)
    throw std::logic_error("residue_symbol: Euler criterion gave a non-constant");
  if (acc.coeff(0) == 1) return 1;
  if (acc.coeff(0) == q - 1) return -1;
  throw std::logic_error("residue_symbol: Euler criterion gave a non-sign");
}

// Number of threads that makes sense for `work` items.
int clamp_threads(int threads, std::uint64_t work) {
  if (threads < 1) threads = 1;
  if (work < 4096) return 1;
  return static_cast<int>(std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), work));
}

}  // namespace

Discriminant make_discriminant(const FieldSpec& F, Poly D, bool twisted) {
  if (D.q() != F.q) throw std::invalid_argument("discriminant: wrong field");
  if (D.is_zero()) throw std::invalid_argument("discriminant: zero polynomial");
  if (!D.is_monic()) throw std::invalid_argument("discriminant: not monic");
  if (!is_squarefree(D)) throw std::invalid_argument("discriminant: not square-free");
  return Discriminant{F, std::move(D), twisted};
}

Poly effective(const Discriminant& chi) {
  return chi.twisted ? chi.D.scaled(chi.F.gamma) : chi.D;
}

int residue_symbol(const Poly& a, const Poly& P) {
  if (P.is_zero() || !P.is_monic())
    throw std::invalid_argument("residue_symbol: modulus must be monic");
  if (!is_irreducible(P))
    throw std::invalid_argument("residue_symbol: modulus must be irreducible");
  if (a.q() != P.q()) throw std::invalid_argument("residue_symbol: field mismatch");
  return residue_symbol_unchecked(a, P);
}

int kronecker(const Discriminant& chi, const Poly& f) {
  if (f.is_zero() || !f.is_monic())
    throw std::invalid_argument("kronecker: f must be monic nonzero");
  if (f.q() != chi.F.q) throw std::invalid_argument("kronecker: field mismatch");
  if (f.degree() == 0) return 1;
  const Poly eff = effective(chi);
  int result = 1;
  for (const auto& [P, mult] : factor(f).factors) {
    int s = residue_symbol_unchecked(eff, P);
    if (s == 0) return 0;
    if (s == -1 && (mult & 1)) result = -result;
  }
  return result;
}

int jacobi_symbol(const Poly& a, const Poly& b, const FieldSpec& F) {
  if (b.is_zero() || !b.is_monic())
    throw std::invalid_argument("jacobi_symbol: denominator must be monic");
  if (a.q() != F.q || b.q() != F.q)
    throw std::invalid_argument("jacobi_symbol: field mismatch");
  if (b.degree() == 0) return 1;
  if (a.is_zero()) return 0;
  check_symbol_degrees(a, b);
  return jacobi_buffers(a.coeffs(), b.coeffs(), F.q, (F.q - 1) / 2);
}

int kronecker_fast(const Discriminant& chi, const Poly& f) {
  if (f.is_zero() || !f.is_monic())
    throw std::invalid_argument("kronecker_fast: f must be monic nonzero");
  if (f.q() != chi.F.q) throw std::invalid_argument("kronecker_fast: field mismatch");
  return jacobi_symbol(effective(chi), f, chi.F);
}

std::int64_t sigma(const Discriminant& chi, int n, int threads) {
  if (n < 0) throw std::invalid_argument("sigma: negative degree");
  const std::int64_t q = chi.F.q;
  const std::int64_t half = (q - 1) / 2;
  const Poly eff = effective(chi);
  check_symbol_degrees(eff, eff);
  const std::uint64_t total = monic_count(q, n);

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) -> std::int64_t {
    std::int64_t acc = 0;
    std::int64_t a[kMaxSymbolDeg + 1], b[kMaxSymbolDeg + 1];
    const auto& ec = eff.coeffs();
    for_each_monic(q, n, lo, hi, [&](const std::vector<std::int64_t>& fc) {
      std::memcpy(a, ec.data(), ec.size() * sizeof(std::int64_t));
      std::memcpy(b, fc.data(), fc.size() * sizeof(std::int64_t));
      acc += jacobi_raw(a, static_cast<int>(ec.size()) - 1, b,
                        static_cast<int>(fc.size()) - 1, q, half);
    });
    return acc;
  };

  const int t = clamp_threads(threads, total);
  if (t == 1) return run_range(0, total);
  std::vector<std::int64_t> partial(static_cast<std::size_t>(t), 0);
  std::vector<std::thread> pool;
  for (int i = 0; i < t; ++i) {
    const std::uint64_t lo = total * static_cast<std::uint64_t>(i) / static_cast<std::uint64_t>(t);
    const std::uint64_t hi =
        total * (static_cast<std::uint64_t>(i) + 1) / static_cast<std::uint64_t>(t);
    pool.emplace_back([&, i, lo, hi] { partial[static_cast<std::size_t>(i)] = run_range(lo, hi); });
  }
  for (auto& th : pool) th.join();
  std::int64_t acc = 0;
  for (auto v : partial) acc += v;
  return acc;
}

SigmaVector sigma_vector(const Discriminant& chi, int threads) {
  SigmaVector out;
  const int d = chi.D.degree();
  out.values.reserve(static_cast<std::size_t>(d));
  for (int n = 0; n < d; ++n) out.values.push_back(sigma(chi, n, threads));
  return out;
}

bool twist_relation_check(const FieldSpec& F, const Poly& D, int n, int threads) {
  Discriminant plain = make_discriminant(F, D, false);
  Discriminant twisted = make_discriminant(F, D, true);
  const std::int64_t lhs = sigma(twisted, n, threads);
  const std::int64_t rhs = sigma(plain, n, threads);
  return lhs == ((n & 1) ? -rhs : rhs);
}

CharsumStat nonsquare_charsum_stat(const FieldSpec& F, int g, int fmax_degree, int threads) {
  if (fmax_degree > 2 * g)
    throw std::invalid_argument("nonsquare_charsum_stat: fmax_degree exceeds 2g");
  const std::int64_t q = F.q;
  const std::int64_t half = (q - 1) / 2;
  std::vector<Poly> discs = enumerate_monic_squarefree(q, 2 * g + 2);

  // Collect the non-square f first so threads can split a flat list.
  std::vector<Poly> fs;
  for (int m = 1; m <= fmax_degree; ++m)
    for_each_monic(q, m, 0, monic_count(q, m), [&](const std::vector<std::int64_t>& c) {
      Poly f(q, c);
      if (!is_perfect_square(f)) fs.push_back(std::move(f));
    });

  CharsumStat out;
  out.rows.assign(fs.size(), CharsumRow{Poly(q), Int(0), 0.0});
  auto run_range = [&](std::size_t lo, std::size_t hi) {
    std::int64_t a[kMaxSymbolDeg + 1], b[kMaxSymbolDeg + 1];
    for (std::size_t i = lo; i < hi; ++i) {
      const Poly& f = fs[i];
      const auto& fc = f.coeffs();
      std::int64_t s = 0;
      for (const Poly& D : discs) {
        const auto& dc = D.coeffs();
        std::memcpy(a, dc.data(), dc.size() * sizeof(std::int64_t));
        std::memcpy(b, fc.data(), fc.size() * sizeof(std::int64_t));
        s += jacobi_raw(a, static_cast<int>(dc.size()) - 1, b,
                        static_cast<int>(fc.size()) - 1, q, half);
      }
      const double envelope =
          std::pow(static_cast<double>(q), g + 1 + f.degree() / 4.0);
      out.rows[i] = CharsumRow{f, Int(static_cast<long>(s)),
                               std::abs(static_cast<double>(s)) / envelope};
    }
  };

  const int t = clamp_threads(threads, fs.size() * discs.size());
  if (t == 1 || fs.empty()) {
    run_range(0, fs.size());
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) {
      const std::size_t lo = fs.size() * static_cast<std::size_t>(i) / static_cast<std::size_t>(t);
      const std::size_t hi =
          fs.size() * (static_cast<std::size_t>(i) + 1) / static_cast<std::size_t>(t);
      pool.emplace_back([&run_range, lo, hi] { run_range(lo, hi); });
    }
    for (auto& th : pool) th.join();
  }

  out.max_ratio = 0.0;
  out.max_ratio_pow4 = Rat(0);
  for (const auto& row : out.rows) {
    Int s4 = row.sum * row.sum;
    s4 = s4 * s4;
    Rat r4(s4, int_pow(q, static_cast<unsigned long>(4 * g + 4 + row.f.degree())));
    r4.canonicalize();
    if (r4 > out.max_ratio_pow4) {
      out.max_ratio_pow4 = r4;
      out.max_ratio = row.ratio;
    }
  }
  return out;
}

}  // namespace k2lab
