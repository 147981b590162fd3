#include "k2lab/polyring.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <stdexcept>

namespace k2lab {

namespace {

void check_same_field(const Poly& a, const Poly& b) {
  if (a.q() != b.q())
    throw std::invalid_argument("polynomials over different fields");
}

std::int64_t reduce(std::int64_t v, std::int64_t q) {
  v %= q;
  return v < 0 ? v + q : v;
}

}  // namespace

Poly::Poly(std::int64_t q, std::vector<std::int64_t> coeffs) : q_(q), c_(std::move(coeffs)) {
  if (q_ < 2) throw std::invalid_argument("Poly: bad modulus");
  for (auto& v : c_) v = reduce(v, q_);
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(std::int64_t q, std::int64_t c) { return Poly(q, {c}); }

Poly Poly::monomial(std::int64_t q, int degree, std::int64_t c) {
  if (degree < 0) throw std::invalid_argument("monomial: negative degree");
  std::vector<std::int64_t> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return Poly(q, std::move(v));
}

Poly Poly::scaled(std::int64_t c) const {
  std::vector<std::int64_t> v = c_;
  for (auto& x : v) x = reduce(x * reduce(c, q_), q_);
  return Poly(q_, std::move(v));
}

Poly operator+(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  std::vector<std::int64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = reduce(a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i)), a.q_);
  return Poly(a.q_, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  std::vector<std::int64_t> v(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = reduce(a.coeff(static_cast<int>(i)) - b.coeff(static_cast<int>(i)), a.q_);
  return Poly(a.q_, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.q_);
  std::vector<std::int64_t> v(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      v[i + j] = (v[i + j] + a.c_[i] * b.c_[j]) % a.q_;
  }
  return Poly(a.q_, std::move(v));
}

bool operator<(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  // a_0 carries the highest index weight; leading coefficients break ties
  // for non-monic operands.
  for (int i = 0; i <= a.degree(); ++i)
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  return false;
}

std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  if (b.is_zero()) throw std::invalid_argument("divrem: division by zero polynomial");
  const std::int64_t q = a.q();
  if (a.degree() < b.degree()) return {Poly(q), a};
  std::vector<std::int64_t> r = a.coeffs();
  std::vector<std::int64_t> quo(static_cast<std::size_t>(a.degree() - b.degree()) + 1, 0);
  const std::int64_t inv_lc = mod_inv(b.leading(), q);
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    std::int64_t c = reduce(r[static_cast<std::size_t>(k + b.degree())] * inv_lc, q);
    quo[static_cast<std::size_t>(k)] = c;
    if (c == 0) continue;
    for (int i = 0; i <= b.degree(); ++i) {
      auto& ri = r[static_cast<std::size_t>(k + i)];
      ri = reduce(ri - c * b.coeff(i), q);
    }
  }
  return {Poly(q, std::move(quo)), Poly(q, std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
  check_same_field(a, b);
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divrem(x, y).second;
    x = y;
    y = r;
  }
  if (!x.is_zero() && x.leading() != 1) x = x.scaled(mod_inv(x.leading(), x.q()));
  return x;
}

Poly derivative(const Poly& f) {
  if (f.degree() <= 0) return Poly(f.q());
  std::vector<std::int64_t> v(static_cast<std::size_t>(f.degree()), 0);
  for (int i = 1; i <= f.degree(); ++i)
    v[static_cast<std::size_t>(i - 1)] = (f.coeff(i) * (i % f.q())) % f.q();
  return Poly(f.q(), std::move(v));
}

Int norm(const Poly& f) {
  if (f.is_zero()) return Int(0);
  return int_pow(f.q(), static_cast<unsigned long>(f.degree()));
}

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("is_squarefree: zero polynomial");
  if (f.degree() == 0) return true;
  Poly d = derivative(f);
  if (d.is_zero()) return false;  // p-th power in characteristic p
  return gcd(f, d).degree() == 0;
}

bool is_perfect_square(const Poly& f, Poly* witness) {
  if (f.is_zero()) throw std::invalid_argument("is_perfect_square: zero polynomial");
  if (!f.is_monic() || f.degree() % 2 != 0) return false;
  const std::int64_t q = f.q();
  const int k = f.degree() / 2;
  // Solve h^2 = f for monic h top-down: the T^(k+i) coefficient of h^2 is
  // 2 h_i + sum of already-known products, and 2 is invertible.
  std::vector<std::int64_t> h(static_cast<std::size_t>(k) + 1, 0);
  h[static_cast<std::size_t>(k)] = 1;
  const std::int64_t inv2 = mod_inv(2, q);
  for (int i = k - 1; i >= 0; --i) {
    std::int64_t acc = 0;
    for (int a = i + 1; a < k; ++a) {
      int b = k + i - a;
      if (b <= i || b >= k || b < a) continue;  // each unordered pair once
      acc = (acc + (a == b ? h[static_cast<std::size_t>(a)] * h[static_cast<std::size_t>(a)]
                           : 2 * h[static_cast<std::size_t>(a)] * h[static_cast<std::size_t>(b)])) %
            q;
    }
    h[static_cast<std::size_t>(i)] = reduce((f.coeff(k + i) - acc) * inv2, q);
  }
  Poly hp(q, h);
  if (hp * hp != f) return false;
  if (witness) *witness = hp;
  return true;
}

Poly Factorization::reconstruct() const {
  Poly r = Poly::constant(q, unit);
  for (const auto& [p, m] : factors)
    for (int i = 0; i < m; ++i) r = r * p;
  return r;
}

namespace {

Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
  Poly r = Poly::constant(base.q(), 1);
  Poly b = divrem(base, mod).second;
  while (e > 0) {
    if (e & 1) r = divrem(r * b, mod).second;
    b = divrem(b * b, mod).second;
    e >>= 1;
  }
  return r;
}

std::uint64_t u64_pow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// p-th root of f in F_p[T] when f' = 0: coefficients live on multiples of p
// and c -> c is the Frobenius inverse on the prime field.
Poly pth_root(const Poly& f) {
  const std::int64_t q = f.q();
  std::vector<std::int64_t> v(static_cast<std::size_t>(f.degree() / q) + 1, 0);
  for (int i = 0; i <= f.degree(); i += static_cast<int>(q))
    v[static_cast<std::size_t>(i / q)] = f.coeff(i);
  return Poly(q, std::move(v));
}

// Square-free decomposition of monic f: list of (square-free part, mult).
void squarefree_parts(const Poly& f, int outer_mult,
                      std::vector<std::pair<Poly, int>>& out) {
  const std::int64_t q = f.q();
  Poly d = derivative(f);
  if (d.is_zero()) {
    squarefree_parts(pth_root(f), outer_mult * static_cast<int>(q), out);
    return;
  }
  Poly c = gcd(f, d);
  Poly w = divrem(f, c).first;
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = divrem(w, y).first;
    if (z.degree() > 0) out.emplace_back(z, i * outer_mult);
    ++i;
    w = y;
    c = divrem(c, y).first;
  }
  // Residual c collects the factors whose multiplicity is divisible by the
  // characteristic; it is a p-th power.
  if (c.degree() > 0)
    squarefree_parts(pth_root(c), outer_mult * static_cast<int>(q), out);
}

std::uint64_t fnv1a_poly(const Poly& f) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(f.q()));
  mix(static_cast<std::uint64_t>(f.degree() + 1));
  for (auto c : f.coeffs()) mix(static_cast<std::uint64_t>(c));
  return h;
}

// Cantor-Zassenhaus equal-degree splitting of g into irreducibles of degree d.
void equal_degree_split(const Poly& g, int d, std::mt19937_64& rng,
                        std::vector<Poly>& out) {
  const std::int64_t q = g.q();
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const std::uint64_t e = (u64_pow(static_cast<std::uint64_t>(q), static_cast<unsigned>(d)) - 1) / 2;
  for (;;) {
    std::vector<std::int64_t> rc(static_cast<std::size_t>(g.degree()), 0);
    for (auto& c : rc) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
    Poly r(q, std::move(rc));
    if (r.degree() < 1) continue;
    Poly h = powmod(r, e, g) - Poly::constant(q, 1);
    Poly u = gcd(h, g);
    if (u.degree() > 0 && u.degree() < g.degree()) {
      equal_degree_split(u, d, rng, out);
      equal_degree_split(divrem(g, u).first, d, rng, out);
      return;
    }
  }
}

// Distinct-degree decomposition of square-free monic g.
void distinct_degree_factor(const Poly& g_in, std::mt19937_64& rng,
                            std::vector<Poly>& out) {
  const std::int64_t q = g_in.q();
  Poly g = g_in;
  Poly x = Poly::monomial(q, 1);
  Poly h = x;  // T^(q^d) mod g, advanced one d per round
  for (int d = 1; g.degree() >= 2 * d; ++d) {
    h = powmod(h, static_cast<std::uint64_t>(q), g);
    Poly block = gcd(h - x, g);
    if (block.degree() > 0) {
      equal_degree_split(block, d, rng, out);
      g = divrem(g, block).first;
      h = divrem(h, g).second;
    }
  }
  if (g.degree() > 0) out.push_back(g);
}

}  // namespace

Factorization factor(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("factor: zero polynomial");
  const std::int64_t q = f.q();
  Factorization out{q, f.leading(), {}};
  if (f.degree() == 0) return out;
  Poly monic = f.leading() == 1 ? f : f.scaled(mod_inv(f.leading(), q));

  // Splitting seed is a pure function of the input, so factor() is
  // deterministic no matter the call order.
  std::mt19937_64 rng(fnv1a_poly(monic) ^ 0x6b326c6162ULL);

  std::vector<std::pair<Poly, int>> parts;
  squarefree_parts(monic, 1, parts);
  for (const auto& [part, mult] : parts) {
    std::vector<Poly> irred;
    distinct_degree_factor(part, rng, irred);
    for (auto& p : irred) out.factors.emplace_back(std::move(p), mult);
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  Factorization fac = factor(f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

int mobius(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("mobius: zero polynomial");
  if (f.degree() == 0) return 1;
  if (!is_squarefree(f)) return 0;
  Factorization fac = factor(f);
  return fac.factors.size() % 2 == 0 ? 1 : -1;
}

std::uint64_t monic_count(std::int64_t q, int n) {
  if (n < 0) throw std::invalid_argument("monic_count: negative degree");
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) r *= static_cast<std::uint64_t>(q);
  return r;
}

std::uint64_t monic_squarefree_count(std::int64_t q, int n) {
  if (n < 2) return monic_count(q, n);
  return monic_count(q, n) - monic_count(q, n - 1);
}

Poly monic_by_index(std::int64_t q, int n, std::uint64_t idx) {
  if (idx >= monic_count(q, n)) throw std::invalid_argument("monic_by_index: index out of range");
  std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1, 0);
  c[static_cast<std::size_t>(n)] = 1;
  for (int i = n - 1; i >= 0; --i) {
    c[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(q));
    idx /= static_cast<std::uint64_t>(q);
  }
  return Poly(q, std::move(c));
}

std::uint64_t index_of_monic(const Poly& f) {
  if (!f.is_monic()) throw std::invalid_argument("index_of_monic: not monic");
  std::uint64_t idx = 0;
  for (int i = 0; i < f.degree(); ++i)
    idx = idx * static_cast<std::uint64_t>(f.q()) + static_cast<std::uint64_t>(f.coeff(i));
  return idx;
}

std::vector<Poly> enumerate_monic(std::int64_t q, int n) {
  std::vector<Poly> out;
  out.reserve(monic_count(q, n));
  for_each_monic(q, n, 0, monic_count(q, n),
                 [&](const std::vector<std::int64_t>& c) { out.emplace_back(q, c); });
  return out;
}

std::vector<Poly> enumerate_monic_squarefree(std::int64_t q, int n) {
  std::vector<Poly> out;
  for_each_monic(q, n, 0, monic_count(q, n), [&](const std::vector<std::int64_t>& c) {
    Poly f(q, c);
    if (is_squarefree(f)) out.push_back(std::move(f));
  });
  return out;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = 0; i <= degree(); ++i) {
    if (i > 0) out += '+';
    if (i == 0)
      out += std::to_string(coeff(0));
    else if (i == 1)
      out += std::to_string(coeff(1)) + "*T";
    else
      out += std::to_string(coeff(i)) + "*T^" + std::to_string(i);
  }
  return out;
}

Poly Poly::parse(std::int64_t q, const std::string& text) {
  std::vector<std::int64_t> coeffs;
  auto put = [&](int deg, std::int64_t v) {
    if (deg >= static_cast<int>(coeffs.size())) coeffs.resize(static_cast<std::size_t>(deg) + 1, 0);
    coeffs[static_cast<std::size_t>(deg)] += v;
  };
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("parse: empty polynomial text");
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t next = s.find('+', pos);
    if (next == std::string::npos) next = s.size();
    std::string term = s.substr(pos, next - pos);
    pos = next + 1;
    if (term.empty()) throw std::invalid_argument("parse: empty term");
    std::int64_t c = 1;
    int deg = 0;
    std::size_t star = term.find('*');
    std::string cpart, tpart;
    if (star != std::string::npos) {
      cpart = term.substr(0, star);
      tpart = term.substr(star + 1);
    } else if (term[0] == 'T') {
      tpart = term;
    } else {
      cpart = term;
    }
    if (!cpart.empty()) {
      std::size_t used = 0;
      c = std::stoll(cpart, &used);
      if (used != cpart.size()) throw std::invalid_argument("parse: bad coefficient in '" + term + "'");
    }
    if (!tpart.empty()) {
      if (tpart == "T")
        deg = 1;
      else if (tpart.rfind("T^", 0) == 0) {
        std::size_t used = 0;
        deg = std::stoi(tpart.substr(2), &used);
        if (used != tpart.size() - 2 || deg < 0)
          throw std::invalid_argument("parse: bad exponent in '" + term + "'");
      } else {
        throw std::invalid_argument("parse: bad term '" + term + "'");
      }
    }
    put(deg, c);
  }
  return Poly(q, std::move(coeffs));
}

}  // namespace k2lab
