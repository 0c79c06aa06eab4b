#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's normal forms: finite groups are enumerated element by element and
// matrix invariants come from minors and fraction-free elimination.

#include "mvkit/group.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using mvkit::Integer;
using mvkit::IntMatrix;
using Elem = std::vector<long>;

/// Cofactor expansion; only for small matrices.
inline Integer det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Integer total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cols.push_back(c);
    Integer minor = det(m.select_rows(1, n).select_cols(cols));
    total += (j % 2 ? -1 : 1) * m(0, j) * minor;
  }
  return total;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

/// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1},
/// D_k = gcd of all k x k minors. Returns the nonzero ones.
inline std::vector<Integer> invariant_factors(const IntMatrix& m) {
  std::vector<Integer> out;
  Integer prev = 1;
  for (std::size_t k = 1; k <= std::min(m.rows(), m.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(m.rows(), k, 0, cur, rs);
    subsets(m.cols(), k, 0, cur, cs);
    Integer g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        Integer d = det(m.select_rows(r).select_cols(c));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

/// Rank by Bareiss elimination.
inline std::size_t rank(IntMatrix a) {
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      for (std::size_t j = c + 1; j < a.cols(); ++j)
        a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

/// Element enumeration for a finite group in canonical coordinates.
struct Finite {
  std::vector<long> mods;

  explicit Finite(const mvkit::FgGroup& g) {
    for (const auto& d : g.invariants()) mods.push_back(d.get_si());
  }
  std::size_t order() const {
    std::size_t n = 1;
    for (long d : mods) n *= static_cast<std::size_t>(d);
    return n;
  }
  std::vector<Elem> elements() const {
    std::vector<Elem> out{Elem(mods.size(), 0)};
    for (std::size_t j = 0; j < mods.size(); ++j) {
      std::vector<Elem> next;
      for (const auto& e : out)
        for (long v = 0; v < mods[j]; ++v) {
          Elem x = e;
          x[j] = v;
          next.push_back(x);
        }
      out = std::move(next);
    }
    return out;
  }
  Elem reduce(Elem x) const {
    for (std::size_t j = 0; j < mods.size(); ++j) x[j] = ((x[j] % mods[j]) + mods[j]) % mods[j];
    return x;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem x(mods.size());
    for (std::size_t j = 0; j < mods.size(); ++j) x[j] = a[j] + b[j];
    return reduce(x);
  }
};

/// Image of x under the matrix of h, reduced in the target.
inline Elem apply(const mvkit::Hom& h, const Elem& x) {
  Finite t(h.tgt());
  Elem y(t.mods.size(), 0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    Integer s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += h.matrix()(i, j) * x[j];
    s %= t.mods[i];
    y[i] = s.get_si();
  }
  return t.reduce(y);
}

/// Well-definedness by brute force: the map respects every relation d_j e_j.
inline bool well_defined(const mvkit::Hom& h) {
  Finite s(h.src());
  Finite t(h.tgt());
  for (std::size_t j = 0; j < s.mods.size(); ++j) {
    Elem x(s.mods.size(), 0);
    x[j] = s.mods[j];
    Elem y = oracle::apply(h, x);
    if (std::any_of(y.begin(), y.end(), [](long v) { return v != 0; })) return false;
  }
  return true;
}

inline std::set<Elem> image(const mvkit::Hom& h) {
  std::set<Elem> out;
  for (const auto& x : Finite(h.src()).elements()) out.insert(oracle::apply(h, x));
  return out;
}

inline std::set<Elem> kernel(const mvkit::Hom& h) {
  std::set<Elem> out;
  const Elem zero(Finite(h.tgt()).mods.size(), 0);
  for (const auto& x : Finite(h.src()).elements())
    if (oracle::apply(h, x) == zero) out.insert(x);
  return out;
}

inline bool exact_at(const mvkit::Hom& in, const mvkit::Hom& out) {
  return oracle::image(in) == oracle::kernel(out);
}

inline bool injective(const mvkit::Hom& h) { return oracle::kernel(h).size() == 1; }
inline bool surjective(const mvkit::Hom& h) { return oracle::image(h).size() == Finite(h.tgt()).order(); }

/// Elements of a subgroup, inside its ambient group.
inline std::set<Elem> subgroup(const mvkit::Subgroup& s) { return oracle::image(s.incl()); }

/// Size of the pullback {(b, c) : f b = g c}.
inline std::size_t pullback_order(const mvkit::Hom& f, const mvkit::Hom& g) {
  std::size_t n = 0;
  const auto cs = Finite(g.src()).elements();
  std::vector<Elem> gc;
  for (const auto& c : cs) gc.push_back(oracle::apply(g, c));
  for (const auto& b : Finite(f.src()).elements()) {
    Elem fb = oracle::apply(f, b);
    n += static_cast<std::size_t>(std::count(gc.begin(), gc.end(), fb));
  }
  return n;
}

/// Size of the pushout (B + C) / {(f a, -g a)}.
inline std::size_t pushout_order(const mvkit::Hom& f, const mvkit::Hom& g) {
  std::set<std::pair<Elem, Elem>> rel;
  Finite c(g.tgt());
  for (const auto& a : Finite(f.src()).elements()) {
    Elem ga = oracle::apply(g, a);
    for (auto& v : ga) v = -v;
    rel.insert({oracle::apply(f, a), c.reduce(ga)});
  }
  return Finite(f.tgt()).order() * c.order() / rel.size();
}

inline bool small(const mvkit::FgGroup& g, std::size_t cap = 4096) {
  return g.is_finite() && Finite(g).order() <= cap;
}

}  // namespace oracle
