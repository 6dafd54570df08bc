#ifndef MVKIT_TESTS_ORACLES_HPP
#define MVKIT_TESTS_ORACLES_HPP

// Test-only oracles, deliberately independent of the library's dispatch and
// search algorithms: a plain integer-pair lex calculator, subset-scan ideal
// enumeration, brute-force order bounds.

#include <optional>
#include <set>
#include <vector>

#include "mvkit/mvkit.hpp"

namespace oracle {

// --- Z x_lex Z with unit (k, 0), computed on plain long longs -------------

struct ZZ {
  long long a = 0, b = 0;
  bool operator==(const ZZ &o) const { return a == o.a && b == o.b; }
};

inline int zz_cmp(ZZ x, ZZ y) {
  if (x.a != y.a)
    return x.a < y.a ? -1 : 1;
  if (x.b != y.b)
    return x.b < y.b ? -1 : 1;
  return 0;
}

inline ZZ zz_add(ZZ x, ZZ y) { return {x.a + y.a, x.b + y.b}; }
inline ZZ zz_neg(ZZ x) { return {-x.a, -x.b}; }
inline ZZ zz_min(ZZ x, ZZ y) { return zz_cmp(x, y) <= 0 ? x : y; }
inline ZZ zz_max(ZZ x, ZZ y) { return zz_cmp(x, y) <= 0 ? y : x; }
inline ZZ zz_abs(ZZ x) { return zz_max(x, zz_neg(x)); }

// truncated interval operations on [0, (k,0)]
inline ZZ zz_mv_plus(long long k, ZZ x, ZZ y) { return zz_min({k, 0}, zz_add(x, y)); }
inline ZZ zz_mv_neg(long long k, ZZ x) { return {k - x.a, -x.b}; }
inline ZZ zz_mv_minus(long long k, ZZ x, ZZ y) {
  // x (-) y = ~(~x (+) y)
  return zz_mv_neg(k, zz_mv_plus(k, zz_mv_neg(k, x), y));
}

inline mvkit::MvElem zz_elem(ZZ x) {
  return mvkit::m_group(mvkit::g_tuple({mvkit::g_int(x.a), mvkit::g_int(x.b)}));
}

// --- subset-scan ideal enumeration (independent of the closure search) ----

inline std::vector<std::set<std::size_t>> subset_ideals(const mvkit::MvAlgebraDesc &A) {
  auto carrier = *mvkit::finite_carrier(A, 64);
  std::size_t n = carrier.size();
  if (n > 14)
    throw std::runtime_error("subset oracle is for small algebras");
  std::vector<std::set<std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1)
        s.insert(i);
    // laws checked directly with the element operations
    bool ok = false;
    for (std::size_t i = 0; i < n; ++i)
      if (s.count(i) && carrier[i] == mvkit::mv_zero(A))
        ok = true;
    for (std::size_t i : s)
      for (std::size_t j : s) {
        if (!ok)
          break;
        auto p = mvkit::mv_plus(A, carrier[i], carrier[j]);
        bool found = false;
        for (std::size_t t : s)
          if (carrier[t] == p)
            found = true;
        ok = ok && found;
      }
    for (std::size_t i : s)
      for (std::size_t j = 0; j < n && ok; ++j)
        if (!s.count(j) && mvkit::mv_leq(A, carrier[j], carrier[i]))
          ok = false;
    if (ok)
      out.push_back(std::move(s));
  }
  return out;
}

// --- brute-force least upper bound under mv_leq ----------------------------

inline std::optional<mvkit::MvElem> brute_lub(const mvkit::MvAlgebraDesc &A,
                                              const std::vector<mvkit::MvElem> &carrier,
                                              const mvkit::MvElem &x,
                                              const mvkit::MvElem &y) {
  std::optional<mvkit::MvElem> best;
  for (const auto &c : carrier) {
    if (!mvkit::mv_leq(A, x, c) || !mvkit::mv_leq(A, y, c))
      continue;
    if (!best || mvkit::mv_leq(A, c, *best))
      best = c;
  }
  // confirm it is below every upper bound
  if (best)
    for (const auto &c : carrier)
      if (mvkit::mv_leq(A, x, c) && mvkit::mv_leq(A, y, c) && !mvkit::mv_leq(A, *best, c))
        return std::nullopt;
  return best;
}

inline std::optional<mvkit::MvElem> brute_glb(const mvkit::MvAlgebraDesc &A,
                                              const std::vector<mvkit::MvElem> &carrier,
                                              const mvkit::MvElem &x,
                                              const mvkit::MvElem &y) {
  std::optional<mvkit::MvElem> best;
  for (const auto &c : carrier) {
    if (!mvkit::mv_leq(A, c, x) || !mvkit::mv_leq(A, c, y))
      continue;
    if (!best || mvkit::mv_leq(A, *best, c))
      best = c;
  }
  if (best)
    for (const auto &c : carrier)
      if (mvkit::mv_leq(A, c, x) && mvkit::mv_leq(A, c, y) && !mvkit::mv_leq(A, c, *best))
        return std::nullopt;
  return best;
}

// --- order of an element by iterated truncated sums ------------------------

inline std::optional<long long> ord_iterate(const mvkit::MvAlgebraDesc &A,
                                            const mvkit::MvElem &x, long long bound) {
  mvkit::MvElem one = mvkit::mv_one(A);
  mvkit::MvElem acc = mvkit::mv_zero(A);
  for (long long n = 1; n <= bound; ++n) {
    acc = mvkit::mv_plus(A, acc, x);
    if (acc == one)
      return n;
  }
  return std::nullopt;
}

} // namespace oracle

#endif
