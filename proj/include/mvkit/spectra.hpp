#ifndef MVKIT_SPECTRA_HPP
#define MVKIT_SPECTRA_HPP

// Ideal enumeration, prime and maximal spectra, radical, quotients, order,
// infinitesimals and the classification predicates (chain / simple /
// semisimple / local / perfect).
//
// Finite algebras are handled exhaustively on compiled Cayley tables with
// ideals as 64-bit masks (the enumeration cap defaults to 64 elements).
// The structured infinite algebras (the [0,1] rationals, gamma images of
// lex towers with unit (k,0,...,0), quasi-constant and function algebras
// over such) are handled through a closed catalog of symbolic ideals; every
// catalog answer is law-checked by sampling in the test suite. Shapes
// outside the catalog are rejected, not guessed.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mvkit/algebra.hpp"
#include "mvkit/axioms.hpp"
#include "mvkit/sampling.hpp"

namespace mvkit {

inline constexpr std::size_t kDefaultIdealCap = 64;

// ---------------------------------------------------------------------------
// Shape catalog
// ---------------------------------------------------------------------------

namespace detail {

/// Gamma over a pure lex tower of depth >= 2 with unit (k, 0, ..., 0).
struct LexGammaShape {
  bool head_is_int = true;
  Rat unit_head;      // k > 0
  std::size_t depth = 0;
};

inline std::optional<LexGammaShape> lex_gamma_shape(const MvAlgebraDesc &A) {
  if (A.kind != MvAlgebraDesc::Kind::Gamma)
    return std::nullopt;
  auto kinds = flatten_lex_kinds(*A.group);
  if (!kinds || kinds->size() < 2)
    return std::nullopt;
  std::vector<Rat> u;
  flatten_lex_elem(*A.group, *A.unit, u);
  if (!(u[0] > Rat(0)))
    return std::nullopt;
  for (std::size_t i = 1; i < u.size(); ++i)
    if (!(u[i] == Rat(0)))
      return std::nullopt;
  LexGammaShape s;
  s.head_is_int = (*kinds)[0] == OrderedGroupDesc::Kind::Integers;
  s.unit_head = u[0];
  s.depth = kinds->size();
  return s;
}

/// Gamma over a single archimedean rational leaf (isomorphic to [0,1] over Q).
inline bool is_rational_interval_shape(const MvAlgebraDesc &A) {
  if (A.kind == MvAlgebraDesc::Kind::UnitIntervalQ)
    return true;
  if (A.kind != MvAlgebraDesc::Kind::Gamma)
    return false;
  auto kinds = flatten_lex_kinds(*A.group);
  return kinds && kinds->size() == 1 &&
         (*kinds)[0] == OrderedGroupDesc::Kind::Rationals;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Finite ideal enumeration
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t ideal_closure_from(const CompiledFinite &cf, std::uint16_t seed) {
  std::uint64_t mask = 0;
  for (std::uint16_t y = 0; y < cf.n; ++y)
    if (cf.leq(y, seed))
      mask |= std::uint64_t(1) << y;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint16_t i = 0; i < cf.n; ++i) {
      if (!(mask >> i & 1))
        continue;
      for (std::uint16_t j = 0; j <= i; ++j) {
        if (!(mask >> j & 1))
          continue;
        std::uint16_t p = cf.plus(i, j);
        if (!(mask >> p & 1)) {
          mask |= std::uint64_t(1) << p;
          changed = true;
        }
      }
    }
    for (std::uint16_t y = 0; y < cf.n; ++y) {
      if (mask >> y & 1)
        continue;
      for (std::uint16_t i = 0; i < cf.n; ++i)
        if ((mask >> i & 1) && cf.leq(y, i)) {
          mask |= std::uint64_t(1) << y;
          changed = true;
          break;
        }
    }
  }
  return mask;
}

inline Ideal mask_to_ideal(const CompiledFinite &cf, std::uint64_t mask) {
  std::vector<MvElem> xs;
  for (std::uint16_t i = 0; i < cf.n; ++i)
    if (mask >> i & 1)
      xs.push_back(cf.carrier[i]);
  return Ideal::explicit_set(std::move(xs));
}

inline std::uint64_t ideal_to_mask(const CompiledFinite &cf, const Ideal &I) {
  std::uint64_t mask = 0;
  for (std::uint16_t i = 0; i < cf.n; ++i)
    if (ideal_member(cf.desc, I, cf.carrier[i]))
      mask |= std::uint64_t(1) << i;
  return mask;
}

inline std::vector<std::uint64_t> enumerate_ideal_masks(const CompiledFinite &cf) {
  // Every ideal of a finite MV-algebra is the closure of a single element:
  // an ideal is downward closed and contains the truncated sum of all its
  // members, which dominates each of them.
  std::set<std::uint64_t> masks;
  for (std::uint16_t e = 0; e < cf.n; ++e)
    masks.insert(ideal_closure_from(cf, e));
  std::vector<std::uint64_t> out(masks.begin(), masks.end());
  std::sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
    int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
    if (pa != pb)
      return pa < pb;
    return a < b;
  });
  return out;
}

inline bool is_product_of_chains(const MvAlgebraDesc &A) {
  if (A.kind != MvAlgebraDesc::Kind::Product)
    return false;
  return std::all_of(A.factors.begin(), A.factors.end(), [](const MvAlgebraDesc &f) {
    return f.kind == MvAlgebraDesc::Kind::FiniteChain;
  });
}

/// One-shot spectral data of a finite algebra: all ideal masks with their
/// prime/maximal flags and the radical mask.
struct FiniteSpectra {
  CompiledFinite cf;
  std::vector<std::uint64_t> ideals;
  std::vector<bool> prime, maximal;
  std::uint64_t all = 0, radical_mask = 0;
};

inline bool mask_is_prime(const CompiledFinite &cf, std::uint64_t mask, std::uint64_t all) {
  if (mask == all)
    return false;
  for (std::uint16_t x = 0; x < cf.n; ++x)
    for (std::uint16_t y = 0; y < x; ++y)
      if (!(mask >> cf.minus(x, y) & 1) && !(mask >> cf.minus(y, x) & 1))
        return false;
  return true;
}

inline FiniteSpectra finite_spectra(const MvAlgebraDesc &A, std::size_t cap) {
  FiniteSpectra fs;
  fs.cf = compile_finite(A, cap);
  if (fs.cf.n > 64)
    fail(ErrorKind::CarrierTooLarge, "ideal masks support at most 64 elements");
  fs.ideals = enumerate_ideal_masks(fs.cf);
  fs.all = fs.cf.n == 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << fs.cf.n) - 1;
  fs.radical_mask = fs.all;
  bool any_maximal = false;
  for (std::size_t i = 0; i < fs.ideals.size(); ++i) {
    std::uint64_t m = fs.ideals[i];
    fs.prime.push_back(mask_is_prime(fs.cf, m, fs.all));
    bool maximal = m != fs.all;
    for (std::uint64_t other : fs.ideals)
      if (other != m && other != fs.all && (other & m) == m)
        maximal = false;
    fs.maximal.push_back(maximal);
    if (maximal) {
      fs.radical_mask &= m;
      any_maximal = true;
    }
  }
  if (!any_maximal)
    fs.radical_mask = fs.all; // trivial algebra: empty intersection
  return fs;
}

} // namespace detail

/// Generic closure-search enumeration (exhaustive, finite algebras only).
inline std::vector<Ideal> enumerate_ideals_generic(const MvAlgebraDesc &A,
                                                   std::size_t cap = kDefaultIdealCap) {
  if (!finite_size(A))
    fail(ErrorKind::CarrierTooLarge, "ideal enumeration needs a finite carrier");
  CompiledFinite cf = compile_finite(A, cap);
  std::vector<Ideal> out;
  for (auto mask : detail::enumerate_ideal_masks(cf))
    out.push_back(detail::mask_to_ideal(cf, mask));
  return out;
}

/// Structural fast path for products of finite chains: each factor
/// contributes either its zero or its whole carrier.
inline std::vector<Ideal> enumerate_ideals_product_fast(const MvAlgebraDesc &A,
                                                        std::size_t cap = kDefaultIdealCap) {
  if (!detail::is_product_of_chains(A))
    fail(ErrorKind::UnsupportedShape, "fast path needs a product of finite chains");
  auto size = finite_size(A);
  if (!size || *size > Int(cap))
    fail(ErrorKind::CarrierTooLarge, "carrier exceeds the ideal-enumeration cap");
  std::size_t d = A.factors.size();
  std::vector<std::vector<MvElem>> per_zero, per_full;
  for (const auto &f : A.factors) {
    per_full.push_back(*finite_carrier(f, cap));
    per_zero.push_back({mv_zero(f)});
  }
  std::vector<Ideal> out;
  for (std::size_t mask = 0; mask < (std::size_t(1) << d); ++mask) {
    std::vector<MvElem> elems;
    std::vector<MvElem> cur;
    auto rec = [&](auto &&self, std::size_t i) -> void {
      if (i == d) {
        elems.push_back(m_tuple(cur));
        return;
      }
      const auto &pool = (mask >> i & 1) ? per_full[i] : per_zero[i];
      for (const auto &e : pool) {
        cur.push_back(e);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    out.push_back(Ideal::explicit_set(std::move(elems)));
  }
  std::sort(out.begin(), out.end(), [](const Ideal &a, const Ideal &b) {
    if (a.elems.size() != b.elems.size())
      return a.elems.size() < b.elems.size();
    return std::lexicographical_compare(a.elems.begin(), a.elems.end(), b.elems.begin(),
                                        b.elems.end(), MvElemLess{});
  });
  return out;
}

/// Complete ideal list of a finite algebra (fast path for products of
/// chains, generic closure search otherwise).
inline std::vector<Ideal> enumerate_ideals(const MvAlgebraDesc &A,
                                           std::size_t cap = kDefaultIdealCap) {
  if (detail::is_product_of_chains(A))
    return enumerate_ideals_product_fast(A, cap);
  return enumerate_ideals_generic(A, cap);
}

// ---------------------------------------------------------------------------
// Symbolic ideal catalog
// ---------------------------------------------------------------------------

/// Named ideals of the supported structured infinite algebras. For gamma
/// images of lex towers this is {Zero, Radical, Whole}; for the rational
/// unit interval {Zero, Whole}; quasi-constant algebras over a supported
/// local base get {Zero, Radical, Whole} as well.
inline std::vector<Ideal> symbolic_ideals(const MvAlgebraDesc &A) {
  if (finite_size(A))
    fail(ErrorKind::UnsupportedShape, "finite algebras use enumerate_ideals");
  if (detail::is_rational_interval_shape(A))
    return {Ideal::zero(), Ideal::whole()};
  if (detail::lex_gamma_shape(A))
    return {Ideal::zero(), Ideal::radical(), Ideal::whole()};
  if (A.kind == MvAlgebraDesc::Kind::QuasiConstant)
    return {Ideal::zero(), Ideal::radical(), Ideal::whole()};
  fail(ErrorKind::UnsupportedShape, "no symbolic ideal catalog for this algebra");
}

// ---------------------------------------------------------------------------
// Ideal predicates
// ---------------------------------------------------------------------------

struct IdealPredicates {
  bool is_ideal = false;
  bool is_prime = false;
  bool is_maximal = false;
  std::vector<MvElem> prime_witness; // {x, y} with neither difference in I
};

inline bool ideal_subset(const MvAlgebraDesc &A, const Ideal &a, const Ideal &b);

namespace detail {

inline int symbolic_rank(const Ideal &I) {
  switch (I.kind) {
  case Ideal::Kind::Zero: return 0;
  case Ideal::Kind::Radical: return 1;
  case Ideal::Kind::Whole: return 2;
  default: fail(ErrorKind::InvalidIdeal, "not a symbolic chain ideal");
  }
}

} // namespace detail

inline bool ideal_subset(const MvAlgebraDesc &A, const Ideal &a, const Ideal &b) {
  if (a.kind == Ideal::Kind::Zero || b.kind == Ideal::Kind::Whole)
    return true;
  if (a.kind == Ideal::Kind::Explicit && b.kind == Ideal::Kind::Explicit)
    return std::includes(b.elems.begin(), b.elems.end(), a.elems.begin(), a.elems.end(),
                         MvElemLess{});
  if (a.kind == Ideal::Kind::Explicit) {
    for (const auto &x : a.elems)
      if (!ideal_member(A, b, x))
        return false;
    return true;
  }
  if (a.kind == Ideal::Kind::ProductKernel && b.kind == Ideal::Kind::ProductKernel)
    return std::includes(a.zeroed.begin(), a.zeroed.end(), b.zeroed.begin(),
                         b.zeroed.end());
  return detail::symbolic_rank(a) <= detail::symbolic_rank(b);
}

inline IdealPredicates ideal_predicates(const MvAlgebraDesc &A, const Ideal &I,
                                        const SampleParams &params = {},
                                        std::size_t cap = kDefaultIdealCap) {
  IdealPredicates out;
  if (finite_size(A)) {
    CompiledFinite cf = compile_finite(A, cap);
    std::uint64_t mask = detail::ideal_to_mask(cf, I);
    std::uint64_t all = cf.n == 64 ? ~std::uint64_t(0)
                                   : (std::uint64_t(1) << cf.n) - 1;
    // laws
    out.is_ideal = (mask >> cf.zero) & 1;
    for (std::uint16_t i = 0; i < cf.n && out.is_ideal; ++i) {
      if (!(mask >> i & 1))
        continue;
      for (std::uint16_t j = 0; j < cf.n; ++j) {
        if ((mask >> j & 1) && !(mask >> cf.plus(i, j) & 1)) {
          out.is_ideal = false;
          break;
        }
        if (!(mask >> j & 1) && cf.leq(j, i)) {
          out.is_ideal = false;
          break;
        }
      }
    }
    bool proper = mask != all;
    if (out.is_ideal && proper) {
      out.is_prime = true;
      for (std::uint16_t x = 0; x < cf.n && out.is_prime; ++x)
        for (std::uint16_t y = 0; y < cf.n; ++y)
          if (!(mask >> cf.minus(x, y) & 1) && !(mask >> cf.minus(y, x) & 1)) {
            out.is_prime = false;
            out.prime_witness = {cf.carrier[x], cf.carrier[y]};
            break;
          }
      out.is_maximal = true;
      for (auto other : detail::enumerate_ideal_masks(cf))
        if (other != mask && other != all && (other & mask) == mask)
          out.is_maximal = false;
    }
    return out;
  }

  // symbolic: sampled law checks plus catalog facts
  SplitMix64 rng(params.seed);
  auto member = [&](const MvElem &x) { return ideal_member(A, I, x); };
  out.is_ideal = member(mv_zero(A));
  auto sample_member = [&](SplitMix64 &r) -> MvElem {
    switch (I.kind) {
    case Ideal::Kind::Zero: return mv_zero(A);
    case Ideal::Kind::Radical: return sample_radical_elem(A, r);
    case Ideal::Kind::Whole: return sample_mv_elem(A, r);
    default: fail(ErrorKind::InvalidIdeal, "unsupported symbolic ideal");
    }
  };
  for (std::size_t i = 0; i < params.count && out.is_ideal; ++i) {
    MvElem a = sample_member(rng);
    MvElem b = sample_member(rng);
    if (!member(mv_plus(A, a, b)))
      out.is_ideal = false;
    MvElem below = mv_meet(A, sample_mv_elem(A, rng), a);
    if (!member(below))
      out.is_ideal = false;
  }
  if (!out.is_ideal || I.kind == Ideal::Kind::Whole)
    return out;

  bool chain_zero_prime;
  if (detail::is_rational_interval_shape(A) || detail::lex_gamma_shape(A))
    chain_zero_prime = true;
  else if (A.kind == MvAlgebraDesc::Kind::QuasiConstant)
    chain_zero_prime = A.sites == 1; // K(U^1) = U, a chain for catalog bases
  else
    fail(ErrorKind::UnsupportedShape, "no catalog predicates for this algebra");

  if (I.kind == Ideal::Kind::Zero) {
    out.is_prime = chain_zero_prime;
    // maximal iff there is no radical strictly between
    bool has_radical = detail::lex_gamma_shape(A).has_value() ||
                       A.kind == MvAlgebraDesc::Kind::QuasiConstant;
    out.is_maximal = !has_radical;
    if (!out.is_prime) {
      // deterministic incomparability witness search
      for (std::size_t i = 0; i < params.count; ++i) {
        MvElem x = sample_mv_elem(A, rng);
        MvElem y = sample_mv_elem(A, rng);
        if (!member(mv_minus(A, x, y)) && !member(mv_minus(A, y, x))) {
          out.prime_witness = {x, y};
          break;
        }
      }
    }
  } else { // Radical: the quotient is a chain, hence prime and maximal
    out.is_prime = true;
    out.is_maximal = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectrum, maximal ideals, radical
// ---------------------------------------------------------------------------

inline std::vector<Ideal> spec(const MvAlgebraDesc &A, std::size_t cap = kDefaultIdealCap,
                               const SampleParams &params = {}) {
  if (finite_size(A)) {
    detail::FiniteSpectra fs = detail::finite_spectra(A, cap);
    std::vector<Ideal> out;
    for (std::size_t i = 0; i < fs.ideals.size(); ++i)
      if (fs.prime[i])
        out.push_back(detail::mask_to_ideal(fs.cf, fs.ideals[i]));
    return out;
  }
  if (detail::is_rational_interval_shape(A))
    return {Ideal::zero()};
  if (detail::lex_gamma_shape(A))
    return {Ideal::zero(), Ideal::radical()};
  if (A.kind == MvAlgebraDesc::Kind::QuasiConstant) {
    if (A.sites == 1)
      return {Ideal::zero(), Ideal::radical()};
    return {Ideal::radical()};
  }
  fail(ErrorKind::UnsupportedShape, "no spectrum catalog for this algebra");
}

inline std::vector<Ideal> max_ideals(const MvAlgebraDesc &A,
                                     std::size_t cap = kDefaultIdealCap,
                                     const SampleParams &params = {}) {
  if (finite_size(A)) {
    detail::FiniteSpectra fs = detail::finite_spectra(A, cap);
    std::vector<Ideal> out;
    for (std::size_t i = 0; i < fs.ideals.size(); ++i)
      if (fs.maximal[i])
        out.push_back(detail::mask_to_ideal(fs.cf, fs.ideals[i]));
    return out;
  }
  if (detail::is_rational_interval_shape(A))
    return {Ideal::zero()};
  if (detail::lex_gamma_shape(A) || A.kind == MvAlgebraDesc::Kind::QuasiConstant)
    return {Ideal::radical()};
  fail(ErrorKind::UnsupportedShape, "no maximal-ideal catalog for this algebra");
}

inline Ideal radical(const MvAlgebraDesc &A, std::size_t cap = kDefaultIdealCap,
                     const SampleParams &params = {}) {
  if (finite_size(A)) {
    detail::FiniteSpectra fs = detail::finite_spectra(A, cap);
    return detail::mask_to_ideal(fs.cf, fs.radical_mask);
  }
  if (detail::is_rational_interval_shape(A))
    return Ideal::zero();
  if (detail::lex_gamma_shape(A) || A.kind == MvAlgebraDesc::Kind::QuasiConstant ||
      A.kind == MvAlgebraDesc::Kind::FunctionAlgebra)
    return Ideal::radical();
  fail(ErrorKind::UnsupportedShape, "no radical catalog for this algebra");
}

// ---------------------------------------------------------------------------
// Quotients
// ---------------------------------------------------------------------------

struct QuotientResult {
  MvAlgebraDesc algebra;
  std::function<MvElem(const MvElem &)> project;
};

inline QuotientResult quotient(const MvAlgebraDesc &A, Ideal I,
                               std::size_t cap = kDefaultIdealCap) {
  if (I.kind == Ideal::Kind::Radical) {
    Ideal r = radical(A, cap);
    if (r.kind != Ideal::Kind::Radical)
      return quotient(A, std::move(r), cap);
  }
  if (I.kind == Ideal::Kind::Zero)
    return {A, [](const MvElem &x) { return x; }};

  if (finite_size(A)) {
    MvAlgebraDesc q = quotient_desc(A, I);
    auto table = q.qtable;
    auto rep = check_axioms(q, Exhaustive{});
    if (!rep.all_passed)
      fail(ErrorKind::VerificationFailed, "quotient algebra failed the axiom recheck");
    return {q, [table](const MvElem &x) { return m_class(table->canon_of(x)); }};
  }

  if (I.kind != Ideal::Kind::Radical)
    fail(ErrorKind::UnsupportedQuotient,
         "symbolic quotients are only supported modulo the radical");

  if (auto s = detail::lex_gamma_shape(A)) {
    const OrderedGroupDesc g = *A.group;
    Rat k = s->unit_head;
    auto project = [g, k](const MvElem &x) {
      std::vector<Rat> leaves;
      flatten_lex_elem(g, x.as_group(), leaves);
      return m_rat(leaves[0] / k);
    };
    if (s->head_is_int) {
      std::size_t n = static_cast<std::size_t>(k.num().convert_to<long long>());
      return {finite_chain(n + 1), project};
    }
    return {unit_interval_q(), project};
  }
  if (A.kind == MvAlgebraDesc::Kind::QuasiConstant) {
    QuotientResult baseq = quotient(*A.base, Ideal::radical(), cap);
    auto p = baseq.project;
    return {baseq.algebra, [p](const MvElem &f) { return p(f.as_tuple()[0]); }};
  }
  fail(ErrorKind::UnsupportedQuotient, "no symbolic quotient for this algebra");
}

// ---------------------------------------------------------------------------
// Order, infinitesimals
// ---------------------------------------------------------------------------

/// Public order operation; the returned integer is itself the witness
/// (n-fold sum equals 1, checkable by mv_nfold).
inline std::optional<Int> ord(const MvAlgebraDesc &A, const MvElem &x) {
  return ord_of(A, x);
}

namespace detail {

/// Does n*x <= ~x hold for every n? On archimedean chains only x = 0; on
/// lex gamma images exactly the pure-tail elements; componentwise on
/// products and function/quasi-constant algebras.
inline bool weakly_infinitesimal(const MvAlgebraDesc &A, const MvElem &x) {
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return x.as_rat() == Rat(0);
  case MvAlgebraDesc::Kind::Gamma: {
    if (auto s = lex_gamma_shape(A)) {
      std::vector<Rat> leaves;
      flatten_lex_elem(*A.group, x.as_group(), leaves);
      return leaves[0] == Rat(0);
    }
    if (is_rational_interval_shape(A) || flatten_lex_kinds(*A.group))
      return x == mv_zero(A); // archimedean leaf
    fail(ErrorKind::UnsupportedShape, "infinitesimal test for this gamma shape");
  }
  case MvAlgebraDesc::Kind::Product:
  case MvAlgebraDesc::Kind::FunctionAlgebra:
  case MvAlgebraDesc::Kind::QuasiConstant: {
    std::size_t n = coord_count(A);
    for (std::size_t i = 0; i < n; ++i)
      if (!weakly_infinitesimal(coord_algebra(A, i), x.as_tuple()[i]))
        return false;
    return true;
  }
  default:
    fail(ErrorKind::UnsupportedShape, "infinitesimal test for this shape");
  }
}

} // namespace detail

inline bool is_infinitesimal(const MvAlgebraDesc &A, const MvElem &x) {
  detail::require_member(A, x);
  if (x == mv_zero(A))
    return false;
  if (auto size = finite_size(A)) {
    // exhaustive: n*x < ~x for every n up to the carrier size (the multiples
    // stabilize within |A| steps)
    MvElem nx = mv_zero(A);
    MvElem negx = mv_neg(A, x);
    for (Int n = 1; n <= *size; ++n) {
      nx = mv_plus(A, nx, x);
      if (!(mv_leq(A, nx, negx) && nx != negx))
        return false;
    }
    return true;
  }
  // weak form plus x != 0 implies strictness (idempotents of a chain are
  // trivial, so n*x can never park on ~x)
  return detail::weakly_infinitesimal(A, x);
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

struct Classification {
  bool is_chain = false;
  bool is_simple = false;
  bool is_semisimple = false;
  bool is_local = false;
  bool is_perfect = false;
  Int maximal_ideal_count = 0;
  Ideal radical_ideal;
};

inline Classification classify(const MvAlgebraDesc &A, std::size_t cap = kDefaultIdealCap,
                               const SampleParams &params = {}) {
  Classification c;

  auto ord_criterion = [&](const MvElem &x) {
    return ord_of(A, x).has_value() || ord_of(A, mv_neg(A, x)).has_value();
  };

  if (finite_size(A)) {
    detail::FiniteSpectra fs = detail::finite_spectra(A, cap);
    const CompiledFinite &cf = fs.cf;
    bool nontrivial = cf.n >= 2;

    c.is_chain = true;
    for (std::uint16_t i = 0; i < cf.n && c.is_chain; ++i)
      for (std::uint16_t j = 0; j < cf.n; ++j)
        if (!cf.leq(i, j) && !cf.leq(j, i)) {
          c.is_chain = false;
          break;
        }

    c.is_simple = nontrivial && fs.ideals.size() == 2;

    std::size_t max_count = 0;
    for (bool m : fs.maximal)
      max_count += m ? 1 : 0;
    c.maximal_ideal_count = Int(max_count);
    c.is_local = max_count == 1;

    c.radical_ideal = detail::mask_to_ideal(cf, fs.radical_mask);
    c.is_semisimple = nontrivial && __builtin_popcountll(fs.radical_mask) == 1;

    c.is_perfect = nontrivial;
    for (std::uint16_t i = 0; i < cf.n && c.is_perfect; ++i)
      if (!(fs.radical_mask >> i & 1) && !(fs.radical_mask >> cf.neg(i) & 1))
        c.is_perfect = false;

    // cross-check locality against the order criterion, exhaustively
    bool crit = true;
    for (std::uint16_t i = 0; i < cf.n && crit; ++i)
      crit = ord_criterion(cf.carrier[i]);
    if (crit != c.is_local)
      fail(ErrorKind::VerificationFailed,
           "locality disagrees with the order criterion on a finite algebra");
    return c;
  }

  // symbolic catalog
  if (detail::is_rational_interval_shape(A)) {
    c.is_chain = true;
    c.is_simple = true;
    c.is_semisimple = true;
    c.is_local = true;
    c.is_perfect = false;
    c.maximal_ideal_count = 1;
    c.radical_ideal = Ideal::zero();
  } else if (auto s = detail::lex_gamma_shape(A)) {
    c.is_chain = true;
    c.is_simple = false;
    c.is_semisimple = false;
    c.is_local = true;
    c.is_perfect = s->head_is_int && s->unit_head == Rat(1);
    c.maximal_ideal_count = 1;
    c.radical_ideal = Ideal::radical();
  } else if (A.kind == MvAlgebraDesc::Kind::QuasiConstant) {
    Classification b = classify(*A.base, cap, params);
    c.is_chain = b.is_chain && (A.sites == 1 || b.is_semisimple);
    c.is_simple = b.is_simple;
    c.is_semisimple = b.is_semisimple;
    c.is_local = true;
    c.is_perfect = b.is_perfect;
    c.maximal_ideal_count = 1;
    c.radical_ideal = Ideal::radical();
  } else if (A.kind == MvAlgebraDesc::Kind::FunctionAlgebra) {
    Classification b = classify(*A.base, cap, params);
    c.is_chain = A.sites == 1 && b.is_chain;
    c.is_simple = A.sites == 1 && b.is_simple;
    c.is_semisimple = b.is_semisimple;
    c.is_local = A.sites == 1 && b.is_local;
    c.is_perfect = A.sites == 1 && b.is_perfect;
    c.maximal_ideal_count = Int(A.sites) * b.maximal_ideal_count;
    c.radical_ideal = Ideal::radical();
  } else {
    fail(ErrorKind::UnsupportedShape, "no classification catalog for this algebra");
  }

  // sampled cross-check of the locality criterion (positive direction; a
  // non-local counterexample is an existence statement the tests witness)
  if (c.is_local) {
    SplitMix64 rng(params.seed);
    for (std::size_t i = 0; i < params.count; ++i) {
      MvElem x = sample_mv_elem(A, rng);
      if (!ord_criterion(x))
        fail(ErrorKind::VerificationFailed,
             "locality disagrees with the order criterion on a sampled element");
    }
  }
  return c;
}

} // namespace mvkit

#endif
