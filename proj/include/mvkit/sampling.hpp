#ifndef MVKIT_SAMPLING_HPP
#define MVKIT_SAMPLING_HPP

// Deterministic element samplers for the sampled verification strategies.
// Every draw is a pure function of the SplitMix64 state, so a (count, seed)
// pair pins the whole sample set.

#include "mvkit/algebra.hpp"
#include "mvkit/group.hpp"
#include "mvkit/rng.hpp"

namespace mvkit {

struct SampleParams {
  std::size_t count = 1000;
  std::uint64_t seed = 1;
};

inline GroupElem sample_group_elem(const OrderedGroupDesc &g, SplitMix64 &rng) {
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers:
    return g_int(rng.range(-24, 24));
  case OrderedGroupDesc::Kind::Rationals: {
    long long q = rng.range(1, 8);
    long long p = rng.range(-24 * q, 24 * q);
    return g_rat(Rat(Int(p), Int(q)));
  }
  case OrderedGroupDesc::Kind::Lex:
  case OrderedGroupDesc::Kind::Direct: {
    std::vector<GroupElem> xs;
    xs.reserve(g.components.size());
    for (const auto &c : g.components)
      xs.push_back(sample_group_elem(c, rng));
    return g_tuple(std::move(xs));
  }
  case OrderedGroupDesc::Kind::QuasiConstant: {
    // anchor plus per-site drift inside the null ideal of (base, unit)
    GroupElem anchor = sample_group_elem(*g.qc_base, rng);
    LIdeal null = group_null_ideal(*g.qc_base, *g.qc_base_unit);
    std::vector<GroupElem> sites;
    sites.reserve(g.qc_sites);
    for (std::size_t i = 0; i < g.qc_sites; ++i) {
      GroupElem drift = group_zero(*g.qc_base);
      if (null.kind == LIdeal::Kind::TailKernel) {
        drift = sample_group_elem(*g.qc_base, rng);
        std::vector<Rat> leaves;
        flatten_lex_elem(*g.qc_base, drift, leaves);
        leaves[0] = Rat(0);
        std::size_t pos = 0;
        drift = unflatten_lex_elem(*g.qc_base, leaves, pos);
      }
      sites.push_back(group_add(*g.qc_base, anchor, drift));
    }
    return g_tuple(std::move(sites));
  }
  }
  fail(ErrorKind::UnsupportedShape, "sample_group_elem");
}

/// A positive element of the radical of a local algebra (0 when the radical
/// is trivial). For gamma images of lex towers these are the pure-tail
/// elements; sites of quasi-constant algebras draw radical elements of the
/// base.
inline MvElem sample_radical_elem(const MvAlgebraDesc &A, SplitMix64 &rng) {
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return mv_zero(A);
  case MvAlgebraDesc::Kind::Gamma: {
    auto kinds = flatten_lex_kinds(*A.group);
    if (!kinds || kinds->size() < 2)
      return mv_zero(A);
    std::vector<Rat> uleaves;
    flatten_lex_elem(*A.group, *A.unit, uleaves);
    if (uleaves[0] == Rat(0))
      return mv_zero(A); // degenerate unit, interval sits inside the tail
    GroupElem raw = sample_group_elem(*A.group, rng);
    std::vector<Rat> leaves;
    flatten_lex_elem(*A.group, raw, leaves);
    leaves[0] = Rat(0);
    std::size_t pos = 0;
    GroupElem tail = unflatten_lex_elem(*A.group, leaves, pos);
    if (group_cmp(*A.group, tail, group_zero(*A.group)) == std::partial_ordering::less)
      tail = group_neg(*A.group, tail);
    return m_group(std::move(tail));
  }
  case MvAlgebraDesc::Kind::Product:
  case MvAlgebraDesc::Kind::FunctionAlgebra:
  case MvAlgebraDesc::Kind::QuasiConstant: {
    std::vector<MvElem> xs;
    std::size_t n = detail::coord_count(A);
    xs.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      xs.push_back(sample_radical_elem(detail::coord_algebra(A, i), rng));
    return m_tuple(std::move(xs));
  }
  case MvAlgebraDesc::Kind::Quotient:
    return mv_zero(A);
  }
  return mv_zero(A);
}

inline MvElem sample_mv_elem(const MvAlgebraDesc &A, SplitMix64 &rng) {
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain: {
    long long k = rng.range(0, static_cast<long long>(A.chain_size) - 1);
    return m_rat(Rat(Int(k), Int(A.chain_size - 1)));
  }
  case MvAlgebraDesc::Kind::UnitIntervalQ: {
    long long q = rng.range(1, 50);
    long long p = rng.range(0, q);
    return m_rat(Rat(Int(p), Int(q)));
  }
  case MvAlgebraDesc::Kind::Product:
  case MvAlgebraDesc::Kind::FunctionAlgebra: {
    std::vector<MvElem> xs;
    std::size_t n = detail::coord_count(A);
    xs.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      xs.push_back(sample_mv_elem(detail::coord_algebra(A, i), rng));
    return m_tuple(std::move(xs));
  }
  case MvAlgebraDesc::Kind::Gamma: {
    // clamp a raw group sample into [0, u]
    GroupElem raw = sample_group_elem(*A.group, rng);
    GroupElem z = group_zero(*A.group);
    return m_group(group_join(*A.group, z, group_meet(*A.group, raw, *A.unit)));
  }
  case MvAlgebraDesc::Kind::Quotient:
    return m_class(A.qtable->canon_of(sample_mv_elem(*A.base, rng)));
  case MvAlgebraDesc::Kind::QuasiConstant: {
    // anchor (-) r (+) s with r, s in the radical stays in the anchor class
    MvElem anchor = sample_mv_elem(*A.base, rng);
    std::vector<MvElem> sites;
    sites.reserve(A.sites);
    for (std::size_t i = 0; i < A.sites; ++i) {
      MvElem r = sample_radical_elem(*A.base, rng);
      MvElem s = sample_radical_elem(*A.base, rng);
      sites.push_back(mv_plus(*A.base, mv_minus(*A.base, anchor, r), s));
    }
    return m_tuple(std::move(sites));
  }
  }
  fail(ErrorKind::UnsupportedShape, "sample_mv_elem");
}

} // namespace mvkit

#endif
