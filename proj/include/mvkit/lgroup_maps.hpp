#ifndef MVKIT_LGROUP_MAPS_HPP
#define MVKIT_LGROUP_MAPS_HPP

// The functor between unital ordered groups and MV-algebras at the level of
// concrete descriptors: gamma (order interval with truncated operations),
// its pattern-based inverse xi, the ideal correspondence of the interval,
// and locality of unital groups (decided on the MV side).

#include <utility>
#include <vector>

#include "mvkit/algebra.hpp"
#include "mvkit/spectra.hpp"

namespace mvkit {

inline MvAlgebraDesc gamma(OrderedGroupDesc g, GroupElem u) {
  return gamma_desc(std::move(g), std::move(u));
}

struct UnitalGroup {
  OrderedGroupDesc group;
  GroupElem unit;
};

inline bool operator==(const UnitalGroup &a, const UnitalGroup &b) {
  return a.group == b.group && a.unit == b.unit;
}

/// Pattern-based inverse of gamma on structured descriptors. The general
/// good-sequence construction is out of scope; every algebra this library
/// builds is covered by the patterns below.
inline UnitalGroup xi(const MvAlgebraDesc &A) {
  switch (A.kind) {
  case MvAlgebraDesc::Kind::Gamma:
    return {*A.group, *A.unit};
  case MvAlgebraDesc::Kind::FiniteChain:
    return {integers(), g_int(Int(A.chain_size) - 1)};
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return {rationals(), g_rat(Rat(1))};
  case MvAlgebraDesc::Kind::Product: {
    std::vector<OrderedGroupDesc> comps;
    std::vector<GroupElem> units;
    for (const auto &f : A.factors) {
      UnitalGroup sub = xi(f);
      comps.push_back(std::move(sub.group));
      units.push_back(std::move(sub.unit));
    }
    return {direct_product(std::move(comps)), g_tuple(std::move(units))};
  }
  case MvAlgebraDesc::Kind::QuasiConstant: {
    UnitalGroup base = xi(*A.base);
    GroupElem unit = g_tuple(std::vector<GroupElem>(A.sites, base.unit));
    return {quasi_constant_group(std::move(base.group), base.unit, A.sites),
            std::move(unit)};
  }
  default:
    fail(ErrorKind::UnsupportedShape, "xi is defined on structured descriptors only");
  }
}

// ---------------------------------------------------------------------------
// Ideal correspondence for A = gamma(G, u):
//   phi(J) = {x in G : |x| ^ u in J},  psi(H) = H n [0,u]
// ---------------------------------------------------------------------------

namespace detail {

inline void require_gamma(const MvAlgebraDesc &A) {
  if (A.kind != MvAlgebraDesc::Kind::Gamma)
    fail(ErrorKind::NotGammaAlgebra, "the ideal correspondence needs a gamma algebra");
}

} // namespace detail

inline LIdeal ideal_phi(const MvAlgebraDesc &A, const Ideal &J,
                        std::size_t cap = kDefaultIdealCap) {
  detail::require_gamma(A);
  const OrderedGroupDesc &G = *A.group;

  if (J.kind == Ideal::Kind::Zero)
    return LIdeal::zero();
  if (J.kind == Ideal::Kind::Whole)
    return LIdeal::whole();
  if (J.kind == Ideal::Kind::Radical) {
    if (!detail::lex_gamma_shape(A))
      fail(ErrorKind::InvalidIdeal, "symbolic radical needs a lex gamma algebra");
    return LIdeal::tail_kernel(1);
  }

  if (finite_size(A)) {
    // test per coordinate: x belongs iff |x| ^ u lands in J, so a direct
    // component i is unconstrained exactly when its unit slice u_i e_i does
    if (!ideal_predicates(A, J, {}, cap).is_ideal)
      fail(ErrorKind::InvalidIdeal, "phi needs a valid ideal of the interval");
    if (G.kind == OrderedGroupDesc::Kind::Integers) {
      bool whole = ideal_member(A, J, m_group(*A.unit));
      return whole ? LIdeal::whole() : LIdeal::zero();
    }
    if (G.kind == OrderedGroupDesc::Kind::Direct) {
      std::set<std::size_t> zeroed;
      std::size_t nontrivial = 0;
      for (std::size_t i = 0; i < G.components.size(); ++i) {
        const GroupElem &ui = A.unit->as_tuple()[i];
        if (ui == group_zero(G.components[i]))
          continue; // collapsed coordinate, never constrains membership
        ++nontrivial;
        auto slice = group_zero(G);
        auto xs = slice.as_tuple();
        xs[i] = ui;
        if (!ideal_member(A, J, m_group(g_tuple(std::move(xs)))))
          zeroed.insert(i);
      }
      if (zeroed.empty())
        return LIdeal::whole();
      if (zeroed.size() == nontrivial && nontrivial == G.components.size())
        return LIdeal::zero();
      return LIdeal::product_kernel(std::move(zeroed));
    }
  }
  fail(ErrorKind::UnsupportedShape, "phi unsupported for this gamma shape");
}

inline Ideal ideal_psi(const MvAlgebraDesc &A, const LIdeal &H,
                       std::size_t cap = kDefaultIdealCap) {
  detail::require_gamma(A);
  const OrderedGroupDesc &G = *A.group;

  if (finite_size(A)) {
    auto carrier = finite_carrier(A, cap);
    std::vector<MvElem> xs;
    for (const auto &e : *carrier)
      if (lideal_member(G, H, e.as_group()))
        xs.push_back(e);
    return Ideal::explicit_set(std::move(xs));
  }

  switch (H.kind) {
  case LIdeal::Kind::Zero:
    return Ideal::zero();
  case LIdeal::Kind::Whole:
    return Ideal::whole();
  case LIdeal::Kind::TailKernel: {
    auto s = detail::lex_gamma_shape(A);
    if (s && H.tail == 1)
      return Ideal::radical(); // {x : head leaf 0} n [0,u] is exactly the radical
    fail(ErrorKind::UnsupportedShape, "tail kernel does not meet the catalog");
  }
  default:
    fail(ErrorKind::UnsupportedShape, "psi unsupported for this l-ideal");
  }
}

/// The MV-ideal poset of gamma(G,u): enumerated when finite, the symbolic
/// catalog otherwise.
inline std::vector<Ideal> mv_ideal_poset(const MvAlgebraDesc &A,
                                         std::size_t cap = kDefaultIdealCap) {
  if (finite_size(A))
    return enumerate_ideals(A, cap);
  return symbolic_ideals(A);
}

/// Locality of a unital group, decided on the MV side (the interval algebra
/// is local exactly when the group is).
inline bool lgroup_is_local(const OrderedGroupDesc &G, const GroupElem &u,
                            std::size_t cap = kDefaultIdealCap,
                            const SampleParams &params = {}) {
  return classify(gamma_desc(G, u), cap, params).is_local;
}

} // namespace mvkit

#endif
