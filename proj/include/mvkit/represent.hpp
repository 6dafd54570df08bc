#ifndef MVKIT_REPRESENT_HPP
#define MVKIT_REPRESENT_HPP

// Constructive, verified representation theorems at desk scale: the
// subdirect embedding into prime quotients, the equivalence between perfect
// algebras and ordered groups (radical-pair classes one way, the interval
// [0,(1,0)] of Z x_lex G the other), quasi-constant function algebras,
// separating terms over [0,1], prime-independence of radical classes, and
// the local / perfect / unital-group embeddings into quasi-constant
// functions over the lex-vector surrogate.
//
// Every embedding returned here has passed its homomorphism and injectivity
// checks; a failed check throws (fail-stop) rather than returning an
// unverified map. Ultrapowers are replaced throughout by the divisible
// totally ordered group Lex(Q,...,Q) (`nonstandard_reals`), and every report
// that relies on it says so.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvkit/algebra.hpp"
#include "mvkit/lgroup_maps.hpp"
#include "mvkit/sampling.hpp"
#include "mvkit/spectra.hpp"
#include "mvkit/term.hpp"

namespace mvkit {

struct VerificationInfo {
  std::string strategy; // "exhaustive" | "sampled"
  std::size_t checked = 0;
  std::uint64_t seed = 0;
  bool passed = false;
};

struct Embedding {
  MvAlgebraDesc source;
  MvAlgebraDesc target;
  std::function<MvElem(const MvElem &)> map;
  VerificationInfo hom;
  VerificationInfo injectivity;
  std::vector<std::string> notes;
};

namespace detail {

inline std::string surrogate_note(std::size_t depth) {
  return "ultrapower surrogate: Lex(Q x " + std::to_string(depth) +
         ") with unit (1,0,...); no genuine ultrapower is constructed";
}

/// Homomorphism + injectivity verification, exhaustive over finite sources
/// and seeded-sampled otherwise. Throws VerificationFailed on any violation.
inline std::pair<VerificationInfo, VerificationInfo>
verify_mv_embedding(const MvAlgebraDesc &src, const MvAlgebraDesc &tgt,
                    const std::function<MvElem(const MvElem &)> &map, std::size_t cap,
                    const SampleParams &params) {
  VerificationInfo hom, inj;
  auto check_pair = [&](const MvElem &x, const MvElem &y) {
    if (map(mv_plus(src, x, y)) != mv_plus(tgt, map(x), map(y)))
      fail(ErrorKind::VerificationFailed, "embedding does not preserve (+)");
    if (map(mv_neg(src, x)) != mv_neg(tgt, map(x)))
      fail(ErrorKind::VerificationFailed, "embedding does not preserve negation");
    if (x != y && map(x) == map(y))
      fail(ErrorKind::VerificationFailed, "embedding is not injective");
  };
  if (map(mv_zero(src)) != mv_zero(tgt))
    fail(ErrorKind::VerificationFailed, "embedding does not preserve 0");

  if (finite_size(src) && finite_size(tgt) && *finite_size(tgt) <= Int(4096)) {
    // exhaustive on compiled tables: evaluate the map once per element, then
    // check homomorphism and injectivity as index lookups
    CompiledFinite cs = compile_finite(src, cap);
    CompiledFinite ct = compile_finite(tgt, 4096);
    std::vector<std::size_t> m(cs.n);
    std::vector<bool> hit(ct.n, false);
    for (std::size_t i = 0; i < cs.n; ++i) {
      m[i] = ct.index_of(map(cs.carrier[i]));
      if (hit[m[i]])
        fail(ErrorKind::VerificationFailed, "embedding is not injective");
      hit[m[i]] = true;
    }
    for (std::size_t i = 0; i < cs.n; ++i) {
      if (ct.neg_tab[m[i]] != m[cs.neg_tab[i]])
        fail(ErrorKind::VerificationFailed, "embedding does not preserve negation");
      for (std::size_t j = 0; j < cs.n; ++j) {
        if (ct.plus_tab[m[i] * ct.n + m[j]] !=
            m[cs.plus_tab[i * cs.n + j]])
          fail(ErrorKind::VerificationFailed, "embedding does not preserve (+)");
        ++hom.checked;
      }
    }
    hom.strategy = inj.strategy = "exhaustive";
    inj.checked = hom.checked;
    hom.passed = inj.passed = true;
    return {hom, inj};
  }
  if (finite_size(src)) {
    auto carrier = finite_carrier(src, cap);
    for (const auto &x : *carrier)
      for (const auto &y : *carrier) {
        check_pair(x, y);
        ++hom.checked;
      }
    hom.strategy = inj.strategy = "exhaustive";
  } else {
    SplitMix64 rng(params.seed);
    for (std::size_t i = 0; i < params.count; ++i) {
      MvElem x = sample_mv_elem(src, rng);
      MvElem y = sample_mv_elem(src, rng);
      check_pair(x, y);
      ++hom.checked;
    }
    hom.strategy = inj.strategy = "sampled";
    hom.seed = inj.seed = params.seed;
  }
  inj.checked = hom.checked;
  hom.passed = inj.passed = true;
  return {hom, inj};
}

// lex-head plumbing for gamma algebras over Lex([head, rest...])
inline OrderedGroupDesc lex_tail_desc(const OrderedGroupDesc &g) {
  if (g.components.size() == 2)
    return g.components[1];
  return lex_product(
      std::vector<OrderedGroupDesc>(g.components.begin() + 1, g.components.end()));
}

inline GroupElem lex_tail_elem(const OrderedGroupDesc &g, const GroupElem &x) {
  if (g.components.size() == 2)
    return x.as_tuple()[1];
  return g_tuple(std::vector<GroupElem>(x.as_tuple().begin() + 1, x.as_tuple().end()));
}

inline GroupElem lex_with_head(const OrderedGroupDesc &g, GroupElem head,
                               const GroupElem &tail) {
  std::vector<GroupElem> parts;
  parts.push_back(std::move(head));
  if (g.components.size() == 2)
    parts.push_back(tail);
  else
    for (const auto &p : tail.as_tuple())
      parts.push_back(p);
  return g_tuple(std::move(parts));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Chain values (canonical picture of a simple chain inside [0,1])
// ---------------------------------------------------------------------------

/// The rational picture of an element of a simple chain: finite chains and
/// quotient chains map onto {0, 1/(n-1), ..., 1} by order rank, rational
/// intervals are themselves.
inline Rat chain_value(const MvAlgebraDesc &C, const MvElem &e,
                       std::size_t cap = kDefaultIdealCap) {
  switch (C.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return e.as_rat();
  case MvAlgebraDesc::Kind::Gamma: {
    auto kinds = flatten_lex_kinds(*C.group);
    if (kinds && kinds->size() == 1) {
      std::vector<Rat> xs, us;
      flatten_lex_elem(*C.group, e.as_group(), xs);
      flatten_lex_elem(*C.group, *C.unit, us);
      return xs[0] / us[0];
    }
    fail(ErrorKind::UnsupportedShape, "chain value for this gamma shape");
  }
  case MvAlgebraDesc::Kind::Quotient: {
    auto carrier = finite_carrier(C, cap);
    std::vector<MvElem> sorted = *carrier;
    std::sort(sorted.begin(), sorted.end(),
              [&](const MvElem &a, const MvElem &b) { return mv_leq(C, a, b) && a != b; });
    for (std::size_t i = 0; i < sorted.size(); ++i)
      if (sorted[i] == e)
        return Rat(Int(i), Int(sorted.size() - 1));
    fail(ErrorKind::ElementNotInAlgebra, "chain value of a foreign element");
  }
  default:
    fail(ErrorKind::UnsupportedShape, "chain value for this shape");
  }
}

/// (x/P)/Rad(A/P) as a rational: the standard part of x at the prime P.
inline Rat double_quotient_value(const MvAlgebraDesc &A, const Ideal &P, const MvElem &x,
                                 std::size_t cap = kDefaultIdealCap) {
  QuotientResult q1 = quotient(A, P, cap);
  Ideal rad = radical(q1.algebra, cap);
  QuotientResult q2 = quotient(q1.algebra, rad, cap);
  return chain_value(q2.algebra, q2.project(q1.project(x)), cap);
}

// ---------------------------------------------------------------------------
// Chang subdirect embedding
// ---------------------------------------------------------------------------

/// x |-> (x/P) over P in Spec A. Coordinates are verified to be chains; the
/// map is verified to be an injective homomorphism (exhaustively for finite
/// algebras, on seeded samples otherwise).
inline Embedding chang_embedding(const MvAlgebraDesc &A, std::size_t cap = kDefaultIdealCap,
                                 const SampleParams &params = {}) {
  auto primes = spec(A, cap, params);
  if (primes.empty())
    fail(ErrorKind::UnsupportedShape, "trivial algebra has no prime spectrum");

  std::vector<QuotientResult> quotients;
  std::vector<MvAlgebraDesc> coords;
  for (const auto &P : primes) {
    QuotientResult q = quotient(A, P, cap);
    if (!classify(q.algebra, cap, params).is_chain)
      fail(ErrorKind::VerificationFailed, "a prime quotient is not totally ordered");
    coords.push_back(q.algebra);
    quotients.push_back(std::move(q));
  }

  MvAlgebraDesc target = mv_product(coords);
  auto projections =
      std::make_shared<std::vector<QuotientResult>>(std::move(quotients));
  auto map = [projections](const MvElem &x) {
    std::vector<MvElem> parts;
    parts.reserve(projections->size());
    for (const auto &q : *projections)
      parts.push_back(q.project(x));
    return m_tuple(std::move(parts));
  };

  Embedding e;
  e.source = A;
  e.target = target;
  e.map = map;
  auto [hom, inj] = detail::verify_mv_embedding(A, target, map, cap, params);
  e.hom = hom;
  e.injectivity = inj;
  e.notes.push_back("coordinates: quotients by the " + std::to_string(primes.size()) +
                    " primes of Spec A, each verified to be a chain");
  return e;
}

// ---------------------------------------------------------------------------
// Perfect <-> group equivalence
// ---------------------------------------------------------------------------

/// The radical-pair group of a perfect algebra, with its explicit element
/// encoding: class_of maps a pair of radical elements to the group value,
/// pair_of returns the canonical representative pair.
struct DFunctorResult {
  MvAlgebraDesc source;
  OrderedGroupDesc group;
  std::function<GroupElem(const MvElem &, const MvElem &)> class_of;
  std::function<std::pair<MvElem, MvElem>(const GroupElem &)> pair_of;
};

inline DFunctorResult d_functor(const MvAlgebraDesc &A, std::size_t cap = kDefaultIdealCap,
                                const SampleParams &params = {}) {
  if (!classify(A, cap, params).is_perfect)
    fail(ErrorKind::NotPerfect, "the radical-pair group needs a perfect algebra");

  DFunctorResult out;
  out.source = A;

  if (A.kind == MvAlgebraDesc::Kind::FiniteChain && A.chain_size == 2) {
    out.group = trivial_group();
    out.class_of = [](const MvElem &x, const MvElem &y) {
      if (!(x == m_rat(Rat(0))) || !(y == m_rat(Rat(0))))
        fail(ErrorKind::ElementNotInAlgebra, "radical pair expected");
      return g_tuple({});
    };
    out.pair_of = [](const GroupElem &) {
      return std::make_pair(m_rat(Rat(0)), m_rat(Rat(0)));
    };
    return out;
  }

  auto s = detail::lex_gamma_shape(A);
  if (s && A.group->components[0].kind == OrderedGroupDesc::Kind::Integers &&
      s->unit_head == Rat(1)) {
    const OrderedGroupDesc G = *A.group;
    const MvAlgebraDesc Adesc = A;
    OrderedGroupDesc tail = detail::lex_tail_desc(G);
    out.group = tail;
    out.class_of = [G, tail, Adesc](const MvElem &x, const MvElem &y) {
      // radical elements have head 0; radical sums never truncate below the
      // unit, so the class of (x, y) is determined by the tail difference
      if (!ideal_member(Adesc, Ideal::radical(), x) ||
          !ideal_member(Adesc, Ideal::radical(), y))
        fail(ErrorKind::ElementNotInAlgebra, "radical pair expected");
      GroupElem tx = detail::lex_tail_elem(G, x.as_group());
      GroupElem ty = detail::lex_tail_elem(G, y.as_group());
      return group_sub(tail, tx, ty);
    };
    out.pair_of = [G, tail](const GroupElem &h) {
      GroupElem zero = group_zero(tail);
      GroupElem hp = group_join(tail, h, zero);
      GroupElem hn = group_join(tail, group_neg(tail, h), zero);
      return std::make_pair(m_group(detail::lex_with_head(G, g_int(0), hp)),
                            m_group(detail::lex_with_head(G, g_int(0), hn)));
    };
    return out;
  }
  fail(ErrorKind::UnsupportedShape, "radical-pair group for this perfect shape");
}

/// G |-> the interval [0,(1,0)] of Z x_lex G; a perfect algebra. The trivial
/// group maps to the two-element chain directly.
inline MvAlgebraDesc g_functor(const OrderedGroupDesc &G) {
  validate_group(G);
  if (G.kind == OrderedGroupDesc::Kind::Direct && G.components.empty())
    return finite_chain(2);
  if (!is_totally_ordered(G))
    fail(ErrorKind::UnsupportedShape,
         "supported group descriptors for the perfect image are totally ordered");
  MvAlgebraDesc out = gamma_desc(lex_product({integers(), G}),
                                 g_tuple({g_int(1), group_zero(G)}));
  return out;
}

struct RoundtripReport {
  std::string direction;
  VerificationInfo identity;
  VerificationInfo hom;
  std::vector<std::string> notes;
};

/// D(G(G)) ~ G with the explicit two-sided inverses, on seeded samples.
inline RoundtripReport roundtrip_group(const OrderedGroupDesc &G,
                                       const SampleParams &params = {},
                                       std::size_t cap = kDefaultIdealCap) {
  MvAlgebraDesc B = g_functor(G);
  DFunctorResult D = d_functor(B, cap, params);
  if (!(D.group == G))
    fail(ErrorKind::VerificationFailed, "the radical-pair group has the wrong shape");

  RoundtripReport rep;
  rep.direction = "D(G(G)) ~ G";
  SplitMix64 rng(params.seed);
  for (std::size_t i = 0; i < params.count; ++i) {
    GroupElem g = sample_group_elem(G, rng);
    GroupElem h = sample_group_elem(G, rng);
    auto pg = D.pair_of(g);
    auto ph = D.pair_of(h);
    if (!(D.class_of(pg.first, pg.second) == g))
      fail(ErrorKind::VerificationFailed, "round-trip is not the identity");
    // addition of classes is componentwise truncated sum of the pairs
    MvElem sx = mv_plus(B, pg.first, ph.first);
    MvElem sy = mv_plus(B, pg.second, ph.second);
    if (!(D.class_of(sx, sy) == group_add(G, g, h)))
      fail(ErrorKind::VerificationFailed, "class addition disagrees with the group");
    // -[x,y] = [y,x]
    if (!(D.class_of(pg.second, pg.first) == group_neg(G, g)))
      fail(ErrorKind::VerificationFailed, "class negation disagrees with the group");
    // order: [x,y] <= [x',y'] iff x (+) y' <= x' (+) y
    bool lhs = group_leq(G, g, h);
    bool rhs = mv_leq(B, mv_plus(B, pg.first, ph.second), mv_plus(B, ph.first, pg.second));
    if (lhs != rhs)
      fail(ErrorKind::VerificationFailed, "class order disagrees with the group");
    rep.identity.checked++;
  }
  rep.identity.strategy = rep.hom.strategy = "sampled";
  rep.identity.seed = rep.hom.seed = params.seed;
  rep.hom.checked = rep.identity.checked;
  rep.identity.passed = rep.hom.passed = true;
  return rep;
}

/// G(D(A)) ~ A with the explicit two-sided inverses, on seeded samples.
inline RoundtripReport roundtrip_algebra(const MvAlgebraDesc &A,
                                         const SampleParams &params = {},
                                         std::size_t cap = kDefaultIdealCap) {
  DFunctorResult D = d_functor(A, cap, params);
  MvAlgebraDesc B = g_functor(D.group);

  MvAlgebraDesc Adesc = A;
  DFunctorResult Dcopy = D;
  bool b_is_two_chain = B.kind == MvAlgebraDesc::Kind::FiniteChain;

  auto forward = [Adesc, Dcopy, B, b_is_two_chain](const MvElem &x) -> MvElem {
    if (b_is_two_chain)
      return x; // both sides are the two-element chain
    const OrderedGroupDesc &BG = *B.group;
    if (ideal_member(Adesc, Ideal::radical(), x)) {
      GroupElem h = Dcopy.class_of(x, mv_zero(Adesc));
      return m_group(detail::lex_with_head(BG, g_int(0), h));
    }
    GroupElem h = Dcopy.class_of(mv_neg(Adesc, x), mv_zero(Adesc));
    return mv_neg(B, m_group(detail::lex_with_head(BG, g_int(0), h)));
  };
  auto backward = [Adesc, Dcopy, B, b_is_two_chain](const MvElem &b) -> MvElem {
    if (b_is_two_chain)
      return b;
    const OrderedGroupDesc &BG = *B.group;
    auto from_radical = [&](const MvElem &r) {
      GroupElem h = detail::lex_tail_elem(BG, r.as_group());
      auto pair = Dcopy.pair_of(h);
      return mv_minus(Adesc, pair.first, pair.second);
    };
    if (ideal_member(B, Ideal::radical(), b))
      return from_radical(b);
    return mv_neg(Adesc, from_radical(mv_neg(B, b)));
  };

  RoundtripReport rep;
  rep.direction = "G(D(A)) ~ A";
  SplitMix64 rng(params.seed);
  for (std::size_t i = 0; i < params.count; ++i) {
    MvElem x = sample_mv_elem(A, rng);
    MvElem y = sample_mv_elem(A, rng);
    if (backward(forward(x)) != x)
      fail(ErrorKind::VerificationFailed, "round-trip is not the identity on A");
    if (forward(mv_plus(A, x, y)) != mv_plus(B, forward(x), forward(y)))
      fail(ErrorKind::VerificationFailed, "forward map does not preserve (+)");
    if (forward(mv_neg(A, x)) != mv_neg(B, forward(x)))
      fail(ErrorKind::VerificationFailed, "forward map does not preserve negation");
    MvElem b = sample_mv_elem(B, rng);
    if (forward(backward(b)) != b)
      fail(ErrorKind::VerificationFailed, "round-trip is not the identity on G(D(A))");
    rep.identity.checked++;
  }
  rep.identity.strategy = rep.hom.strategy = "sampled";
  rep.identity.seed = rep.hom.seed = params.seed;
  rep.hom.checked = rep.identity.checked;
  rep.identity.passed = rep.hom.passed = true;
  return rep;
}

// ---------------------------------------------------------------------------
// Quasi-constant algebras
// ---------------------------------------------------------------------------

struct QuasiConstantWitness {
  bool member = false;
  MvElem anchor;                   // f(0)
  Rat anchor_class;                // standard value of the anchor in U/Rad
  std::vector<MvElem> distances;   // d(f(i), anchor) per site
  std::size_t failing_site = 0;    // meaningful when !member
};

/// The algebra of quasi-constant functions over a local base, with sampled
/// closure and locality verification (fail-stop).
inline MvAlgebraDesc quasi_constant_algebra(const MvAlgebraDesc &U, std::size_t sites,
                                            std::size_t cap = kDefaultIdealCap,
                                            const SampleParams &params = {}) {
  if (!classify(U, cap, params).is_local)
    fail(ErrorKind::BaseNotSupported, "quasi-constant base must be local");
  MvAlgebraDesc K = quasi_constant_desc(U, sites);

  SplitMix64 rng(params.seed);
  std::size_t closure_samples = std::min<std::size_t>(params.count, 200);
  for (std::size_t i = 0; i < closure_samples; ++i) {
    MvElem f = sample_mv_elem(K, rng);
    MvElem g = sample_mv_elem(K, rng);
    if (!mv_contains(K, mv_plus(K, f, g)) || !mv_contains(K, mv_neg(K, f)))
      fail(ErrorKind::VerificationFailed, "quasi-constant functions are not closed");
  }
  if (!mv_contains(K, mv_zero(K)))
    fail(ErrorKind::VerificationFailed, "zero function is not quasi-constant");
  if (!classify(K, cap, params).is_local)
    fail(ErrorKind::VerificationFailed, "quasi-constant algebra is not local");
  return K;
}

/// Membership of a site tuple in K(U^X), with the anchor-class witness.
inline QuasiConstantWitness is_quasi_constant(const MvAlgebraDesc &U,
                                              const std::vector<MvElem> &sites,
                                              std::size_t cap = kDefaultIdealCap,
                                              const SampleParams &params = {}) {
  if (sites.empty())
    fail(ErrorKind::ShapeMismatch, "empty site tuple");
  if (!classify(U, cap, params).is_local)
    fail(ErrorKind::BaseNotSupported, "quasi-constant base must be local");
  Ideal rad = radical(U, cap, params);

  QuasiConstantWitness w;
  w.anchor = sites[0];
  w.member = true;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    MvElem d = mv_dist(U, sites[i], w.anchor);
    w.distances.push_back(d);
    if (w.member && !ideal_member(U, rad, d)) {
      w.member = false;
      w.failing_site = i;
    }
  }
  QuotientResult q = quotient(U, rad, cap);
  Ideal rad2 = radical(q.algebra, cap);
  QuotientResult q2 = quotient(q.algebra, rad2, cap);
  w.anchor_class = chain_value(q2.algebra, q2.project(q.project(w.anchor)), cap);
  return w;
}

// ---------------------------------------------------------------------------
// Separating terms
// ---------------------------------------------------------------------------

/// One-variable term separating x < y in [0,1]: evaluates to exactly 0 at x
/// and exactly 1 at y. Built by the doubling/squaring loop: double while the
/// interval sits in [0,1/2] (this also handles the y = 1/2 boundary), square
/// while it sits in [1/2,1] or straddles 1/2; once an endpoint pins to its
/// pole the other endpoint is driven to the opposite pole. Each unclipped
/// stage doubles the gap and each clipped stage doubles the free endpoint's
/// distance to its pole, so the stage count is at most
/// 2*ceil(log2(1/(y-x))) + 4.
struct SeparatingTerm {
  TermPtr term;
  std::vector<char> stages; // 'D' = t(+)t, 'S' = t(.)t, applied left to right
  Rat value_at_x, value_at_y;
};

inline SeparatingTerm separating_term(const Rat &x, const Rat &y,
                                      const std::string &var = "x") {
  if (x < Rat(0) || y > Rat(1))
    fail(ErrorKind::OutOfUnitInterval, "separating term needs 0 <= x < y <= 1");
  if (!(x < y))
    fail(ErrorKind::NotStrictlyOrdered, "separating term needs x < y");

  SeparatingTerm out;
  out.term = t_var(var);
  Rat a = x, b = y;
  const Rat half(Int(1), Int(2));
  while (!(a == Rat(0) && b == Rat(1))) {
    char op;
    if (a == Rat(0))
      op = 'D';
    else if (b == Rat(1))
      op = 'S';
    else if (b <= half)
      op = 'D';
    else
      op = 'S'; // covers [1/2,1] and the straddle, which pins a to 0
    if (op == 'D') {
      out.term = t_plus(out.term, out.term);
      a = rat_min(Rat(1), a + a);
      b = rat_min(Rat(1), b + b);
    } else {
      out.term = t_times(out.term, out.term);
      a = rat_max(Rat(0), a + a - Rat(1));
      b = rat_max(Rat(0), b + b - Rat(1));
    }
    out.stages.push_back(op);
    if (out.stages.size() > 4096)
      fail(ErrorKind::VerificationFailed, "separating term failed to converge");
  }
  out.value_at_x = a;
  out.value_at_y = b;

  MvAlgebraDesc Q = unit_interval_q();
  if (eval_term(Q, out.term, {{var, m_rat(x)}}) != m_rat(Rat(0)) ||
      eval_term(Q, out.term, {{var, m_rat(y)}}) != m_rat(Rat(1)))
    fail(ErrorKind::VerificationFailed, "separating term misses its poles");
  return out;
}

// ---------------------------------------------------------------------------
// Prime independence of radical classes
// ---------------------------------------------------------------------------

struct PropSpecReport {
  bool algebra_is_local = false;
  bool holds = false; // positive direction: all double-quotient values agree
  std::string strategy;
  std::size_t checked = 0;
  std::uint64_t seed = 0;
  // counterexample on a non-local algebra
  std::optional<MvElem> witness_x;
  std::size_t prime_p = 0, prime_q = 0;
  Rat value_p, value_q;
  std::vector<char> term_stages;
  bool counterexample_valid = false;
};

/// For a local algebra: (x/P)/Rad(A/P) is the same rational for every prime
/// P, checked over samples (or the whole carrier). For a non-local algebra:
/// reproduces the proof's contrapositive by exhibiting x and primes P, Q
/// with different values, a term separating them, and the two infinite
/// orders this forces.
inline PropSpecReport verify_prop_spec(const MvAlgebraDesc &A,
                                       std::size_t cap = kDefaultIdealCap,
                                       const SampleParams &params = {}) {
  PropSpecReport rep;
  rep.algebra_is_local = classify(A, cap, params).is_local;
  auto primes = spec(A, cap, params);

  if (rep.algebra_is_local) {
    rep.holds = true;
    auto check_one = [&](const MvElem &x) {
      Rat first = double_quotient_value(A, primes[0], x, cap);
      for (std::size_t p = 1; p < primes.size(); ++p)
        if (!(double_quotient_value(A, primes[p], x, cap) == first)) {
          rep.holds = false;
          rep.witness_x = x;
          return;
        }
      ++rep.checked;
    };
    if (auto carrier = finite_carrier(A, cap)) {
      rep.strategy = "exhaustive";
      for (const auto &x : *carrier) {
        check_one(x);
        if (!rep.holds)
          break;
      }
    } else {
      rep.strategy = "sampled";
      rep.seed = params.seed;
      SplitMix64 rng(params.seed);
      for (std::size_t i = 0; i < params.count && rep.holds; ++i)
        check_one(sample_mv_elem(A, rng));
    }
    return rep;
  }

  // non-local: find the documented witness (finite algebras only)
  auto carrier = finite_carrier(A, cap);
  if (!carrier)
    fail(ErrorKind::UnsupportedShape,
         "the counterexample search needs a finite non-local algebra");
  rep.strategy = "exhaustive";
  for (const auto &x : *carrier) {
    for (std::size_t p = 0; p < primes.size(); ++p) {
      for (std::size_t q = p + 1; q < primes.size(); ++q) {
        Rat vp = double_quotient_value(A, primes[p], x, cap);
        Rat vq = double_quotient_value(A, primes[q], x, cap);
        ++rep.checked;
        if (vp == vq)
          continue;
        std::size_t lo = vp < vq ? p : q, hi = vp < vq ? q : p;
        Rat r = rat_min(vp, vq), s = rat_max(vp, vq);
        SeparatingTerm phi = separating_term(r, s);
        MvElem px = eval_term(A, phi.term, {{"x", x}});
        bool ords = !ord_of(A, px).has_value() && !ord_of(A, mv_neg(A, px)).has_value();
        // phi(x)/P sits in Rad(A/P), and the negation in Rad(A/Q)
        bool in_p = double_quotient_value(A, primes[lo], px, cap) == Rat(0);
        bool in_q = double_quotient_value(A, primes[hi], mv_neg(A, px), cap) == Rat(0);
        rep.witness_x = x;
        rep.prime_p = lo;
        rep.prime_q = hi;
        rep.value_p = r;
        rep.value_q = s;
        rep.term_stages = phi.stages;
        rep.counterexample_valid = ords && in_p && in_q;
        rep.holds = false;
        return rep;
      }
    }
  }
  fail(ErrorKind::VerificationFailed,
       "no counterexample found although the algebra is not local");
}

// ---------------------------------------------------------------------------
// Embeddings of chains into the surrogate interval
// ---------------------------------------------------------------------------

namespace detail {

/// Leaves of an element of a supported chain inside the depth-d surrogate:
/// the head is scaled to [0,1], lex tails pass through, everything is padded
/// with zeros.
inline std::function<std::vector<Rat>(const MvElem &)>
chain_leaf_embedding(const MvAlgebraDesc &C, std::size_t depth, std::size_t cap) {
  switch (C.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return [depth](const MvElem &e) {
      std::vector<Rat> leaves(depth, Rat(0));
      leaves[0] = e.as_rat();
      return leaves;
    };
  case MvAlgebraDesc::Kind::Gamma: {
    auto kinds = flatten_lex_kinds(*C.group);
    if (!kinds || kinds->size() > depth)
      fail(ErrorKind::UnsupportedShape, "chain does not fit the surrogate depth");
    std::vector<Rat> us;
    flatten_lex_elem(*C.group, *C.unit, us);
    if (!(us[0] > Rat(0)))
      fail(ErrorKind::UnsupportedShape, "chain embedding needs a positive head unit");
    for (std::size_t i = 1; i < us.size(); ++i)
      if (!(us[i] == Rat(0)))
        fail(ErrorKind::UnsupportedShape, "chain embedding needs a (k,0,...) unit");
    const OrderedGroupDesc G = *C.group;
    Rat k = us[0];
    return [G, k, depth](const MvElem &e) {
      std::vector<Rat> xs;
      flatten_lex_elem(G, e.as_group(), xs);
      std::vector<Rat> leaves(depth, Rat(0));
      leaves[0] = xs[0] / k;
      for (std::size_t i = 1; i < xs.size(); ++i)
        leaves[i] = xs[i];
      return leaves;
    };
  }
  case MvAlgebraDesc::Kind::Quotient: {
    MvAlgebraDesc C2 = C;
    return [C2, depth, cap](const MvElem &e) {
      std::vector<Rat> leaves(depth, Rat(0));
      leaves[0] = chain_value(C2, e, cap);
      return leaves;
    };
  }
  default:
    fail(ErrorKind::UnsupportedShape, "no surrogate embedding for this chain");
  }
}

inline std::size_t gamma_flat_depth(const MvAlgebraDesc &A) {
  if (A.kind != MvAlgebraDesc::Kind::Gamma)
    return 1;
  auto kinds = flatten_lex_kinds(*A.group);
  return kinds ? kinds->size() : 1;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Local representation (quasi-constant functions over the surrogate)
// ---------------------------------------------------------------------------

/// Embeds a local algebra into quasi-constant functions over the surrogate
/// interval, one site per prime. Besides the homomorphism and injectivity
/// checks, every tested image is checked to be quasi-constant with the
/// anchor class predicted by the prime-independence property.
inline Embedding local_representation(const MvAlgebraDesc &A, std::size_t depth = 2,
                                      std::size_t cap = kDefaultIdealCap,
                                      const SampleParams &params = {}) {
  if (!classify(A, cap, params).is_local)
    fail(ErrorKind::NotLocal, "local representation needs a local algebra");

  std::size_t eff_depth = std::max(depth, detail::gamma_flat_depth(A));
  OrderedGroupDesc S = nonstandard_reals(eff_depth);
  std::vector<Rat> unit_leaves(eff_depth, Rat(0));
  unit_leaves[0] = Rat(1);
  std::size_t pos = 0;
  GroupElem unit_s = unflatten_lex_elem(S, unit_leaves, pos);
  MvAlgebraDesc B = gamma_desc(S, unit_s);

  auto primes = spec(A, cap, params);
  std::vector<std::function<MvElem(const MvElem &)>> coords;
  for (const auto &P : primes) {
    QuotientResult q = quotient(A, P, cap);
    auto leaves_fn = detail::chain_leaf_embedding(q.algebra, eff_depth, cap);
    auto project = q.project;
    const OrderedGroupDesc Scopy = S;
    coords.push_back([project, leaves_fn, Scopy](const MvElem &x) {
      std::vector<Rat> leaves = leaves_fn(project(x));
      std::size_t p = 0;
      return m_group(unflatten_lex_elem(Scopy, leaves, p));
    });
  }

  MvAlgebraDesc target = quasi_constant_desc(B, primes.size());
  auto coord_fns =
      std::make_shared<std::vector<std::function<MvElem(const MvElem &)>>>(coords);
  auto map = [coord_fns](const MvElem &x) {
    std::vector<MvElem> parts;
    parts.reserve(coord_fns->size());
    for (const auto &f : *coord_fns)
      parts.push_back(f(x));
    return m_tuple(std::move(parts));
  };

  Embedding e;
  e.source = A;
  e.target = target;
  e.map = map;
  auto [hom, inj] = detail::verify_mv_embedding(A, target, map, cap, params);
  e.hom = hom;
  e.injectivity = inj;

  // quasi-constancy of images, with the predicted anchor class
  auto check_image = [&](const MvElem &x) {
    MvElem fx = map(x);
    if (!mv_contains(target, fx))
      fail(ErrorKind::VerificationFailed, "an image is not quasi-constant");
    Rat rx = double_quotient_value(A, primes[0], x, cap);
    std::vector<Rat> leaves(eff_depth, Rat(0));
    leaves[0] = rx;
    std::size_t p = 0;
    MvElem anchor = m_group(unflatten_lex_elem(S, leaves, p));
    for (const auto &site : fx.as_tuple()) {
      MvElem d = mv_dist(B, site, anchor);
      if (ord_of(B, d).has_value())
        fail(ErrorKind::VerificationFailed,
             "an image coordinate leaves the predicted anchor class");
    }
  };
  if (auto carrier = finite_carrier(A, cap)) {
    for (const auto &x : *carrier)
      check_image(x);
  } else {
    SplitMix64 rng(params.seed + 1);
    for (std::size_t i = 0; i < params.count; ++i)
      check_image(sample_mv_elem(A, rng));
  }

  e.notes.push_back(detail::surrogate_note(eff_depth));
  e.notes.push_back("sites: one per prime of Spec A (" + std::to_string(primes.size()) +
                    ")");
  return e;
}

// ---------------------------------------------------------------------------
// Perfect representation (functions valued in the perfect surrogate)
// ---------------------------------------------------------------------------

/// Embeds a perfect algebra into functions over Spec A valued in the
/// interval [0,(1,0)] of Z x_lex Lex(Q,...,Q): per prime, the radical-pair
/// group of A/P embeds coordinatewise into the divisible tail, and the
/// induced interval embedding composes with the subdirect projection.
inline Embedding perfect_representation(const MvAlgebraDesc &A, std::size_t depth = 2,
                                        std::size_t cap = kDefaultIdealCap,
                                        const SampleParams &params = {}) {
  if (!classify(A, cap, params).is_perfect)
    fail(ErrorKind::NotPerfect, "perfect representation needs a perfect algebra");

  std::size_t tail_depth = std::max<std::size_t>(
      depth, detail::gamma_flat_depth(A) > 1 ? detail::gamma_flat_depth(A) - 1 : 1);
  OrderedGroupDesc S = nonstandard_reals(tail_depth);
  OrderedGroupDesc BG = lex_product({integers(), S});
  MvAlgebraDesc B = gamma_desc(BG, g_tuple({g_int(1), group_zero(S)}));

  auto primes = spec(A, cap, params);
  std::vector<std::function<MvElem(const MvElem &)>> coords;
  for (const auto &P : primes) {
    QuotientResult q = quotient(A, P, cap);
    const MvAlgebraDesc AP = q.algebra;
    auto project = q.project;

    std::function<MvElem(const MvElem &)> embed;
    if (finite_size(AP)) {
      if (!(*finite_size(AP) == Int(2)))
        fail(ErrorKind::UnsupportedShape, "finite perfect chains have two elements");
      MvAlgebraDesc APc = AP;
      MvAlgebraDesc Bc = B;
      std::size_t capc = cap;
      embed = [APc, Bc, capc](const MvElem &v) {
        return chain_value(APc, v, capc) == Rat(0) ? mv_zero(Bc) : mv_one(Bc);
      };
    } else if (auto s = detail::lex_gamma_shape(AP);
               s && s->head_is_int && s->unit_head == Rat(1)) {
      const OrderedGroupDesc APG = *AP.group;
      const OrderedGroupDesc BGc = BG;
      std::size_t d = tail_depth;
      embed = [APG, BGc, d](const MvElem &v) {
        std::vector<Rat> xs;
        flatten_lex_elem(APG, v.as_group(), xs);
        std::vector<Rat> leaves(1 + d, Rat(0));
        for (std::size_t i = 0; i < xs.size(); ++i)
          leaves[i] = xs[i];
        std::size_t p = 0;
        return m_group(unflatten_lex_elem(BGc, leaves, p));
      };
    } else {
      fail(ErrorKind::UnsupportedShape, "unsupported perfect prime quotient");
    }
    coords.push_back([project, embed](const MvElem &x) { return embed(project(x)); });
  }

  MvAlgebraDesc target = function_algebra(B, primes.size());
  auto coord_fns =
      std::make_shared<std::vector<std::function<MvElem(const MvElem &)>>>(coords);
  auto map = [coord_fns](const MvElem &x) {
    std::vector<MvElem> parts;
    parts.reserve(coord_fns->size());
    for (const auto &f : *coord_fns)
      parts.push_back(f(x));
    return m_tuple(std::move(parts));
  };

  Embedding e;
  e.source = A;
  e.target = target;
  e.map = map;
  auto [hom, inj] = detail::verify_mv_embedding(A, target, map, cap, params);
  e.hom = hom;
  e.injectivity = inj;
  e.notes.push_back(detail::surrogate_note(tail_depth));
  e.notes.push_back("per prime, the radical-pair group of A/P embeds "
                    "coordinatewise into the divisible tail");
  return e;
}

// ---------------------------------------------------------------------------
// Local unital groups as quasi-constant functions
// ---------------------------------------------------------------------------

struct GroupEmbedding {
  OrderedGroupDesc source;
  GroupElem source_unit;
  OrderedGroupDesc target;
  GroupElem target_unit;
  std::function<GroupElem(const GroupElem &)> map;
  VerificationInfo hom;
  VerificationInfo injectivity;
  VerificationInfo order;
  std::vector<std::string> notes;
};

/// Transports the local representation of gamma(G,u) through the inverse
/// equivalence: a local unital group embeds into the group of quasi-constant
/// functions over the surrogate with the constant-one strong unit. Per
/// prime, the zero prime carries the full (scaled) lex embedding and the
/// radical prime carries the standard part; both agree with the MV-side
/// embedding on [0,u], which the construction re-checks on samples.
inline GroupEmbedding group_qc_representation(const OrderedGroupDesc &G, const GroupElem &u,
                                              std::size_t depth = 2,
                                              std::size_t cap = kDefaultIdealCap,
                                              const SampleParams &params = {}) {
  validate_group(G);
  if (!is_strong_unit(G, u).is_strong)
    fail(ErrorKind::InvalidUnit, "the distinguished element is not a strong unit");
  if (!lgroup_is_local(G, u, cap, params))
    fail(ErrorKind::NotLocal, "the unital group is not local");
  if (!flatten_lex_kinds(G))
    fail(ErrorKind::UnsupportedShape, "supported unital groups are pure lex towers");

  std::vector<Rat> us;
  flatten_lex_elem(G, u, us);
  if (!(us[0] > Rat(0)))
    fail(ErrorKind::UnsupportedShape, "the unit must have a positive head");
  for (std::size_t i = 1; i < us.size(); ++i)
    if (!(us[i] == Rat(0)))
      fail(ErrorKind::UnsupportedShape, "the unit must be (k,0,...) shaped");
  const Rat k = us[0];

  MvAlgebraDesc A = gamma_desc(G, u);
  Embedding E = local_representation(A, depth, cap, params);
  const MvAlgebraDesc B = *E.target.base; // gamma(S, (1,0,...))
  const OrderedGroupDesc S = *B.group;
  const GroupElem unit_s = *B.unit;
  const std::size_t eff_depth = flatten_lex_kinds(S)->size();
  const std::size_t sites = E.target.sites;

  auto primes = spec(A, cap, params);
  std::vector<bool> full_coord; // full lex embedding vs standard part
  for (const auto &P : primes) {
    bool is_zero = P.kind == Ideal::Kind::Zero ||
                   (P.kind == Ideal::Kind::Explicit && P.elems.size() == 1);
    bool is_rad = P.kind == Ideal::Kind::Radical;
    if (!is_zero && !is_rad)
      fail(ErrorKind::UnsupportedShape, "unexpected prime for a lex unital group");
    full_coord.push_back(is_zero);
  }

  OrderedGroupDesc K = quasi_constant_group(S, unit_s, sites);
  GroupElem target_unit = g_tuple(std::vector<GroupElem>(sites, unit_s));

  const OrderedGroupDesc Gc = G;
  const OrderedGroupDesc Sc = S;
  auto map = [Gc, Sc, k, eff_depth, full_coord](const GroupElem &x) {
    std::vector<Rat> xs;
    flatten_lex_elem(Gc, x, xs);
    std::vector<GroupElem> parts;
    parts.reserve(full_coord.size());
    for (bool full : full_coord) {
      std::vector<Rat> leaves(eff_depth, Rat(0));
      leaves[0] = xs[0] / k;
      if (full)
        for (std::size_t i = 1; i < xs.size(); ++i)
          leaves[i] = xs[i];
      std::size_t p = 0;
      parts.push_back(unflatten_lex_elem(Sc, leaves, p));
    }
    return g_tuple(std::move(parts));
  };

  GroupEmbedding ge;
  ge.source = G;
  ge.source_unit = u;
  ge.target = K;
  ge.target_unit = target_unit;
  ge.map = map;

  if (!(map(u) == target_unit))
    fail(ErrorKind::VerificationFailed, "the unit does not map to the constant one");

  SplitMix64 rng(params.seed);
  for (std::size_t i = 0; i < params.count; ++i) {
    GroupElem g = sample_group_elem(G, rng);
    GroupElem h = sample_group_elem(G, rng);
    GroupElem mg = map(g), mh = map(h);
    if (!group_contains(K, mg))
      fail(ErrorKind::VerificationFailed, "an image is not quasi-constant");
    if (!(map(group_add(G, g, h)) == group_add(K, mg, mh)))
      fail(ErrorKind::VerificationFailed, "the group map does not preserve addition");
    if (!(g == h) && mg == mh)
      fail(ErrorKind::VerificationFailed, "the group map is not injective");
    auto cg = group_cmp(G, g, h);
    auto ck = group_cmp(K, mg, mh);
    bool lhs_le = cg == std::partial_ordering::less || cg == std::partial_ordering::equivalent;
    bool rhs_le = ck == std::partial_ordering::less || ck == std::partial_ordering::equivalent;
    if (lhs_le != rhs_le)
      fail(ErrorKind::VerificationFailed, "the group map is not an order embedding");
    // agreement with the MV-side embedding on the interval [0, u]
    GroupElem clamped = group_join(G, group_zero(G), group_meet(G, g, u));
    MvElem via_mv = E.map(m_group(clamped));
    GroupElem via_group = map(clamped);
    for (std::size_t s = 0; s < sites; ++s)
      if (!(via_mv.as_tuple()[s].as_group() == via_group.as_tuple()[s]))
        fail(ErrorKind::VerificationFailed,
             "group transport disagrees with the interval embedding");
    ++ge.hom.checked;
  }
  ge.hom.strategy = ge.injectivity.strategy = ge.order.strategy = "sampled";
  ge.hom.seed = ge.injectivity.seed = ge.order.seed = params.seed;
  ge.injectivity.checked = ge.order.checked = ge.hom.checked;
  ge.hom.passed = ge.injectivity.passed = ge.order.passed = true;
  ge.notes.push_back(detail::surrogate_note(eff_depth));
  ge.notes.push_back("unit maps to the constant-one function; order checked both ways");
  return ge;
}

} // namespace mvkit

#endif
