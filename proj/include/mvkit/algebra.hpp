#ifndef MVKIT_ALGEBRA_HPP
#define MVKIT_ALGEBRA_HPP

// Concrete MV-algebras and their element arithmetic.
//
// An algebra is a descriptor (finite chain, product, [0,1] over Q, an order
// interval [0,u] of an ordered group, a quotient, quasi-constant or plain
// function algebras over a finite site set); an element is a tagged value
// whose shape must match its descriptor. All operations are exact, pure and
// check element validity eagerly; descriptors are immutable after
// construction (quotients precompute their congruence table then), so
// everything is safe for concurrent read-only use.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mvkit/error.hpp"
#include "mvkit/group.hpp"
#include "mvkit/rational.hpp"
#include "mvkit/term.hpp"

namespace mvkit {

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

struct MvElem {
  using Tuple = std::vector<MvElem>;
  using ClassBox = std::shared_ptr<const MvElem>;

  std::variant<Rat, Tuple, GroupElem, ClassBox> v;

  bool is_rat() const { return std::holds_alternative<Rat>(v); }
  bool is_tuple() const { return std::holds_alternative<Tuple>(v); }
  bool is_group() const { return std::holds_alternative<GroupElem>(v); }
  bool is_class() const { return std::holds_alternative<ClassBox>(v); }

  const Rat &as_rat() const { return std::get<Rat>(v); }
  const Tuple &as_tuple() const { return std::get<Tuple>(v); }
  const GroupElem &as_group() const { return std::get<GroupElem>(v); }
  const MvElem &as_class() const { return *std::get<ClassBox>(v); }
};

inline MvElem m_rat(Rat r) { return MvElem{std::move(r)}; }
inline MvElem m_tuple(std::vector<MvElem> xs) { return MvElem{std::move(xs)}; }
inline MvElem m_group(GroupElem g) { return MvElem{std::move(g)}; }
inline MvElem m_class(MvElem rep) {
  return MvElem{std::make_shared<const MvElem>(std::move(rep))};
}

inline bool operator==(const MvElem &a, const MvElem &b) {
  if (a.v.index() != b.v.index())
    return false;
  if (a.is_rat())
    return a.as_rat() == b.as_rat();
  if (a.is_group())
    return a.as_group() == b.as_group();
  if (a.is_class())
    return a.as_class() == b.as_class();
  const auto &xs = a.as_tuple();
  const auto &ys = b.as_tuple();
  if (xs.size() != ys.size())
    return false;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!(xs[i] == ys[i]))
      return false;
  return true;
}

inline bool operator!=(const MvElem &a, const MvElem &b) { return !(a == b); }

/// Total encoding order for canonical sorting; unrelated to the MV order.
inline bool mv_encoding_less(const MvElem &a, const MvElem &b) {
  if (a.v.index() != b.v.index())
    return a.v.index() < b.v.index();
  if (a.is_rat())
    return a.as_rat() < b.as_rat();
  if (a.is_group())
    return elem_encoding_less(a.as_group(), b.as_group());
  if (a.is_class())
    return mv_encoding_less(a.as_class(), b.as_class());
  const auto &xs = a.as_tuple();
  const auto &ys = b.as_tuple();
  if (xs.size() != ys.size())
    return xs.size() < ys.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (mv_encoding_less(xs[i], ys[i]))
      return true;
    if (mv_encoding_less(ys[i], xs[i]))
      return false;
  }
  return false;
}

struct MvElemLess {
  bool operator()(const MvElem &a, const MvElem &b) const { return mv_encoding_less(a, b); }
};

// ---------------------------------------------------------------------------
// Ideals (data only; the laws live in spectra.hpp)
// ---------------------------------------------------------------------------

struct Ideal {
  enum class Kind { Explicit, Zero, Radical, Whole, ProductKernel };

  Kind kind = Kind::Zero;
  std::vector<MvElem> elems;    // Explicit, sorted by encoding order
  std::set<std::size_t> zeroed; // ProductKernel: factor indices pinned to 0

  static Ideal zero() { return {Kind::Zero, {}, {}}; }
  static Ideal radical() { return {Kind::Radical, {}, {}}; }
  static Ideal whole() { return {Kind::Whole, {}, {}}; }
  static Ideal product_kernel(std::set<std::size_t> z) {
    return {Kind::ProductKernel, {}, std::move(z)};
  }
  static Ideal explicit_set(std::vector<MvElem> xs) {
    std::sort(xs.begin(), xs.end(), MvElemLess{});
    xs.erase(std::unique(xs.begin(), xs.end(),
                         [](const MvElem &a, const MvElem &b) { return a == b; }),
             xs.end());
    return {Kind::Explicit, std::move(xs), {}};
  }
};

inline bool operator==(const Ideal &a, const Ideal &b) {
  return a.kind == b.kind && a.elems == b.elems && a.zeroed == b.zeroed;
}

// ---------------------------------------------------------------------------
// Algebra descriptors
// ---------------------------------------------------------------------------

/// Congruence table of a finite-base quotient, computed once at descriptor
/// construction: canon[i] is the index of the encoding-least member of the
/// class of base_carrier[i].
struct QuotientTable {
  std::vector<MvElem> base_carrier; // canonically sorted
  std::vector<std::uint32_t> canon;

  const MvElem &canon_of(const MvElem &x) const {
    auto it = std::lower_bound(base_carrier.begin(), base_carrier.end(), x, MvElemLess{});
    if (it == base_carrier.end() || !(*it == x))
      fail(ErrorKind::ElementNotInAlgebra, "element is not in the quotient base");
    return base_carrier[canon[static_cast<std::size_t>(it - base_carrier.begin())]];
  }
};

struct MvAlgebraDesc {
  enum class Kind {
    FiniteChain,
    Product,
    UnitIntervalQ,
    Gamma,
    Quotient,
    QuasiConstant,
    FunctionAlgebra,
  };

  Kind kind = Kind::FiniteChain;

  std::size_t chain_size = 0;                    // FiniteChain: carrier size n >= 2
  std::vector<MvAlgebraDesc> factors;            // Product
  std::shared_ptr<const OrderedGroupDesc> group; // Gamma
  std::shared_ptr<const GroupElem> unit;         // Gamma
  std::shared_ptr<const MvAlgebraDesc> base;     // Quotient / QuasiConstant / FunctionAlgebra
  std::shared_ptr<const Ideal> ideal;            // Quotient
  std::shared_ptr<const QuotientTable> qtable;   // Quotient
  std::size_t sites = 0;                         // QuasiConstant / FunctionAlgebra
};

inline bool operator==(const MvAlgebraDesc &a, const MvAlgebraDesc &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
    return a.chain_size == b.chain_size;
  case MvAlgebraDesc::Kind::Product:
    return a.factors == b.factors;
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return true;
  case MvAlgebraDesc::Kind::Gamma:
    return *a.group == *b.group && *a.unit == *b.unit;
  case MvAlgebraDesc::Kind::Quotient:
    return *a.base == *b.base && *a.ideal == *b.ideal;
  case MvAlgebraDesc::Kind::QuasiConstant:
  case MvAlgebraDesc::Kind::FunctionAlgebra:
    return a.sites == b.sites && *a.base == *b.base;
  }
  return false;
}

inline bool operator!=(const MvAlgebraDesc &a, const MvAlgebraDesc &b) { return !(a == b); }

inline MvAlgebraDesc finite_chain(std::size_t n) {
  if (n < 2)
    fail(ErrorKind::ShapeMismatch, "finite chain needs at least two elements");
  MvAlgebraDesc d;
  d.kind = MvAlgebraDesc::Kind::FiniteChain;
  d.chain_size = n;
  return d;
}

inline MvAlgebraDesc unit_interval_q() {
  MvAlgebraDesc d;
  d.kind = MvAlgebraDesc::Kind::UnitIntervalQ;
  return d;
}

/// General product descriptor. The DSL-facing path additionally requires all
/// factors finite; embedding targets built by the library may mix infinite
/// coordinates.
inline MvAlgebraDesc mv_product(std::vector<MvAlgebraDesc> fs) {
  if (fs.empty())
    fail(ErrorKind::EmptyProduct, "product of zero algebras");
  MvAlgebraDesc d;
  d.kind = MvAlgebraDesc::Kind::Product;
  d.factors = std::move(fs);
  return d;
}

inline MvAlgebraDesc gamma_desc(OrderedGroupDesc g, GroupElem u) {
  validate_group(g);
  detail::require_shape(g, u);
  if (group_cmp(g, u, group_zero(g)) != std::partial_ordering::greater)
    fail(ErrorKind::InvalidUnit, "gamma unit must be strictly positive");
  MvAlgebraDesc d;
  d.kind = MvAlgebraDesc::Kind::Gamma;
  d.group = std::make_shared<OrderedGroupDesc>(std::move(g));
  d.unit = std::make_shared<GroupElem>(std::move(u));
  return d;
}

/// Komori chain of rank n: the interval [0,(n-1,0)] of Z x_lex Z.
inline MvAlgebraDesc komori(std::size_t n) {
  if (n < 2)
    fail(ErrorKind::ShapeMismatch, "komori rank must be at least 2");
  return gamma_desc(lex_product(integers(), integers()),
                    g_tuple({g_int(Int(n) - 1), g_int(0)}));
}

inline MvAlgebraDesc chang() { return komori(2); }

inline MvAlgebraDesc function_algebra(MvAlgebraDesc base, std::size_t sites) {
  if (sites == 0)
    fail(ErrorKind::ShapeMismatch, "function algebra needs at least one site");
  MvAlgebraDesc d;
  d.kind = MvAlgebraDesc::Kind::FunctionAlgebra;
  d.base = std::make_shared<MvAlgebraDesc>(std::move(base));
  d.sites = sites;
  return d;
}

// forward declarations (definitions below are mutually recursive)
inline bool mv_contains(const MvAlgebraDesc &A, const MvElem &x);
inline MvElem mv_plus(const MvAlgebraDesc &A, const MvElem &x, const MvElem &y);
inline MvElem mv_neg(const MvAlgebraDesc &A, const MvElem &x);
inline MvElem mv_zero(const MvAlgebraDesc &A);
inline std::optional<std::vector<MvElem>> finite_carrier(const MvAlgebraDesc &A,
                                                         std::size_t cap);
inline std::optional<Int> ord_of(const MvAlgebraDesc &A, const MvElem &x);
inline bool structurally_local(const MvAlgebraDesc &A);

inline MvAlgebraDesc quasi_constant_desc(MvAlgebraDesc base, std::size_t sites) {
  if (sites == 0)
    fail(ErrorKind::ShapeMismatch, "quasi-constant algebra needs at least one site");
  if (!structurally_local(base))
    fail(ErrorKind::BaseNotSupported, "quasi-constant base must be a local MV-algebra");
  MvAlgebraDesc d;
  d.kind = MvAlgebraDesc::Kind::QuasiConstant;
  d.base = std::make_shared<MvAlgebraDesc>(std::move(base));
  d.sites = sites;
  return d;
}

// ---------------------------------------------------------------------------
// Structural size / carrier enumeration
// ---------------------------------------------------------------------------

namespace detail {

/// Size of the order interval [0,u] when it is finite, nullopt otherwise.
inline std::optional<Int> gamma_interval_size(const OrderedGroupDesc &g, const GroupElem &u) {
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers:
    return Int(u.as_int() + 1);
  case OrderedGroupDesc::Kind::Rationals:
    return u.as_rat() == Rat(0) ? std::optional<Int>(Int(1)) : std::nullopt;
  case OrderedGroupDesc::Kind::Direct: {
    Int total = 1;
    for (std::size_t i = 0; i < g.components.size(); ++i) {
      auto s = gamma_interval_size(g.components[i], u.as_tuple()[i]);
      if (!s)
        return std::nullopt;
      total *= *s;
    }
    return total;
  }
  case OrderedGroupDesc::Kind::Lex: {
    // [0,(0,rest)] pins the head to 0; a positive head over a nontrivial
    // tail makes the interval infinite.
    if (g.components.size() == 1)
      return gamma_interval_size(g.components[0], u.as_tuple()[0]);
    const auto &head = g.components[0];
    if (!(u.as_tuple()[0] == group_zero(head)))
      return std::nullopt;
    OrderedGroupDesc tail = g.components.size() == 2
                                ? g.components[1]
                                : lex_product(std::vector<OrderedGroupDesc>(
                                      g.components.begin() + 1, g.components.end()));
    GroupElem ut = g.components.size() == 2
                       ? u.as_tuple()[1]
                       : g_tuple(std::vector<GroupElem>(u.as_tuple().begin() + 1,
                                                        u.as_tuple().end()));
    return gamma_interval_size(tail, ut);
  }
  case OrderedGroupDesc::Kind::QuasiConstant:
    return std::nullopt;
  }
  return std::nullopt;
}

inline void gamma_carrier(const OrderedGroupDesc &g, const GroupElem &u,
                          std::vector<GroupElem> &out) {
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers: {
    for (Int i = 0; i <= u.as_int(); ++i)
      out.push_back(g_int(i));
    return;
  }
  case OrderedGroupDesc::Kind::Rationals: {
    if (u.as_rat() == Rat(0)) {
      out.push_back(g_rat(Rat(0)));
      return;
    }
    fail(ErrorKind::InfiniteCarrierExhaustive, "rational interval is infinite");
  }
  case OrderedGroupDesc::Kind::Direct: {
    std::vector<std::vector<GroupElem>> per;
    for (std::size_t i = 0; i < g.components.size(); ++i) {
      per.emplace_back();
      gamma_carrier(g.components[i], u.as_tuple()[i], per.back());
    }
    std::vector<GroupElem> cur;
    auto rec = [&](auto &&self, std::size_t i) -> void {
      if (i == per.size()) {
        out.push_back(g_tuple(cur));
        return;
      }
      for (const auto &e : per[i]) {
        cur.push_back(e);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    return;
  }
  case OrderedGroupDesc::Kind::Lex: {
    if (g.components.size() == 1) {
      std::vector<GroupElem> sub;
      gamma_carrier(g.components[0], u.as_tuple()[0], sub);
      for (auto &e : sub)
        out.push_back(g_tuple({std::move(e)}));
      return;
    }
    const auto &head = g.components[0];
    if (!(u.as_tuple()[0] == group_zero(head)))
      fail(ErrorKind::InfiniteCarrierExhaustive, "lex interval is infinite");
    OrderedGroupDesc tail = g.components.size() == 2
                                ? g.components[1]
                                : lex_product(std::vector<OrderedGroupDesc>(
                                      g.components.begin() + 1, g.components.end()));
    GroupElem ut = g.components.size() == 2
                       ? u.as_tuple()[1]
                       : g_tuple(std::vector<GroupElem>(u.as_tuple().begin() + 1,
                                                        u.as_tuple().end()));
    std::vector<GroupElem> sub;
    gamma_carrier(tail, ut, sub);
    for (auto &e : sub) {
      std::vector<GroupElem> parts;
      parts.push_back(group_zero(head));
      if (g.components.size() == 2)
        parts.push_back(std::move(e));
      else
        for (auto &p : e.as_tuple())
          parts.push_back(p);
      out.push_back(g_tuple(std::move(parts)));
    }
    return;
  }
  case OrderedGroupDesc::Kind::QuasiConstant:
    fail(ErrorKind::InfiniteCarrierExhaustive, "quasi-constant group interval");
  }
}

inline const MvAlgebraDesc &coord_algebra(const MvAlgebraDesc &A, std::size_t i) {
  if (A.kind == MvAlgebraDesc::Kind::Product)
    return A.factors[i];
  return *A.base; // function / quasi-constant sites share the base
}

inline std::size_t coord_count(const MvAlgebraDesc &A) {
  if (A.kind == MvAlgebraDesc::Kind::Product)
    return A.factors.size();
  return A.sites;
}

} // namespace detail

/// Carrier size when finite (structural; no enumeration), nullopt otherwise.
inline std::optional<Int> finite_size(const MvAlgebraDesc &A) {
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
    return Int(A.chain_size);
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return std::nullopt;
  case MvAlgebraDesc::Kind::Product: {
    Int total = 1;
    for (const auto &f : A.factors) {
      auto s = finite_size(f);
      if (!s)
        return std::nullopt;
      total *= *s;
    }
    return total;
  }
  case MvAlgebraDesc::Kind::Gamma:
    return detail::gamma_interval_size(*A.group, *A.unit);
  case MvAlgebraDesc::Kind::Quotient: {
    std::set<std::uint32_t> classes(A.qtable->canon.begin(), A.qtable->canon.end());
    return Int(classes.size());
  }
  case MvAlgebraDesc::Kind::QuasiConstant: {
    // a finite local base is semisimple, so only constants are quasi-constant
    return finite_size(*A.base);
  }
  case MvAlgebraDesc::Kind::FunctionAlgebra: {
    auto s = finite_size(*A.base);
    if (!s)
      return std::nullopt;
    Int total = 1;
    for (std::size_t i = 0; i < A.sites; ++i)
      total *= *s;
    return total;
  }
  }
  return std::nullopt;
}

/// All elements (canonically sorted) when the carrier is finite and no
/// larger than cap; nullopt when infinite.
inline std::optional<std::vector<MvElem>> finite_carrier(const MvAlgebraDesc &A,
                                                         std::size_t cap) {
  auto size = finite_size(A);
  if (!size)
    return std::nullopt;
  if (*size > Int(cap))
    fail(ErrorKind::CarrierTooLarge,
         "carrier has " + size->str() + " elements, cap is " + std::to_string(cap));

  std::vector<MvElem> out;
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain: {
    for (std::size_t i = 0; i < A.chain_size; ++i)
      out.push_back(m_rat(Rat(Int(i), Int(A.chain_size - 1))));
    break;
  }
  case MvAlgebraDesc::Kind::Product: {
    std::vector<std::vector<MvElem>> per;
    for (const auto &f : A.factors)
      per.push_back(*finite_carrier(f, cap));
    std::vector<MvElem> cur;
    auto rec = [&](auto &&self, std::size_t i) -> void {
      if (i == per.size()) {
        out.push_back(m_tuple(cur));
        return;
      }
      for (const auto &e : per[i]) {
        cur.push_back(e);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    break;
  }
  case MvAlgebraDesc::Kind::Gamma: {
    std::vector<GroupElem> gs;
    detail::gamma_carrier(*A.group, *A.unit, gs);
    for (auto &g : gs)
      out.push_back(m_group(std::move(g)));
    break;
  }
  case MvAlgebraDesc::Kind::Quotient: {
    std::set<std::uint32_t> classes(A.qtable->canon.begin(), A.qtable->canon.end());
    for (auto c : classes)
      out.push_back(m_class(A.qtable->base_carrier[c]));
    break;
  }
  case MvAlgebraDesc::Kind::QuasiConstant: {
    // constants only (finite local bases are semisimple)
    auto basecarrier = finite_carrier(*A.base, cap);
    for (const auto &e : *basecarrier)
      out.push_back(m_tuple(std::vector<MvElem>(A.sites, e)));
    break;
  }
  case MvAlgebraDesc::Kind::FunctionAlgebra: {
    auto basecarrier = finite_carrier(*A.base, cap);
    std::vector<MvElem> cur;
    auto rec = [&](auto &&self, std::size_t i) -> void {
      if (i == A.sites) {
        out.push_back(m_tuple(cur));
        return;
      }
      for (const auto &e : *basecarrier) {
        cur.push_back(e);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
    break;
  }
  default:
    return std::nullopt;
  }
  std::sort(out.begin(), out.end(), MvElemLess{});
  return out;
}

// ---------------------------------------------------------------------------
// Element validity and operations
// ---------------------------------------------------------------------------

inline MvElem mv_zero(const MvAlgebraDesc &A) {
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return m_rat(Rat(0));
  case MvAlgebraDesc::Kind::Product: {
    std::vector<MvElem> xs;
    xs.reserve(A.factors.size());
    for (const auto &f : A.factors)
      xs.push_back(mv_zero(f));
    return m_tuple(std::move(xs));
  }
  case MvAlgebraDesc::Kind::Gamma:
    return m_group(group_zero(*A.group));
  case MvAlgebraDesc::Kind::Quotient:
    return m_class(A.qtable->canon_of(mv_zero(*A.base)));
  case MvAlgebraDesc::Kind::QuasiConstant:
  case MvAlgebraDesc::Kind::FunctionAlgebra:
    return m_tuple(std::vector<MvElem>(A.sites, mv_zero(*A.base)));
  }
  fail(ErrorKind::UnsupportedShape, "mv_zero");
}

inline bool mv_contains(const MvAlgebraDesc &A, const MvElem &x) {
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain: {
    if (!x.is_rat())
      return false;
    const Rat &r = x.as_rat();
    if (r < Rat(0) || r > Rat(1))
      return false;
    return (r * Rat(Int(A.chain_size - 1))).is_integer();
  }
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return x.is_rat() && x.as_rat() >= Rat(0) && x.as_rat() <= Rat(1);
  case MvAlgebraDesc::Kind::Product: {
    if (!x.is_tuple() || x.as_tuple().size() != A.factors.size())
      return false;
    for (std::size_t i = 0; i < A.factors.size(); ++i)
      if (!mv_contains(A.factors[i], x.as_tuple()[i]))
        return false;
    return true;
  }
  case MvAlgebraDesc::Kind::Gamma: {
    if (!x.is_group() || !group_contains(*A.group, x.as_group()))
      return false;
    const GroupElem &g = x.as_group();
    return group_leq(*A.group, group_zero(*A.group), g) &&
           group_leq(*A.group, g, *A.unit);
  }
  case MvAlgebraDesc::Kind::Quotient: {
    if (!x.is_class() || !mv_contains(*A.base, x.as_class()))
      return false;
    return x.as_class() == A.qtable->canon_of(x.as_class());
  }
  case MvAlgebraDesc::Kind::FunctionAlgebra: {
    if (!x.is_tuple() || x.as_tuple().size() != A.sites)
      return false;
    for (const auto &s : x.as_tuple())
      if (!mv_contains(*A.base, s))
        return false;
    return true;
  }
  case MvAlgebraDesc::Kind::QuasiConstant: {
    if (!x.is_tuple() || x.as_tuple().size() != A.sites)
      return false;
    for (const auto &s : x.as_tuple())
      if (!mv_contains(*A.base, s))
        return false;
    // one class modulo the radical of the (local) base, anchored at site 0;
    // in a local algebra the radical is exactly the set of infinite order
    const auto &sites = x.as_tuple();
    for (std::size_t i = 1; i < sites.size(); ++i) {
      MvElem di = mv_plus(
          *A.base,
          mv_neg(*A.base, mv_plus(*A.base, mv_neg(*A.base, sites[i]), sites[0])),
          mv_neg(*A.base, mv_plus(*A.base, mv_neg(*A.base, sites[0]), sites[i])));
      if (ord_of(*A.base, di).has_value())
        return false;
    }
    return true;
  }
  }
  return false;
}

namespace detail {

inline void require_member(const MvAlgebraDesc &A, const MvElem &x) {
  if (!mv_contains(A, x))
    fail(ErrorKind::ElementNotInAlgebra, "element is not in the algebra");
}

} // namespace detail

inline MvElem mv_plus(const MvAlgebraDesc &A, const MvElem &x, const MvElem &y) {
  detail::require_member(A, x);
  detail::require_member(A, y);
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return m_rat(rat_min(Rat(1), x.as_rat() + y.as_rat()));
  case MvAlgebraDesc::Kind::Product:
  case MvAlgebraDesc::Kind::FunctionAlgebra:
  case MvAlgebraDesc::Kind::QuasiConstant: {
    std::vector<MvElem> zs;
    std::size_t n = detail::coord_count(A);
    zs.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      zs.push_back(mv_plus(detail::coord_algebra(A, i), x.as_tuple()[i], y.as_tuple()[i]));
    return m_tuple(std::move(zs));
  }
  case MvAlgebraDesc::Kind::Gamma:
    return m_group(group_meet(*A.group, *A.unit,
                              group_add(*A.group, x.as_group(), y.as_group())));
  case MvAlgebraDesc::Kind::Quotient:
    return m_class(A.qtable->canon_of(mv_plus(*A.base, x.as_class(), y.as_class())));
  }
  fail(ErrorKind::UnsupportedShape, "mv_plus");
}

inline MvElem mv_neg(const MvAlgebraDesc &A, const MvElem &x) {
  detail::require_member(A, x);
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return m_rat(Rat(1) - x.as_rat());
  case MvAlgebraDesc::Kind::Product:
  case MvAlgebraDesc::Kind::FunctionAlgebra:
  case MvAlgebraDesc::Kind::QuasiConstant: {
    std::vector<MvElem> zs;
    std::size_t n = detail::coord_count(A);
    zs.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      zs.push_back(mv_neg(detail::coord_algebra(A, i), x.as_tuple()[i]));
    return m_tuple(std::move(zs));
  }
  case MvAlgebraDesc::Kind::Gamma:
    return m_group(group_sub(*A.group, *A.unit, x.as_group()));
  case MvAlgebraDesc::Kind::Quotient:
    return m_class(A.qtable->canon_of(mv_neg(*A.base, x.as_class())));
  }
  fail(ErrorKind::UnsupportedShape, "mv_neg");
}

inline MvElem mv_one(const MvAlgebraDesc &A) { return mv_neg(A, mv_zero(A)); }

// Derived operations, each exactly its expansion into {plus, neg, 0}.

inline MvElem mv_times(const MvAlgebraDesc &A, const MvElem &x, const MvElem &y) {
  return mv_neg(A, mv_plus(A, mv_neg(A, x), mv_neg(A, y)));
}

inline MvElem mv_minus(const MvAlgebraDesc &A, const MvElem &x, const MvElem &y) {
  return mv_times(A, x, mv_neg(A, y));
}

inline MvElem mv_join(const MvAlgebraDesc &A, const MvElem &x, const MvElem &y) {
  return mv_plus(A, mv_minus(A, x, y), y);
}

inline MvElem mv_meet(const MvAlgebraDesc &A, const MvElem &x, const MvElem &y) {
  return mv_times(A, x, mv_plus(A, mv_neg(A, x), y));
}

inline MvElem mv_dist(const MvAlgebraDesc &A, const MvElem &x, const MvElem &y) {
  return mv_plus(A, mv_minus(A, x, y), mv_minus(A, y, x));
}

inline bool mv_leq(const MvAlgebraDesc &A, const MvElem &x, const MvElem &y) {
  return mv_minus(A, x, y) == mv_zero(A);
}

/// n-fold truncated sum. Once the running sum reaches 1 it stays there.
inline MvElem mv_nfold(const MvAlgebraDesc &A, const MvElem &x, const Int &n) {
  MvElem one = mv_one(A);
  MvElem acc = mv_zero(A);
  for (Int i = 0; i < n; ++i) {
    acc = mv_plus(A, acc, x);
    if (acc == one)
      return acc;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Order of an element
// ---------------------------------------------------------------------------

namespace detail {

/// Closed form for totally ordered gamma algebras over pure lex towers.
/// With leaves x = (x_1..x_d) and unit u whose first nonzero leaf is
/// u_j = k > 0 (every carrier element is 0 on the leaves before j), an
/// element with x_j = a > 0 reaches the unit after n0 = ceil(k/a) steps,
/// except that when n0*a lands exactly on k the tails decide between n0 and
/// n0+1; x_j = 0 means the multiples never leave the tail, so the order is
/// infinite. The test suite revalidates this form against iterated
/// truncated sums on sampled elements.
inline std::optional<Int> ord_lex_gamma(const OrderedGroupDesc &g, const GroupElem &u,
                                        const GroupElem &x) {
  std::vector<Rat> xs, us;
  flatten_lex_elem(g, x, xs);
  flatten_lex_elem(g, u, us);
  std::size_t j = 0;
  while (j < us.size() && us[j] == Rat(0))
    ++j;
  if (j == us.size())
    fail(ErrorKind::InvalidUnit, "zero unit");
  const Rat k = us[j];
  const Rat a = xs[j];
  if (a == Rat(0))
    return std::nullopt;
  Int n0 = (k / a).ceil();
  if (a * Rat(n0) > k)
    return n0;
  for (std::size_t i = j + 1; i < xs.size(); ++i) {
    Rat lhs = xs[i] * Rat(n0);
    if (lhs > us[i])
      return n0;
    if (lhs < us[i])
      return n0 + 1;
  }
  return n0;
}

} // namespace detail

/// Least n with n*x = 1, or nullopt when no such n exists.
inline std::optional<Int> ord_of(const MvAlgebraDesc &A, const MvElem &x) {
  detail::require_member(A, x);
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
  case MvAlgebraDesc::Kind::UnitIntervalQ: {
    const Rat &r = x.as_rat();
    if (r == Rat(0))
      return std::nullopt;
    return (Rat(1) / r).ceil();
  }
  case MvAlgebraDesc::Kind::Product:
  case MvAlgebraDesc::Kind::FunctionAlgebra:
  case MvAlgebraDesc::Kind::QuasiConstant: {
    Int best = 0;
    std::size_t n = detail::coord_count(A);
    for (std::size_t i = 0; i < n; ++i) {
      auto o = ord_of(detail::coord_algebra(A, i), x.as_tuple()[i]);
      if (!o)
        return std::nullopt;
      best = std::max(best, *o);
    }
    return best;
  }
  case MvAlgebraDesc::Kind::Gamma: {
    const OrderedGroupDesc &g = *A.group;
    if (flatten_lex_kinds(g))
      return detail::ord_lex_gamma(g, *A.unit, x.as_group());
    if (g.kind == OrderedGroupDesc::Kind::Direct) {
      Int best = 1;
      for (std::size_t i = 0; i < g.components.size(); ++i) {
        const GroupElem &ui = A.unit->as_tuple()[i];
        if (ui == group_zero(g.components[i]))
          continue; // trivial coordinate, both 0 and 1 collapse there
        MvAlgebraDesc Ai = gamma_desc(g.components[i], ui);
        auto o = ord_of(Ai, m_group(x.as_group().as_tuple()[i]));
        if (!o)
          return std::nullopt;
        best = std::max(best, *o);
      }
      return best;
    }
    fail(ErrorKind::UnsupportedShape, "ord unsupported for this gamma group");
  }
  case MvAlgebraDesc::Kind::Quotient: {
    auto size = finite_size(A);
    if (!size)
      fail(ErrorKind::UnsupportedShape, "ord on an infinite quotient");
    MvElem one = mv_one(A);
    MvElem acc = mv_zero(A);
    for (Int n = 1; n <= *size; ++n) {
      acc = mv_plus(A, acc, x);
      if (acc == one)
        return n;
    }
    return std::nullopt;
  }
  }
  fail(ErrorKind::UnsupportedShape, "ord_of");
}

/// Locality decidable at construction time: chains and gamma images of
/// totally ordered groups are local, finite algebras are checked through the
/// order criterion, quasi-constant algebras inherit locality from their
/// (validated) base. classify() in spectra.hpp recomputes locality from
/// first principles; the two must agree on every supported algebra.
inline bool structurally_local(const MvAlgebraDesc &A) {
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return true;
  case MvAlgebraDesc::Kind::Gamma:
    if (is_totally_ordered(*A.group))
      return true;
    break;
  case MvAlgebraDesc::Kind::QuasiConstant:
    return structurally_local(*A.base);
  default:
    break;
  }
  auto carrier = finite_carrier(A, 4096);
  if (!carrier)
    return false;
  for (const auto &x : *carrier) {
    if (ord_of(A, x) || ord_of(A, mv_neg(A, x)))
      continue;
    return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Ideal membership (the part element arithmetic needs; laws in spectra.hpp)
// ---------------------------------------------------------------------------

inline bool ideal_member(const MvAlgebraDesc &A, const Ideal &I, const MvElem &x) {
  detail::require_member(A, x);
  switch (I.kind) {
  case Ideal::Kind::Zero:
    return x == mv_zero(A);
  case Ideal::Kind::Whole:
    return true;
  case Ideal::Kind::Explicit:
    return std::binary_search(I.elems.begin(), I.elems.end(), x, MvElemLess{});
  case Ideal::Kind::ProductKernel: {
    if (A.kind != MvAlgebraDesc::Kind::Product)
      fail(ErrorKind::InvalidIdeal, "product kernel of a non-product algebra");
    for (std::size_t i : I.zeroed)
      if (!(x.as_tuple().at(i) == mv_zero(A.factors.at(i))))
        return false;
    return true;
  }
  case Ideal::Kind::Radical: {
    // componentwise on coordinate algebras; order-infinite set on local ones
    if (A.kind == MvAlgebraDesc::Kind::Product ||
        A.kind == MvAlgebraDesc::Kind::FunctionAlgebra ||
        A.kind == MvAlgebraDesc::Kind::QuasiConstant) {
      std::size_t n = detail::coord_count(A);
      for (std::size_t i = 0; i < n; ++i)
        if (!ideal_member(detail::coord_algebra(A, i), I, x.as_tuple()[i]))
          return false;
      return true;
    }
    if (structurally_local(A))
      return !ord_of(A, x).has_value();
    fail(ErrorKind::UnsupportedShape, "symbolic radical membership for this shape");
  }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Term evaluation
// ---------------------------------------------------------------------------

/// Evaluate t in A under env. Memoized per node so shared-subtree terms
/// (separating terms are deep DAGs) evaluate in O(distinct nodes).
inline MvElem eval_term(const MvAlgebraDesc &A, const TermPtr &t,
                        const std::map<std::string, MvElem> &env) {
  std::map<const TermNode *, MvElem> memo;
  auto rec = [&](auto &&self, const TermNode *n) -> MvElem {
    auto it = memo.find(n);
    if (it != memo.end())
      return it->second;
    MvElem r = mv_zero(A);
    switch (n->kind) {
    case TermNode::Kind::Var: {
      auto e = env.find(n->name);
      if (e == env.end())
        fail(ErrorKind::UnboundVariable, "variable '" + n->name + "' is not bound");
      detail::require_member(A, e->second);
      r = e->second;
      break;
    }
    case TermNode::Kind::Zero:
      r = mv_zero(A);
      break;
    case TermNode::Kind::Neg:
      r = mv_neg(A, self(self, n->a.get()));
      break;
    case TermNode::Kind::Plus:
      r = mv_plus(A, self(self, n->a.get()), self(self, n->b.get()));
      break;
    }
    memo.emplace(n, r);
    return r;
  };
  return rec(rec, t.get());
}

// ---------------------------------------------------------------------------
// Compiled view of a finite algebra
// ---------------------------------------------------------------------------

/// Cayley tables over carrier indices. Exhaustive sweeps (axioms, ideal
/// enumeration, congruences) run on these; witnesses map back through
/// `carrier`.
struct CompiledFinite {
  MvAlgebraDesc desc;
  std::vector<MvElem> carrier; // canonically sorted
  std::size_t n = 0;
  std::vector<std::uint16_t> plus_tab; // n*n
  std::vector<std::uint16_t> neg_tab;  // n
  std::uint16_t zero = 0, one = 0;

  std::uint16_t plus(std::uint16_t i, std::uint16_t j) const { return plus_tab[i * n + j]; }
  std::uint16_t neg(std::uint16_t i) const { return neg_tab[i]; }
  std::uint16_t minus(std::uint16_t i, std::uint16_t j) const {
    return neg(plus(neg(i), j)); // x (-) y = ~(~x (+) y)
  }
  bool leq(std::uint16_t i, std::uint16_t j) const { return minus(i, j) == zero; }

  std::size_t index_of(const MvElem &x) const {
    auto it = std::lower_bound(carrier.begin(), carrier.end(), x, MvElemLess{});
    if (it == carrier.end() || !(*it == x))
      fail(ErrorKind::ElementNotInAlgebra, "element is not in the compiled carrier");
    return static_cast<std::size_t>(it - carrier.begin());
  }
};

namespace detail {

/// n-element chain tables on indices 0..n-1.
inline void chain_tables(CompiledFinite &cf, std::size_t n) {
  cf.n = n;
  cf.plus_tab.resize(n * n);
  cf.neg_tab.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    cf.neg_tab[i] = static_cast<std::uint16_t>(n - 1 - i);
    for (std::size_t j = 0; j < n; ++j)
      cf.plus_tab[i * n + j] = static_cast<std::uint16_t>(std::min(n - 1, i + j));
  }
  cf.zero = 0;
  cf.one = static_cast<std::uint16_t>(n - 1);
}

/// Mixed-radix composition of factor tables; the row-major index order is
/// exactly the canonical (encoding) order of the tuple carrier.
inline void compose_tables(CompiledFinite &cf, const std::vector<const CompiledFinite *> &subs) {
  std::size_t d = subs.size();
  std::size_t n = 1;
  for (const auto *s : subs)
    n *= s->n;
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t k = d; k-- > 1;)
    stride[k - 1] = stride[k] * subs[k]->n;
  cf.n = n;
  cf.plus_tab.resize(n * n);
  cf.neg_tab.resize(n);
  std::vector<std::size_t> di(d), dj(d);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    std::size_t neg = 0;
    for (std::size_t k = 0; k < d; ++k) {
      di[k] = rest / stride[k];
      rest %= stride[k];
      neg += subs[k]->neg_tab[di[k]] * stride[k];
    }
    cf.neg_tab[i] = static_cast<std::uint16_t>(neg);
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t rj = j;
      std::size_t sum = 0;
      for (std::size_t k = 0; k < d; ++k) {
        dj[k] = rj / stride[k];
        rj %= stride[k];
        sum += subs[k]->plus_tab[di[k] * subs[k]->n + dj[k]] * stride[k];
      }
      cf.plus_tab[i * n + j] = static_cast<std::uint16_t>(sum);
    }
  }
  std::size_t zero = 0, one = 0;
  for (std::size_t k = 0; k < d; ++k) {
    zero += subs[k]->zero * stride[k];
    one += subs[k]->one * stride[k];
  }
  cf.zero = static_cast<std::uint16_t>(zero);
  cf.one = static_cast<std::uint16_t>(one);
}

} // namespace detail

inline CompiledFinite compile_finite(const MvAlgebraDesc &A, std::size_t cap = 4096) {
  auto size = finite_size(A);
  if (!size)
    fail(ErrorKind::InfiniteCarrierExhaustive, "algebra has an infinite carrier");
  if (*size > Int(cap))
    fail(ErrorKind::CarrierTooLarge,
         "carrier has " + size->str() + " elements, cap is " + std::to_string(cap));

  CompiledFinite cf;
  cf.desc = A;

  // structural fast paths: tables from factor structure, no generic ops
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain: {
    cf.carrier = *finite_carrier(A, cap);
    detail::chain_tables(cf, A.chain_size);
    return cf;
  }
  case MvAlgebraDesc::Kind::Gamma: {
    if (A.group->kind == OrderedGroupDesc::Kind::Integers) {
      cf.carrier = *finite_carrier(A, cap);
      detail::chain_tables(cf, cf.carrier.size());
      return cf;
    }
    break; // box and stripped-lex intervals go through the generic path
  }
  case MvAlgebraDesc::Kind::Product:
  case MvAlgebraDesc::Kind::FunctionAlgebra: {
    std::vector<CompiledFinite> subs;
    std::size_t d = detail::coord_count(A);
    for (std::size_t k = 0; k < d; ++k)
      subs.push_back(compile_finite(detail::coord_algebra(A, k), cap));
    std::vector<const CompiledFinite *> ptrs;
    for (const auto &s : subs)
      ptrs.push_back(&s);
    detail::compose_tables(cf, ptrs);
    cf.carrier.reserve(cf.n);
    std::vector<std::size_t> stride(d, 1);
    for (std::size_t k = d; k-- > 1;)
      stride[k - 1] = stride[k] * subs[k].n;
    for (std::size_t i = 0; i < cf.n; ++i) {
      std::vector<MvElem> parts;
      parts.reserve(d);
      std::size_t rest = i;
      for (std::size_t k = 0; k < d; ++k) {
        parts.push_back(subs[k].carrier[rest / stride[k]]);
        rest %= stride[k];
      }
      cf.carrier.push_back(m_tuple(std::move(parts)));
    }
    return cf;
  }
  case MvAlgebraDesc::Kind::QuasiConstant: {
    // constants over the base: same tables, site-replicated carrier
    CompiledFinite base = compile_finite(*A.base, cap);
    cf.n = base.n;
    cf.plus_tab = base.plus_tab;
    cf.neg_tab = base.neg_tab;
    cf.zero = base.zero;
    cf.one = base.one;
    cf.carrier.reserve(base.n);
    for (const auto &e : base.carrier)
      cf.carrier.push_back(m_tuple(std::vector<MvElem>(A.sites, e)));
    return cf;
  }
  case MvAlgebraDesc::Kind::Quotient: {
    CompiledFinite base = compile_finite(*A.base, cap);
    const auto &canon = A.qtable->canon;
    std::vector<std::uint32_t> reps; // base indices of class representatives
    std::vector<std::uint16_t> cls(base.n);
    for (std::size_t i = 0; i < base.n; ++i)
      if (canon[i] == i) {
        cls[i] = static_cast<std::uint16_t>(reps.size());
        reps.push_back(static_cast<std::uint32_t>(i));
      }
    for (std::size_t i = 0; i < base.n; ++i)
      cls[i] = cls[canon[i]];
    cf.n = reps.size();
    cf.plus_tab.resize(cf.n * cf.n);
    cf.neg_tab.resize(cf.n);
    for (std::size_t i = 0; i < cf.n; ++i) {
      cf.neg_tab[i] = cls[base.neg_tab[reps[i]]];
      for (std::size_t j = 0; j < cf.n; ++j)
        cf.plus_tab[i * cf.n + j] = cls[base.plus_tab[reps[i] * base.n + reps[j]]];
      cf.carrier.push_back(m_class(base.carrier[reps[i]]));
    }
    cf.zero = cls[base.zero];
    cf.one = cls[base.one];
    return cf;
  }
  default:
    break;
  }

  // generic path: N^2 exact operations
  cf.carrier = *finite_carrier(A, cap);
  cf.n = cf.carrier.size();
  cf.plus_tab.resize(cf.n * cf.n);
  cf.neg_tab.resize(cf.n);
  for (std::size_t i = 0; i < cf.n; ++i) {
    cf.neg_tab[i] = static_cast<std::uint16_t>(cf.index_of(mv_neg(A, cf.carrier[i])));
    for (std::size_t j = 0; j <= i; ++j) {
      auto v = static_cast<std::uint16_t>(
          cf.index_of(mv_plus(A, cf.carrier[i], cf.carrier[j])));
      cf.plus_tab[i * cf.n + j] = v;
      cf.plus_tab[j * cf.n + i] = v; // the concrete ops are commutative
    }
  }
  cf.zero = static_cast<std::uint16_t>(cf.index_of(mv_zero(A)));
  cf.one = cf.neg_tab[cf.zero];
  return cf;
}

// ---------------------------------------------------------------------------
// Quotient construction (needs the compiled view, hence defined last)
// ---------------------------------------------------------------------------

/// Quotient of a finite-base algebra by an ideal given in materialized form
/// (Explicit / Zero / Whole / ProductKernel). Validates the ideal laws on
/// the base, then freezes the congruence table into the descriptor.
/// Symbolic radical quotients of infinite algebras are normalized by
/// spectra.hpp's quotient() and never reach this constructor.
inline MvAlgebraDesc quotient_desc(MvAlgebraDesc base, Ideal ideal, std::size_t cap = 1024) {
  CompiledFinite cf;
  try {
    cf = compile_finite(base, cap);
  } catch (const Error &e) {
    fail(ErrorKind::UnsupportedQuotient,
         std::string("quotient base must be finite (") + e.what() + ")");
  }
  if (ideal.kind == Ideal::Kind::Radical)
    fail(ErrorKind::UnsupportedQuotient,
         "materialize the radical first (use spectra radical())");

  std::vector<bool> member(cf.n);
  for (std::size_t i = 0; i < cf.n; ++i)
    member[i] = ideal_member(base, ideal, cf.carrier[i]);

  // ideal laws on the base: 0 in I, closed under (+), downward closed
  if (!member[cf.zero])
    fail(ErrorKind::UnsupportedQuotient, "ideal does not contain 0");
  for (std::size_t i = 0; i < cf.n; ++i) {
    if (!member[i])
      continue;
    for (std::size_t j = 0; j < cf.n; ++j) {
      if (member[j] && !member[cf.plus(i, j)])
        fail(ErrorKind::UnsupportedQuotient, "ideal is not closed under truncated sum");
      if (!member[j] && cf.leq(j, i))
        fail(ErrorKind::UnsupportedQuotient, "ideal is not downward closed");
    }
  }

  auto table = std::make_shared<QuotientTable>();
  table->base_carrier = cf.carrier;
  table->canon.resize(cf.n);
  for (std::size_t i = 0; i < cf.n; ++i) {
    table->canon[i] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 0; j < i; ++j) {
      // d(x,y) = (x-y)(+)(y-x) in I  <=>  same class; the carrier is sorted,
      // so the first hit already knows the least representative
      std::uint16_t d = cf.plus(cf.minus(static_cast<std::uint16_t>(i),
                                         static_cast<std::uint16_t>(j)),
                                cf.minus(static_cast<std::uint16_t>(j),
                                         static_cast<std::uint16_t>(i)));
      if (member[d]) {
        table->canon[i] = table->canon[j];
        break;
      }
    }
  }

  MvAlgebraDesc d;
  d.kind = MvAlgebraDesc::Kind::Quotient;
  d.base = std::make_shared<MvAlgebraDesc>(std::move(base));
  d.ideal = std::make_shared<Ideal>(std::move(ideal));
  d.qtable = std::move(table);
  return d;
}

} // namespace mvkit

#endif
