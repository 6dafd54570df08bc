#ifndef MVKIT_GROUP_HPP
#define MVKIT_GROUP_HPP

// Lattice-ordered abelian groups: descriptors for Z, Q, lexicographic and
// direct products, plus the group of quasi-constant functions used by the
// representation theorems. Elements are exact (Int / Rat / tuples), every
// operation is pure, comparison is a std::partial_ordering (direct products
// are only partially ordered).

#include <algorithm>
#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mvkit/error.hpp"
#include "mvkit/rational.hpp"

namespace mvkit {

struct GroupElem;

struct GroupElem {
  std::variant<Int, Rat, std::vector<GroupElem>> v;

  bool is_int() const { return std::holds_alternative<Int>(v); }
  bool is_rat() const { return std::holds_alternative<Rat>(v); }
  bool is_tuple() const { return std::holds_alternative<std::vector<GroupElem>>(v); }

  const Int &as_int() const { return std::get<Int>(v); }
  const Rat &as_rat() const { return std::get<Rat>(v); }
  const std::vector<GroupElem> &as_tuple() const { return std::get<std::vector<GroupElem>>(v); }
};

inline GroupElem g_int(Int n) { return GroupElem{std::move(n)}; }
inline GroupElem g_int(long long n) { return GroupElem{Int(n)}; }
inline GroupElem g_rat(Rat r) { return GroupElem{std::move(r)}; }
inline GroupElem g_tuple(std::vector<GroupElem> xs) { return GroupElem{std::move(xs)}; }

inline bool operator==(const GroupElem &a, const GroupElem &b) {
  if (a.v.index() != b.v.index())
    return false;
  if (a.is_int())
    return a.as_int() == b.as_int();
  if (a.is_rat())
    return a.as_rat() == b.as_rat();
  const auto &xs = a.as_tuple();
  const auto &ys = b.as_tuple();
  if (xs.size() != ys.size())
    return false;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!(xs[i] == ys[i]))
      return false;
  return true;
}

/// Encoding order (variant index, then contents); used only for canonical
/// sorting and set storage, unrelated to the group order.
inline bool elem_encoding_less(const GroupElem &a, const GroupElem &b) {
  if (a.v.index() != b.v.index())
    return a.v.index() < b.v.index();
  if (a.is_int())
    return a.as_int() < b.as_int();
  if (a.is_rat())
    return a.as_rat() < b.as_rat();
  const auto &xs = a.as_tuple();
  const auto &ys = b.as_tuple();
  if (xs.size() != ys.size())
    return xs.size() < ys.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (elem_encoding_less(xs[i], ys[i]))
      return true;
    if (elem_encoding_less(ys[i], xs[i]))
      return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Descriptors
// ---------------------------------------------------------------------------

struct OrderedGroupDesc {
  enum class Kind { Integers, Rationals, Lex, Direct, QuasiConstant };

  Kind kind = Kind::Integers;
  std::vector<OrderedGroupDesc> components; // Lex / Direct

  // QuasiConstant: functions {0..sites-1} -> base whose pairwise differences
  // lie in the null ideal of (base, base_unit).
  std::shared_ptr<const OrderedGroupDesc> qc_base;
  std::shared_ptr<const GroupElem> qc_base_unit;
  std::size_t qc_sites = 0;
};

inline OrderedGroupDesc integers() { return {OrderedGroupDesc::Kind::Integers, {}, nullptr, nullptr, 0}; }
inline OrderedGroupDesc rationals() { return {OrderedGroupDesc::Kind::Rationals, {}, nullptr, nullptr, 0}; }

inline OrderedGroupDesc lex_product(std::vector<OrderedGroupDesc> comps) {
  if (comps.empty())
    fail(ErrorKind::ShapeMismatch, "lex product needs at least one component");
  return {OrderedGroupDesc::Kind::Lex, std::move(comps), nullptr, nullptr, 0};
}

inline OrderedGroupDesc lex_product(OrderedGroupDesc a, OrderedGroupDesc b) {
  std::vector<OrderedGroupDesc> c;
  c.push_back(std::move(a));
  c.push_back(std::move(b));
  return lex_product(std::move(c));
}

/// Direct (componentwise-ordered) product; empty component list is the
/// trivial group.
inline OrderedGroupDesc direct_product(std::vector<OrderedGroupDesc> comps) {
  return {OrderedGroupDesc::Kind::Direct, std::move(comps), nullptr, nullptr, 0};
}

inline OrderedGroupDesc trivial_group() { return direct_product({}); }

inline OrderedGroupDesc quasi_constant_group(OrderedGroupDesc base, GroupElem base_unit,
                                             std::size_t sites) {
  if (sites == 0)
    fail(ErrorKind::ShapeMismatch, "quasi-constant group needs at least one site");
  OrderedGroupDesc g;
  g.kind = OrderedGroupDesc::Kind::QuasiConstant;
  g.qc_base = std::make_shared<OrderedGroupDesc>(std::move(base));
  g.qc_base_unit = std::make_shared<GroupElem>(std::move(base_unit));
  g.qc_sites = sites;
  return g;
}

/// The ultrapower surrogate: the divisible totally ordered group
/// Lex(Q, ..., Q) with `depth` levels. Reports that mention it always name
/// it explicitly; no claim about genuine ultrapowers is made anywhere.
inline OrderedGroupDesc nonstandard_reals(std::size_t depth = 2) {
  if (depth == 0)
    fail(ErrorKind::ShapeMismatch, "surrogate depth must be positive");
  if (depth == 1)
    return rationals();
  return lex_product(std::vector<OrderedGroupDesc>(depth, rationals()));
}

inline bool operator==(const OrderedGroupDesc &a, const OrderedGroupDesc &b) {
  if (a.kind != b.kind)
    return false;
  switch (a.kind) {
  case OrderedGroupDesc::Kind::Integers:
  case OrderedGroupDesc::Kind::Rationals:
    return true;
  case OrderedGroupDesc::Kind::Lex:
  case OrderedGroupDesc::Kind::Direct:
    return a.components == b.components;
  case OrderedGroupDesc::Kind::QuasiConstant:
    return a.qc_sites == b.qc_sites && *a.qc_base == *b.qc_base &&
           *a.qc_base_unit == *b.qc_base_unit;
  }
  return false;
}

inline bool is_totally_ordered(const OrderedGroupDesc &g) {
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers:
  case OrderedGroupDesc::Kind::Rationals:
    return true;
  case OrderedGroupDesc::Kind::Lex:
    return std::all_of(g.components.begin(), g.components.end(),
                       [](const OrderedGroupDesc &c) { return is_totally_ordered(c); });
  case OrderedGroupDesc::Kind::Direct:
    if (g.components.empty())
      return true;
    return g.components.size() == 1 && is_totally_ordered(g.components[0]);
  case OrderedGroupDesc::Kind::QuasiConstant:
    return g.qc_sites == 1 && is_totally_ordered(*g.qc_base);
  }
  return false;
}

/// Structural validation; lexicographic products require totally ordered
/// components (otherwise the lex order is not even a lattice order).
inline void validate_group(const OrderedGroupDesc &g) {
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers:
  case OrderedGroupDesc::Kind::Rationals:
    return;
  case OrderedGroupDesc::Kind::Lex:
    if (g.components.empty())
      fail(ErrorKind::ShapeMismatch, "empty lex product");
    for (const auto &c : g.components) {
      validate_group(c);
      if (!is_totally_ordered(c))
        fail(ErrorKind::UnsupportedShape, "lex component is not totally ordered");
    }
    return;
  case OrderedGroupDesc::Kind::Direct:
    for (const auto &c : g.components)
      validate_group(c);
    return;
  case OrderedGroupDesc::Kind::QuasiConstant:
    validate_group(*g.qc_base);
    return;
  }
}

// ---------------------------------------------------------------------------
// Element operations
// ---------------------------------------------------------------------------

inline GroupElem group_zero(const OrderedGroupDesc &g) {
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers:
    return g_int(0);
  case OrderedGroupDesc::Kind::Rationals:
    return g_rat(Rat(0));
  case OrderedGroupDesc::Kind::Lex:
  case OrderedGroupDesc::Kind::Direct: {
    std::vector<GroupElem> xs;
    xs.reserve(g.components.size());
    for (const auto &c : g.components)
      xs.push_back(group_zero(c));
    return g_tuple(std::move(xs));
  }
  case OrderedGroupDesc::Kind::QuasiConstant:
    return g_tuple(std::vector<GroupElem>(g.qc_sites, group_zero(*g.qc_base)));
  }
  fail(ErrorKind::UnsupportedShape, "group_zero");
}

namespace detail {

inline bool shape_matches(const OrderedGroupDesc &g, const GroupElem &x) {
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers:
    return x.is_int();
  case OrderedGroupDesc::Kind::Rationals:
    return x.is_rat();
  case OrderedGroupDesc::Kind::Lex:
  case OrderedGroupDesc::Kind::Direct: {
    if (!x.is_tuple() || x.as_tuple().size() != g.components.size())
      return false;
    for (std::size_t i = 0; i < g.components.size(); ++i)
      if (!shape_matches(g.components[i], x.as_tuple()[i]))
        return false;
    return true;
  }
  case OrderedGroupDesc::Kind::QuasiConstant: {
    if (!x.is_tuple() || x.as_tuple().size() != g.qc_sites)
      return false;
    for (const auto &s : x.as_tuple())
      if (!shape_matches(*g.qc_base, s))
        return false;
    return true;
  }
  }
  return false;
}

inline void require_shape(const OrderedGroupDesc &g, const GroupElem &x) {
  if (!shape_matches(g, x))
    fail(ErrorKind::ShapeMismatch, "element does not match group descriptor");
}

} // namespace detail

inline GroupElem group_add(const OrderedGroupDesc &g, const GroupElem &x, const GroupElem &y) {
  detail::require_shape(g, x);
  detail::require_shape(g, y);
  if (x.is_int())
    return g_int(x.as_int() + y.as_int());
  if (x.is_rat())
    return g_rat(x.as_rat() + y.as_rat());
  const auto &xs = x.as_tuple();
  const auto &ys = y.as_tuple();
  std::vector<GroupElem> zs;
  zs.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const OrderedGroupDesc &ci =
        g.kind == OrderedGroupDesc::Kind::QuasiConstant ? *g.qc_base : g.components[i];
    zs.push_back(group_add(ci, xs[i], ys[i]));
  }
  return g_tuple(std::move(zs));
}

inline GroupElem group_neg(const OrderedGroupDesc &g, const GroupElem &x) {
  detail::require_shape(g, x);
  if (x.is_int())
    return g_int(-x.as_int());
  if (x.is_rat())
    return g_rat(-x.as_rat());
  const auto &xs = x.as_tuple();
  std::vector<GroupElem> zs;
  zs.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const OrderedGroupDesc &ci =
        g.kind == OrderedGroupDesc::Kind::QuasiConstant ? *g.qc_base : g.components[i];
    zs.push_back(group_neg(ci, xs[i]));
  }
  return g_tuple(std::move(zs));
}

inline GroupElem group_sub(const OrderedGroupDesc &g, const GroupElem &x, const GroupElem &y) {
  return group_add(g, x, group_neg(g, y));
}

inline GroupElem scalar_mul(const OrderedGroupDesc &g, const Int &n, const GroupElem &x) {
  detail::require_shape(g, x);
  if (x.is_int())
    return g_int(x.as_int() * n);
  if (x.is_rat())
    return g_rat(x.as_rat() * Rat(n));
  const auto &xs = x.as_tuple();
  std::vector<GroupElem> zs;
  zs.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const OrderedGroupDesc &ci =
        g.kind == OrderedGroupDesc::Kind::QuasiConstant ? *g.qc_base : g.components[i];
    zs.push_back(scalar_mul(ci, n, xs[i]));
  }
  return g_tuple(std::move(zs));
}

inline std::partial_ordering group_cmp(const OrderedGroupDesc &g, const GroupElem &x,
                                       const GroupElem &y) {
  detail::require_shape(g, x);
  detail::require_shape(g, y);
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers: {
    const Int &a = x.as_int(), &b = y.as_int();
    if (a < b) return std::partial_ordering::less;
    if (b < a) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }
  case OrderedGroupDesc::Kind::Rationals: {
    const Rat &a = x.as_rat(), &b = y.as_rat();
    if (a < b) return std::partial_ordering::less;
    if (b < a) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
  }
  case OrderedGroupDesc::Kind::Lex: {
    for (std::size_t i = 0; i < g.components.size(); ++i) {
      auto c = group_cmp(g.components[i], x.as_tuple()[i], y.as_tuple()[i]);
      if (c != std::partial_ordering::equivalent)
        return c;
    }
    return std::partial_ordering::equivalent;
  }
  case OrderedGroupDesc::Kind::Direct:
  case OrderedGroupDesc::Kind::QuasiConstant: {
    bool le = true, ge = true;
    const auto &xs = x.as_tuple();
    const auto &ys = y.as_tuple();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const OrderedGroupDesc &ci =
          g.kind == OrderedGroupDesc::Kind::QuasiConstant ? *g.qc_base : g.components[i];
      auto c = group_cmp(ci, xs[i], ys[i]);
      if (c == std::partial_ordering::less) ge = false;
      else if (c == std::partial_ordering::greater) le = false;
      else if (c == std::partial_ordering::unordered) { le = false; ge = false; }
    }
    if (le && ge) return std::partial_ordering::equivalent;
    if (le) return std::partial_ordering::less;
    if (ge) return std::partial_ordering::greater;
    return std::partial_ordering::unordered;
  }
  }
  return std::partial_ordering::unordered;
}

inline bool group_leq(const OrderedGroupDesc &g, const GroupElem &x, const GroupElem &y) {
  auto c = group_cmp(g, x, y);
  return c == std::partial_ordering::less || c == std::partial_ordering::equivalent;
}

/// Lattice meet. Totally ordered: min by comparison; direct products and
/// quasi-constant groups: componentwise.
inline GroupElem group_meet(const OrderedGroupDesc &g, const GroupElem &x, const GroupElem &y) {
  if (g.kind == OrderedGroupDesc::Kind::Direct ||
      g.kind == OrderedGroupDesc::Kind::QuasiConstant) {
    detail::require_shape(g, x);
    detail::require_shape(g, y);
    const auto &xs = x.as_tuple();
    const auto &ys = y.as_tuple();
    std::vector<GroupElem> zs;
    zs.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const OrderedGroupDesc &ci =
          g.kind == OrderedGroupDesc::Kind::QuasiConstant ? *g.qc_base : g.components[i];
      zs.push_back(group_meet(ci, xs[i], ys[i]));
    }
    return g_tuple(std::move(zs));
  }
  return group_leq(g, x, y) ? x : y;
}

inline GroupElem group_join(const OrderedGroupDesc &g, const GroupElem &x, const GroupElem &y) {
  if (g.kind == OrderedGroupDesc::Kind::Direct ||
      g.kind == OrderedGroupDesc::Kind::QuasiConstant) {
    detail::require_shape(g, x);
    detail::require_shape(g, y);
    const auto &xs = x.as_tuple();
    const auto &ys = y.as_tuple();
    std::vector<GroupElem> zs;
    zs.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const OrderedGroupDesc &ci =
          g.kind == OrderedGroupDesc::Kind::QuasiConstant ? *g.qc_base : g.components[i];
      zs.push_back(group_join(ci, xs[i], ys[i]));
    }
    return g_tuple(std::move(zs));
  }
  return group_leq(g, x, y) ? y : x;
}

/// |x| = x v (-x).
inline GroupElem group_abs(const OrderedGroupDesc &g, const GroupElem &x) {
  return group_join(g, x, group_neg(g, x));
}

/// Exact division by a positive integer when it exists (always for groups
/// with only rational leaves).
inline std::optional<GroupElem> group_div_exact(const OrderedGroupDesc &g, const GroupElem &x,
                                                const Int &n) {
  detail::require_shape(g, x);
  if (x.is_int()) {
    if (x.as_int() % n != 0)
      return std::nullopt;
    return g_int(x.as_int() / n);
  }
  if (x.is_rat())
    return g_rat(x.as_rat() / Rat(n));
  const auto &xs = x.as_tuple();
  std::vector<GroupElem> zs;
  zs.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const OrderedGroupDesc &ci =
        g.kind == OrderedGroupDesc::Kind::QuasiConstant ? *g.qc_base : g.components[i];
    auto z = group_div_exact(ci, xs[i], n);
    if (!z)
      return std::nullopt;
    zs.push_back(std::move(*z));
  }
  return g_tuple(std::move(zs));
}

// ---------------------------------------------------------------------------
// Lex flattening
// ---------------------------------------------------------------------------

/// Leaf kinds of a pure lex/scalar tree in lexicographic order, or nullopt if
/// the descriptor contains a direct product or quasi-constant node.
inline std::optional<std::vector<OrderedGroupDesc::Kind>>
flatten_lex_kinds(const OrderedGroupDesc &g) {
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers:
  case OrderedGroupDesc::Kind::Rationals:
    return std::vector<OrderedGroupDesc::Kind>{g.kind};
  case OrderedGroupDesc::Kind::Lex: {
    std::vector<OrderedGroupDesc::Kind> out;
    for (const auto &c : g.components) {
      auto sub = flatten_lex_kinds(c);
      if (!sub)
        return std::nullopt;
      out.insert(out.end(), sub->begin(), sub->end());
    }
    return out;
  }
  default:
    return std::nullopt;
  }
}

/// Leaves of an element of a pure lex tree, as rationals, in lex order.
inline void flatten_lex_elem(const OrderedGroupDesc &g, const GroupElem &x,
                             std::vector<Rat> &out) {
  detail::require_shape(g, x);
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers:
    out.push_back(Rat(x.as_int()));
    return;
  case OrderedGroupDesc::Kind::Rationals:
    out.push_back(x.as_rat());
    return;
  case OrderedGroupDesc::Kind::Lex:
    for (std::size_t i = 0; i < g.components.size(); ++i)
      flatten_lex_elem(g.components[i], x.as_tuple()[i], out);
    return;
  default:
    fail(ErrorKind::UnsupportedShape, "flatten_lex_elem on non-lex descriptor");
  }
}

/// Rebuild an element of a pure lex tree from rational leaves; integer leaves
/// must receive integer values.
inline GroupElem unflatten_lex_elem(const OrderedGroupDesc &g, const std::vector<Rat> &leaves,
                                    std::size_t &pos) {
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers: {
    const Rat &r = leaves.at(pos++);
    if (!r.is_integer())
      fail(ErrorKind::ShapeMismatch, "non-integer value for integer leaf");
    return g_int(r.num());
  }
  case OrderedGroupDesc::Kind::Rationals:
    return g_rat(leaves.at(pos++));
  case OrderedGroupDesc::Kind::Lex: {
    std::vector<GroupElem> xs;
    xs.reserve(g.components.size());
    for (const auto &c : g.components)
      xs.push_back(unflatten_lex_elem(c, leaves, pos));
    return g_tuple(std::move(xs));
  }
  default:
    fail(ErrorKind::UnsupportedShape, "unflatten_lex_elem on non-lex descriptor");
  }
}

// ---------------------------------------------------------------------------
// Strong units
// ---------------------------------------------------------------------------

struct StrongUnitReport {
  bool is_strong = false;
  std::optional<GroupElem> witness; // an element no multiple of u dominates
  std::string mode = "exact";       // every supported descriptor decides exactly
};

/// Decide whether u is a strong unit of G. For the structured descriptors
/// (that is, every descriptor this library can build) the closed-form
/// criterion decides exactly: archimedean leaves need u > 0, lex products
/// need a strictly positive first leaf, direct products need every
/// component strong, quasi-constant groups need every site value strong.
inline StrongUnitReport is_strong_unit(const OrderedGroupDesc &g, const GroupElem &u) {
  detail::require_shape(g, u);
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers: {
    if (u.as_int() > 0)
      return {true, std::nullopt, "exact"};
    return {false, g_int(1), "exact"};
  }
  case OrderedGroupDesc::Kind::Rationals: {
    if (u.as_rat() > Rat(0))
      return {true, std::nullopt, "exact"};
    return {false, g_rat(Rat(1)), "exact"};
  }
  case OrderedGroupDesc::Kind::Lex: {
    std::vector<Rat> leaves;
    flatten_lex_elem(g, u, leaves);
    if (!leaves.empty() && leaves[0] > Rat(0))
      return {true, std::nullopt, "exact"};
    // witness: 1 in the first leaf, 0 elsewhere; no multiple of u can reach it
    std::vector<Rat> w(leaves.size(), Rat(0));
    if (!w.empty())
      w[0] = Rat(1);
    std::size_t pos = 0;
    return {false, unflatten_lex_elem(g, w, pos), "exact"};
  }
  case OrderedGroupDesc::Kind::Direct: {
    for (std::size_t i = 0; i < g.components.size(); ++i) {
      auto sub = is_strong_unit(g.components[i], u.as_tuple()[i]);
      if (!sub.is_strong) {
        auto w = group_zero(g);
        auto ws = w.as_tuple();
        ws[i] = *sub.witness;
        return {false, g_tuple(std::move(ws)), "exact"};
      }
    }
    return {true, std::nullopt, "exact"};
  }
  case OrderedGroupDesc::Kind::QuasiConstant: {
    for (std::size_t i = 0; i < g.qc_sites; ++i) {
      auto sub = is_strong_unit(*g.qc_base, u.as_tuple()[i]);
      if (!sub.is_strong) {
        // constant functions are always quasi-constant, so the witness lifts
        return {false, g_tuple(std::vector<GroupElem>(g.qc_sites, *sub.witness)), "exact"};
      }
    }
    return {true, std::nullopt, "exact"};
  }
  }
  return {false, std::nullopt, "exact"};
}

// ---------------------------------------------------------------------------
// l-ideals
// ---------------------------------------------------------------------------

/// Symbolic l-ideal descriptor. TailKernel(k) is {x : first k lex leaves are
/// 0} of a pure lex group; ProductKernel(zeroed) pins the listed components
/// of a direct product to 0 and leaves the rest full.
struct LIdeal {
  enum class Kind { Zero, Whole, TailKernel, ProductKernel };

  Kind kind = Kind::Zero;
  std::size_t tail = 0;             // TailKernel
  std::set<std::size_t> zeroed;     // ProductKernel

  static LIdeal zero() { return {Kind::Zero, 0, {}}; }
  static LIdeal whole() { return {Kind::Whole, 0, {}}; }
  static LIdeal tail_kernel(std::size_t k) { return {Kind::TailKernel, k, {}}; }
  static LIdeal product_kernel(std::set<std::size_t> z) {
    return {Kind::ProductKernel, 0, std::move(z)};
  }
};

inline bool operator==(const LIdeal &a, const LIdeal &b) {
  return a.kind == b.kind && a.tail == b.tail && a.zeroed == b.zeroed;
}

inline bool lideal_member(const OrderedGroupDesc &g, const LIdeal &j, const GroupElem &x) {
  detail::require_shape(g, x);
  switch (j.kind) {
  case LIdeal::Kind::Zero:
    return x == group_zero(g);
  case LIdeal::Kind::Whole:
    return true;
  case LIdeal::Kind::TailKernel: {
    std::vector<Rat> leaves;
    flatten_lex_elem(g, x, leaves);
    if (j.tail > leaves.size())
      fail(ErrorKind::InvalidIdeal, "tail kernel deeper than the lex group");
    for (std::size_t i = 0; i < j.tail; ++i)
      if (!(leaves[i] == Rat(0)))
        return false;
    return true;
  }
  case LIdeal::Kind::ProductKernel: {
    if (g.kind != OrderedGroupDesc::Kind::Direct)
      fail(ErrorKind::InvalidIdeal, "product kernel on a non-direct group");
    for (std::size_t i : j.zeroed)
      if (!(x.as_tuple().at(i) == group_zero(g.components.at(i))))
        return false;
    return true;
  }
  }
  return false;
}

/// Complete l-ideal poset for the catalog shapes: archimedean leaves have
/// {0} and the whole group; pure lex towers of archimedean leaves have the
/// chain of tail kernels; direct products of archimedean components have the
/// boolean lattice of component kernels.
inline std::vector<LIdeal> lideal_poset(const OrderedGroupDesc &g) {
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers:
  case OrderedGroupDesc::Kind::Rationals:
    return {LIdeal::zero(), LIdeal::whole()};
  case OrderedGroupDesc::Kind::Lex: {
    auto kinds = flatten_lex_kinds(g);
    if (!kinds)
      fail(ErrorKind::UnsupportedShape, "l-ideal poset of a non-pure lex group");
    std::vector<LIdeal> out;
    out.push_back(LIdeal::zero());
    for (std::size_t k = kinds->size() - 1; k >= 1; --k)
      out.push_back(LIdeal::tail_kernel(k));
    out.push_back(LIdeal::whole());
    return out;
  }
  case OrderedGroupDesc::Kind::Direct: {
    for (const auto &c : g.components)
      if (c.kind != OrderedGroupDesc::Kind::Integers &&
          c.kind != OrderedGroupDesc::Kind::Rationals)
        fail(ErrorKind::UnsupportedShape, "l-ideal poset needs archimedean components");
    std::size_t n = g.components.size();
    if (n > 16)
      fail(ErrorKind::CarrierTooLarge, "too many direct components");
    std::vector<LIdeal> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
      std::set<std::size_t> zeroed;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (std::size_t(1) << i))
          zeroed.insert(i);
      if (zeroed.size() == n)
        out.push_back(LIdeal::zero());
      else if (zeroed.empty())
        out.push_back(LIdeal::whole());
      else
        out.push_back(LIdeal::product_kernel(std::move(zeroed)));
    }
    // canonical order: zero first, whole last, kernels by zeroed set
    std::sort(out.begin(), out.end(), [](const LIdeal &a, const LIdeal &b) {
      auto rank = [](const LIdeal &l) {
        return l.kind == LIdeal::Kind::Zero ? 0 : l.kind == LIdeal::Kind::Whole ? 2 : 1;
      };
      if (rank(a) != rank(b))
        return rank(a) < rank(b);
      if (a.zeroed.size() != b.zeroed.size())
        return a.zeroed.size() > b.zeroed.size();
      return a.zeroed < b.zeroed;
    });
    return out;
  }
  default:
    fail(ErrorKind::UnsupportedShape, "l-ideal poset unsupported for this group");
  }
}

/// Set inclusion on catalog l-ideals of the same group.
inline bool lideal_subset(const OrderedGroupDesc &g, const LIdeal &a, const LIdeal &b) {
  auto depth = [&]() -> std::size_t {
    auto kinds = flatten_lex_kinds(g);
    return kinds ? kinds->size() : 0;
  };
  auto tail_of = [&](const LIdeal &l) -> std::optional<std::size_t> {
    // normalize Zero/Whole on lex groups to tail depths
    if (l.kind == LIdeal::Kind::TailKernel)
      return l.tail;
    if (l.kind == LIdeal::Kind::Zero)
      return depth();
    if (l.kind == LIdeal::Kind::Whole)
      return 0;
    return std::nullopt;
  };
  if (a.kind == LIdeal::Kind::Zero)
    return true;
  if (b.kind == LIdeal::Kind::Whole)
    return true;
  if (a.kind == LIdeal::Kind::Whole)
    return b.kind == LIdeal::Kind::Whole;
  if (a.kind == LIdeal::Kind::TailKernel || b.kind == LIdeal::Kind::TailKernel) {
    auto ta = tail_of(a), tb = tail_of(b);
    if (!ta || !tb)
      fail(ErrorKind::InvalidIdeal, "mixed l-ideal kinds");
    return *ta >= *tb;
  }
  // both product kernels: larger zeroed set = smaller ideal
  return std::includes(a.zeroed.begin(), a.zeroed.end(), b.zeroed.begin(), b.zeroed.end());
}

/// The null ideal of (base, unit): elements all of whose integer multiples
/// stay below the unit in absolute value. This is what "one radical class"
/// means on the group side of quasi-constancy.
inline LIdeal group_null_ideal(const OrderedGroupDesc &base, const GroupElem &unit) {
  switch (base.kind) {
  case OrderedGroupDesc::Kind::Integers:
  case OrderedGroupDesc::Kind::Rationals:
    return LIdeal::zero();
  case OrderedGroupDesc::Kind::Lex: {
    std::vector<Rat> leaves;
    flatten_lex_elem(base, unit, leaves);
    if (leaves.empty() || !(leaves[0] > Rat(0)))
      fail(ErrorKind::UnsupportedShape, "null ideal needs a unit with positive first leaf");
    return LIdeal::tail_kernel(1);
  }
  default:
    fail(ErrorKind::UnsupportedShape, "null ideal unsupported for this base");
  }
}

/// Membership test for the quasi-constant group: all sites must lie in one
/// class modulo the null ideal of the base (anchored at site 0).
inline bool quasi_constant_group_member(const OrderedGroupDesc &g, const GroupElem &x) {
  if (g.kind != OrderedGroupDesc::Kind::QuasiConstant)
    fail(ErrorKind::ShapeMismatch, "not a quasi-constant group");
  if (!detail::shape_matches(g, x))
    return false;
  LIdeal null = group_null_ideal(*g.qc_base, *g.qc_base_unit);
  const auto &sites = x.as_tuple();
  for (std::size_t i = 1; i < sites.size(); ++i)
    if (!lideal_member(*g.qc_base, null, group_sub(*g.qc_base, sites[i], sites[0])))
      return false;
  return true;
}

/// Full membership check (shape plus, for quasi-constant groups, the
/// one-class condition).
inline bool group_contains(const OrderedGroupDesc &g, const GroupElem &x) {
  if (g.kind == OrderedGroupDesc::Kind::QuasiConstant)
    return quasi_constant_group_member(g, x);
  return detail::shape_matches(g, x);
}

} // namespace mvkit

#endif
