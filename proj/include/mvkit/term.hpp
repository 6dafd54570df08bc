#ifndef MVKIT_TERM_HPP
#define MVKIT_TERM_HPP

// Term AST over the primitive basis {variables, 0, negation, truncated sum}.
// Sugar constructors (one, times, minus, join, meet) expand into the basis
// at construction time:
//
//   1        := ~0
//   x * y    := ~(~x + ~y)
//   x minus y:= x * ~y
//   x \/ y   := (x minus y) + y
//   x /\ y   := x * (~x + y)
//
// Nodes are immutable and shared; a k-stage doubling term is O(k) nodes even
// though its fully expanded tree is exponential. Evaluation (algebra.hpp)
// memoizes per node.

#include <map>
#include <memory>
#include <string>
#include <utility>

namespace mvkit {

struct TermNode;
using TermPtr = std::shared_ptr<const TermNode>;

struct TermNode {
  enum class Kind { Var, Zero, Neg, Plus };

  Kind kind;
  std::string name; // Var only
  TermPtr a, b;     // Neg uses a; Plus uses a, b
};

inline TermPtr t_var(std::string name) {
  return std::make_shared<TermNode>(TermNode{TermNode::Kind::Var, std::move(name), nullptr, nullptr});
}

inline TermPtr t_zero() {
  return std::make_shared<TermNode>(TermNode{TermNode::Kind::Zero, {}, nullptr, nullptr});
}

inline TermPtr t_neg(TermPtr a) {
  return std::make_shared<TermNode>(TermNode{TermNode::Kind::Neg, {}, std::move(a), nullptr});
}

inline TermPtr t_plus(TermPtr a, TermPtr b) {
  return std::make_shared<TermNode>(TermNode{TermNode::Kind::Plus, {}, std::move(a), std::move(b)});
}

inline TermPtr t_one() { return t_neg(t_zero()); }

inline TermPtr t_times(TermPtr a, TermPtr b) {
  return t_neg(t_plus(t_neg(std::move(a)), t_neg(std::move(b))));
}

inline TermPtr t_minus(TermPtr a, TermPtr b) {
  return t_times(std::move(a), t_neg(std::move(b)));
}

inline TermPtr t_join(TermPtr a, TermPtr b) {
  return t_plus(t_minus(std::move(a), b), b);
}

inline TermPtr t_meet(TermPtr a, TermPtr b) {
  return t_times(a, t_plus(t_neg(a), std::move(b)));
}

/// Structural equality of the unfolded trees. Memoized on node-pointer pairs
/// so shared-subtree (DAG) terms compare in O(nodes^2) rather than
/// exponentially.
inline bool term_equal(const TermPtr &s, const TermPtr &t) {
  std::map<std::pair<const TermNode *, const TermNode *>, bool> memo;

  auto rec = [&](auto &&self, const TermNode *x, const TermNode *y) -> bool {
    if (x == y)
      return true;
    if (!x || !y)
      return false;
    auto key = std::make_pair(x, y);
    auto it = memo.find(key);
    if (it != memo.end())
      return it->second;
    bool eq = false;
    if (x->kind == y->kind) {
      switch (x->kind) {
      case TermNode::Kind::Var: eq = x->name == y->name; break;
      case TermNode::Kind::Zero: eq = true; break;
      case TermNode::Kind::Neg: eq = self(self, x->a.get(), y->a.get()); break;
      case TermNode::Kind::Plus:
        eq = self(self, x->a.get(), y->a.get()) && self(self, x->b.get(), y->b.get());
        break;
      }
    }
    memo.emplace(key, eq);
    return eq;
  };
  return rec(rec, s.get(), t.get());
}

/// Number of distinct nodes reachable from t (DAG size, not tree size).
inline std::size_t term_dag_size(const TermPtr &t) {
  std::map<const TermNode *, bool> seen;
  auto rec = [&](auto &&self, const TermNode *n) -> void {
    if (!n || seen.count(n))
      return;
    seen[n] = true;
    self(self, n->a.get());
    self(self, n->b.get());
  };
  rec(rec, t.get());
  return seen.size();
}

} // namespace mvkit

#endif
