#ifndef MVKIT_AXIOMS_HPP
#define MVKIT_AXIOMS_HPP

// Verification of the six defining equations:
//   1. x(+)(y(+)z) = (x(+)y)(+)z        4. ~~x = x
//   2. x(+)y = y(+)x                    5. x(+)~0 = ~0
//   3. x(+)0 = x                        6. ~(~x(+)y)(+)y = ~(~y(+)x)(+)x
// Exhaustive on finite carriers (compiled tables), seeded sampling
// otherwise. Witness scan order is x-major, so reports are deterministic.

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mvkit/algebra.hpp"
#include "mvkit/sampling.hpp"

namespace mvkit {

struct Exhaustive {};
struct Sampled {
  std::size_t count = 1000;
  std::uint64_t seed = 1;
};
using Strategy = std::variant<Exhaustive, Sampled>;

struct AxiomCheck {
  int axiom = 0;
  std::string name;
  bool passed = true;
  std::vector<MvElem> witness; // the violating tuple, when failed
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_passed = true;
  std::string strategy;
  std::size_t tuples_checked = 0;
  std::uint64_t seed = 0;
};

inline const std::array<const char *, 6> axiom_names = {
    "associativity of (+)", "commutativity of (+)", "x(+)0 = x",
    "~~x = x",              "x(+)1 = 1",            "Chang's axiom 6",
};

/// Exhaustive check of the six axioms over explicit tables; the corrupted
/// table tests drive this directly with a perturbed plus.
inline AxiomReport
check_axioms_table(std::size_t n, const std::function<std::uint16_t(std::uint16_t, std::uint16_t)> &plus,
                   const std::function<std::uint16_t(std::uint16_t)> &neg, std::uint16_t zero,
                   const std::vector<MvElem> &carrier) {
  AxiomReport rep;
  rep.strategy = "exhaustive";
  std::uint16_t one = neg(zero);

  auto add_check = [&](int k, bool ok, std::vector<MvElem> w) {
    rep.checks.push_back({k, axiom_names[k - 1], ok, std::move(w)});
    rep.all_passed = rep.all_passed && ok;
  };

  // 1: ternary
  {
    bool ok = true;
    std::vector<MvElem> w;
    for (std::uint16_t x = 0; x < n && ok; ++x)
      for (std::uint16_t y = 0; y < n && ok; ++y)
        for (std::uint16_t z = 0; z < n && ok; ++z)
          if (plus(x, plus(y, z)) != plus(plus(x, y), z)) {
            ok = false;
            w = {carrier[x], carrier[y], carrier[z]};
          }
    rep.tuples_checked += n * n * n;
    add_check(1, ok, std::move(w));
  }
  // 2 and 6: binary
  for (int ax : {2, 6}) {
    bool ok = true;
    std::vector<MvElem> w;
    for (std::uint16_t x = 0; x < n && ok; ++x)
      for (std::uint16_t y = 0; y < n && ok; ++y) {
        bool holds = ax == 2 ? plus(x, y) == plus(y, x)
                             : plus(neg(plus(neg(x), y)), y) == plus(neg(plus(neg(y), x)), x);
        if (!holds) {
          ok = false;
          w = {carrier[x], carrier[y]};
        }
      }
    rep.tuples_checked += n * n;
    add_check(ax, ok, std::move(w));
  }
  // 3, 4, 5: unary
  for (int ax : {3, 4, 5}) {
    bool ok = true;
    std::vector<MvElem> w;
    for (std::uint16_t x = 0; x < n && ok; ++x) {
      bool holds = ax == 3   ? plus(x, zero) == x
                   : ax == 4 ? neg(neg(x)) == x
                             : plus(x, one) == one;
      if (!holds) {
        ok = false;
        w = {carrier[x]};
      }
    }
    rep.tuples_checked += n;
    rep.checks.push_back({ax, axiom_names[ax - 1], ok, std::move(w)});
    rep.all_passed = rep.all_passed && ok;
  }
  std::sort(rep.checks.begin(), rep.checks.end(),
            [](const AxiomCheck &a, const AxiomCheck &b) { return a.axiom < b.axiom; });
  return rep;
}

inline AxiomReport check_axioms(const MvAlgebraDesc &A, const Strategy &strategy,
                                std::size_t cap = 4096) {
  if (std::holds_alternative<Exhaustive>(strategy)) {
    if (!finite_size(A))
      fail(ErrorKind::InfiniteCarrierExhaustive,
           "exhaustive strategy requires a finite carrier");
    CompiledFinite cf = compile_finite(A, cap);
    auto plus = [&cf](std::uint16_t i, std::uint16_t j) { return cf.plus(i, j); };
    auto neg = [&cf](std::uint16_t i) { return cf.neg(i); };
    return check_axioms_table(cf.n, plus, neg, cf.zero, cf.carrier);
  }

  const auto &s = std::get<Sampled>(strategy);
  SplitMix64 rng(s.seed);
  AxiomReport rep;
  rep.strategy = "sampled";
  rep.seed = s.seed;
  rep.checks.resize(6);
  for (int k = 1; k <= 6; ++k)
    rep.checks[k - 1] = {k, axiom_names[k - 1], true, {}};

  MvElem zero = mv_zero(A);
  MvElem one = mv_one(A);
  for (std::size_t it = 0; it < s.count; ++it) {
    MvElem x = sample_mv_elem(A, rng);
    MvElem y = sample_mv_elem(A, rng);
    MvElem z = sample_mv_elem(A, rng);
    ++rep.tuples_checked;

    auto record = [&](int k, bool holds, std::vector<MvElem> w) {
      if (!holds && rep.checks[k - 1].passed) {
        rep.checks[k - 1].passed = false;
        rep.checks[k - 1].witness = std::move(w);
      }
    };
    record(1, mv_plus(A, x, mv_plus(A, y, z)) == mv_plus(A, mv_plus(A, x, y), z), {x, y, z});
    record(2, mv_plus(A, x, y) == mv_plus(A, y, x), {x, y});
    record(3, mv_plus(A, x, zero) == x, {x});
    record(4, mv_neg(A, mv_neg(A, x)) == x, {x});
    record(5, mv_plus(A, x, one) == one, {x});
    record(6, mv_plus(A, mv_neg(A, mv_plus(A, mv_neg(A, x), y)), y) ==
                  mv_plus(A, mv_neg(A, mv_plus(A, mv_neg(A, y), x)), x),
           {x, y});
  }
  for (const auto &c : rep.checks)
    rep.all_passed = rep.all_passed && c.passed;
  return rep;
}

} // namespace mvkit

#endif
