#ifndef MVKIT_DSL_HPP
#define MVKIT_DSL_HPP

// Text surface for declaring groups, algebras, elements and terms, plus the
// canonical printers used by reports.
//
//   group  G = Z | Q | lex(g1, g2, ...) | direct(g1, ...)
//   algebra A = chain(n) | product(a1, ...) | unitQ | gamma(G, elem)
//             | komori(n) | chang | quasiconst(A, k) | quotient(A, ideal)
//   term   t = <term expression>
//
// Term operators (one-pass ASCII tokens): ~ negation (tightest), * and /\
// next, + and \/ loosest, all binary operators left-associative; constants 0
// and 1; parentheses free. Element literals: rationals p/q, group/product
// tuples (e1, e2), site tuples [e1, ..., ek]. Ideal arguments: zero,
// radical, whole, kernel(i, ...), or an explicit element list {e1, ...}.
// Comments run from '#' to end of line. Parse errors carry line and column.

#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mvkit/algebra.hpp"
#include "mvkit/spectra.hpp"
#include "mvkit/term.hpp"

namespace mvkit {

// ---------------------------------------------------------------------------
// Tokens
// ---------------------------------------------------------------------------

namespace dsl {

enum class Tok {
  Ident, Integer,
  Equals, LParen, RParen, LBrace, RBrace, LBracket, RBracket, Comma,
  Slash, Plus, Star, Tilde, Join, Meet, Minus,
  End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1, col = 1;
};

[[noreturn]] inline void syntax_error(const Token &t, const std::string &expected) {
  fail(ErrorKind::SyntaxError, "line " + std::to_string(t.line) + ", column " +
                                   std::to_string(t.col) + ": expected " + expected +
                                   (t.kind == Tok::End ? ", found end of input"
                                                       : ", found '" + t.text + "'"));
}

inline std::vector<Token> tokenize(const std::string &text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto push = [&](Tok k, std::string s, int l, int c) {
    out.push_back({k, std::move(s), l, c});
  };
  while (i < text.size()) {
    char c = text[i];
    int l = line, co = col;
    auto advance = [&](std::size_t n) {
      for (std::size_t j = 0; j < n; ++j) {
        if (text[i + j] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      i += n;
    };
    if (c == '#') {
      while (i < text.size() && text[i] != '\n')
        advance(1);
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '\\' && i + 1 < text.size() && text[i + 1] == '/') {
      push(Tok::Join, "\\/", l, co);
      advance(2);
      continue;
    }
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '\\') {
      push(Tok::Meet, "/\\", l, co);
      advance(2);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      push(Tok::Integer, text.substr(i, j - i), l, co);
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      push(Tok::Ident, text.substr(i, j - i), l, co);
      advance(j - i);
      continue;
    }
    Tok k;
    switch (c) {
    case '=': k = Tok::Equals; break;
    case '(': k = Tok::LParen; break;
    case ')': k = Tok::RParen; break;
    case '{': k = Tok::LBrace; break;
    case '}': k = Tok::RBrace; break;
    case '[': k = Tok::LBracket; break;
    case ']': k = Tok::RBracket; break;
    case ',': k = Tok::Comma; break;
    case '/': k = Tok::Slash; break;
    case '+': k = Tok::Plus; break;
    case '*': k = Tok::Star; break;
    case '~': k = Tok::Tilde; break;
    case '-': k = Tok::Minus; break;
    default:
      fail(ErrorKind::SyntaxError, "line " + std::to_string(l) + ", column " +
                                       std::to_string(co) + ": unexpected character '" +
                                       std::string(1, c) + "'");
    }
    push(k, std::string(1, c), l, co);
    advance(1);
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

} // namespace dsl

// ---------------------------------------------------------------------------
// Surface AST (keeps name references so printing round-trips)
// ---------------------------------------------------------------------------

struct GroupExpr;
using GroupExprPtr = std::shared_ptr<const GroupExpr>;

struct GroupExpr {
  enum class Kind { Z, Q, Lex, Direct, Ref };
  Kind kind = Kind::Z;
  std::vector<GroupExprPtr> args;
  std::string name; // Ref
};

struct ElemLit {
  enum class Kind { Rational, Paren, Bracket };
  Kind kind = Kind::Rational;
  Rat value;
  std::vector<ElemLit> items;
};

struct IdealArg {
  enum class Kind { Zero, Radical, Whole, Kernel, Explicit };
  Kind kind = Kind::Zero;
  std::vector<std::size_t> indices; // Kernel
  std::vector<ElemLit> elems;       // Explicit
};

struct AlgExpr;
using AlgExprPtr = std::shared_ptr<const AlgExpr>;

struct AlgExpr {
  enum class Kind { Chain, Product, UnitQ, Gamma, Komori, Chang, QuasiConst, Quotient, Ref };
  Kind kind = Kind::Chain;
  std::size_t number = 0; // Chain, Komori, QuasiConst sites
  std::vector<AlgExprPtr> args;
  GroupExprPtr group; // Gamma
  ElemLit unit;       // Gamma
  IdealArg ideal;     // Quotient
  std::string name;   // Ref
};

struct Decl {
  enum class Kind { Group, Algebra, Term };
  Kind kind = Kind::Group;
  std::string name;
  GroupExprPtr group;
  AlgExprPtr algebra;
  TermPtr term;
};

struct SpecFile {
  std::vector<Decl> decls;
};

// structural equality (for the print/reparse round-trip property)
inline bool group_expr_equal(const GroupExprPtr &a, const GroupExprPtr &b) {
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!group_expr_equal(a->args[i], b->args[i]))
      return false;
  return true;
}

inline bool elem_lit_equal(const ElemLit &a, const ElemLit &b) {
  if (a.kind != b.kind || a.items.size() != b.items.size())
    return false;
  if (a.kind == ElemLit::Kind::Rational && !(a.value == b.value))
    return false;
  for (std::size_t i = 0; i < a.items.size(); ++i)
    if (!elem_lit_equal(a.items[i], b.items[i]))
      return false;
  return true;
}

inline bool alg_expr_equal(const AlgExprPtr &a, const AlgExprPtr &b) {
  if (a->kind != b->kind || a->number != b->number || a->name != b->name ||
      a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!alg_expr_equal(a->args[i], b->args[i]))
      return false;
  if (a->kind == AlgExpr::Kind::Gamma) {
    if (!group_expr_equal(a->group, b->group) || !elem_lit_equal(a->unit, b->unit))
      return false;
  }
  if (a->kind == AlgExpr::Kind::Quotient) {
    if (a->ideal.kind != b->ideal.kind || a->ideal.indices != b->ideal.indices ||
        a->ideal.elems.size() != b->ideal.elems.size())
      return false;
    for (std::size_t i = 0; i < a->ideal.elems.size(); ++i)
      if (!elem_lit_equal(a->ideal.elems[i], b->ideal.elems[i]))
        return false;
  }
  return true;
}

inline bool spec_file_equal(const SpecFile &a, const SpecFile &b) {
  if (a.decls.size() != b.decls.size())
    return false;
  for (std::size_t i = 0; i < a.decls.size(); ++i) {
    const Decl &x = a.decls[i], &y = b.decls[i];
    if (x.kind != y.kind || x.name != y.name)
      return false;
    switch (x.kind) {
    case Decl::Kind::Group:
      if (!group_expr_equal(x.group, y.group))
        return false;
      break;
    case Decl::Kind::Algebra:
      if (!alg_expr_equal(x.algebra, y.algebra))
        return false;
      break;
    case Decl::Kind::Term:
      if (!term_equal(x.term, y.term))
        return false;
      break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace dsl {

class Parser {
public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token &peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  Token expect(Tok k, const std::string &what) {
    if (peek().kind != k)
      syntax_error(peek(), what);
    return take();
  }

  bool accept(Tok k) {
    if (peek().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::size_t parse_count(const std::string &what) {
    Token t = expect(Tok::Integer, what);
    return static_cast<std::size_t>(std::stoull(t.text));
  }

  Rat parse_rational() {
    bool negative = accept(Tok::Minus);
    Token t = expect(Tok::Integer, "a rational literal");
    Int num(t.text);
    if (negative)
      num = -num;
    if (accept(Tok::Slash)) {
      Token d = expect(Tok::Integer, "a denominator");
      return Rat(num, Int(d.text));
    }
    return Rat(num);
  }

  ElemLit parse_elem() {
    if (peek().kind == Tok::LParen) {
      take();
      ElemLit lit;
      lit.kind = ElemLit::Kind::Paren;
      lit.items.push_back(parse_elem());
      while (accept(Tok::Comma))
        lit.items.push_back(parse_elem());
      expect(Tok::RParen, "')'");
      return lit;
    }
    if (peek().kind == Tok::LBracket) {
      take();
      ElemLit lit;
      lit.kind = ElemLit::Kind::Bracket;
      lit.items.push_back(parse_elem());
      while (accept(Tok::Comma))
        lit.items.push_back(parse_elem());
      expect(Tok::RBracket, "']'");
      return lit;
    }
    ElemLit lit;
    lit.kind = ElemLit::Kind::Rational;
    lit.value = parse_rational();
    return lit;
  }

  GroupExprPtr parse_group_expr() {
    Token t = expect(Tok::Ident, "a group expression");
    auto node = std::make_shared<GroupExpr>();
    if (t.text == "Z") {
      node->kind = GroupExpr::Kind::Z;
    } else if (t.text == "Q") {
      node->kind = GroupExpr::Kind::Q;
    } else if (t.text == "lex" || t.text == "direct") {
      node->kind = t.text == "lex" ? GroupExpr::Kind::Lex : GroupExpr::Kind::Direct;
      expect(Tok::LParen, "'('");
      if (peek().kind != Tok::RParen) {
        node->args.push_back(parse_group_expr());
        while (accept(Tok::Comma))
          node->args.push_back(parse_group_expr());
      }
      expect(Tok::RParen, "')'");
      if (node->kind == GroupExpr::Kind::Lex && node->args.empty())
        fail(ErrorKind::ArityError, "lex() needs at least one component");
    } else {
      node->kind = GroupExpr::Kind::Ref;
      node->name = t.text;
    }
    return node;
  }

  IdealArg parse_ideal_arg() {
    if (peek().kind == Tok::LBrace) {
      take();
      IdealArg arg;
      arg.kind = IdealArg::Kind::Explicit;
      if (peek().kind != Tok::RBrace) {
        arg.elems.push_back(parse_elem());
        while (accept(Tok::Comma))
          arg.elems.push_back(parse_elem());
      }
      expect(Tok::RBrace, "'}'");
      return arg;
    }
    Token t = expect(Tok::Ident, "an ideal name");
    IdealArg arg;
    if (t.text == "zero") {
      arg.kind = IdealArg::Kind::Zero;
    } else if (t.text == "radical") {
      arg.kind = IdealArg::Kind::Radical;
    } else if (t.text == "whole") {
      arg.kind = IdealArg::Kind::Whole;
    } else if (t.text == "kernel") {
      arg.kind = IdealArg::Kind::Kernel;
      expect(Tok::LParen, "'('");
      arg.indices.push_back(parse_count("a factor index"));
      while (accept(Tok::Comma))
        arg.indices.push_back(parse_count("a factor index"));
      expect(Tok::RParen, "')'");
    } else {
      syntax_error(t, "zero, radical, whole, kernel(...) or {elements}");
    }
    return arg;
  }

  AlgExprPtr parse_alg_expr() {
    Token t = expect(Tok::Ident, "an algebra expression");
    auto node = std::make_shared<AlgExpr>();
    if (t.text == "chain" || t.text == "komori") {
      node->kind = t.text == "chain" ? AlgExpr::Kind::Chain : AlgExpr::Kind::Komori;
      expect(Tok::LParen, "'('");
      node->number = parse_count("a carrier size");
      expect(Tok::RParen, "')'");
    } else if (t.text == "product") {
      node->kind = AlgExpr::Kind::Product;
      expect(Tok::LParen, "'('");
      node->args.push_back(parse_alg_expr());
      while (accept(Tok::Comma))
        node->args.push_back(parse_alg_expr());
      expect(Tok::RParen, "')'");
    } else if (t.text == "unitQ") {
      node->kind = AlgExpr::Kind::UnitQ;
    } else if (t.text == "chang") {
      node->kind = AlgExpr::Kind::Chang;
    } else if (t.text == "gamma") {
      node->kind = AlgExpr::Kind::Gamma;
      expect(Tok::LParen, "'('");
      node->group = parse_group_expr();
      expect(Tok::Comma, "','");
      node->unit = parse_elem();
      expect(Tok::RParen, "')'");
    } else if (t.text == "quasiconst") {
      node->kind = AlgExpr::Kind::QuasiConst;
      expect(Tok::LParen, "'('");
      node->args.push_back(parse_alg_expr());
      expect(Tok::Comma, "','");
      node->number = parse_count("a site count");
      expect(Tok::RParen, "')'");
    } else if (t.text == "quotient") {
      node->kind = AlgExpr::Kind::Quotient;
      expect(Tok::LParen, "'('");
      node->args.push_back(parse_alg_expr());
      expect(Tok::Comma, "','");
      node->ideal = parse_ideal_arg();
      expect(Tok::RParen, "')'");
    } else {
      node->kind = AlgExpr::Kind::Ref;
      node->name = t.text;
    }
    return node;
  }

  // term expressions: ~ binds tightest, then * and /\, then + and \/
  TermPtr parse_term_expr() { return parse_sum(); }

  TermPtr parse_sum() {
    TermPtr t = parse_prod();
    while (true) {
      if (accept(Tok::Plus))
        t = t_plus(t, parse_prod());
      else if (accept(Tok::Join))
        t = t_join(t, parse_prod());
      else
        return t;
    }
  }

  TermPtr parse_prod() {
    TermPtr t = parse_unary();
    while (true) {
      if (accept(Tok::Star))
        t = t_times(t, parse_unary());
      else if (accept(Tok::Meet))
        t = t_meet(t, parse_unary());
      else
        return t;
    }
  }

  TermPtr parse_unary() {
    if (accept(Tok::Tilde))
      return t_neg(parse_unary());
    if (peek().kind == Tok::LParen) {
      take();
      TermPtr t = parse_term_expr();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (peek().kind == Tok::Integer) {
      Token t = take();
      if (t.text == "0")
        return t_zero();
      if (t.text == "1")
        return t_one();
      syntax_error(t, "a term (only 0 and 1 are term constants)");
    }
    if (peek().kind == Tok::Ident)
      return t_var(take().text);
    syntax_error(peek(), "a term");
  }

  SpecFile parse_file() {
    SpecFile file;
    while (peek().kind != Tok::End) {
      Token kw = expect(Tok::Ident, "'group', 'algebra' or 'term'");
      Decl d;
      d.name = expect(Tok::Ident, "a declaration name").text;
      expect(Tok::Equals, "'='");
      if (kw.text == "group") {
        d.kind = Decl::Kind::Group;
        d.group = parse_group_expr();
      } else if (kw.text == "algebra") {
        d.kind = Decl::Kind::Algebra;
        d.algebra = parse_alg_expr();
      } else if (kw.text == "term") {
        d.kind = Decl::Kind::Term;
        d.term = parse_term_expr();
      } else {
        syntax_error(kw, "'group', 'algebra' or 'term'");
      }
      for (const auto &prev : file.decls)
        if (prev.name == d.name)
          fail(ErrorKind::UnknownName, "duplicate declaration of '" + d.name + "'");
      file.decls.push_back(std::move(d));
    }
    return file;
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

} // namespace dsl

inline SpecFile parse_spec(const std::string &text) {
  dsl::Parser p(dsl::tokenize(text));
  return p.parse_file();
}

// ---------------------------------------------------------------------------
// Resolution: surface AST -> validated descriptors
// ---------------------------------------------------------------------------

struct ResolvedFile {
  std::map<std::string, OrderedGroupDesc> groups;
  std::map<std::string, MvAlgebraDesc> algebras;
  std::map<std::string, TermPtr> terms;
};

MvElem coerce_elem(const MvAlgebraDesc &A, const ElemLit &lit);

inline GroupElem coerce_group_elem(const OrderedGroupDesc &G, const ElemLit &lit) {
  switch (G.kind) {
  case OrderedGroupDesc::Kind::Integers:
    if (lit.kind != ElemLit::Kind::Rational || !lit.value.is_integer())
      fail(ErrorKind::ShapeMismatch, "expected an integer literal");
    return g_int(lit.value.num());
  case OrderedGroupDesc::Kind::Rationals:
    if (lit.kind != ElemLit::Kind::Rational)
      fail(ErrorKind::ShapeMismatch, "expected a rational literal");
    return g_rat(lit.value);
  case OrderedGroupDesc::Kind::Lex:
  case OrderedGroupDesc::Kind::Direct: {
    if (lit.kind != ElemLit::Kind::Paren || lit.items.size() != G.components.size())
      fail(ErrorKind::ShapeMismatch, "expected a tuple literal matching the group");
    std::vector<GroupElem> xs;
    for (std::size_t i = 0; i < G.components.size(); ++i)
      xs.push_back(coerce_group_elem(G.components[i], lit.items[i]));
    return g_tuple(std::move(xs));
  }
  case OrderedGroupDesc::Kind::QuasiConstant: {
    if (lit.kind != ElemLit::Kind::Bracket || lit.items.size() != G.qc_sites)
      fail(ErrorKind::ShapeMismatch, "expected a site tuple matching the group");
    std::vector<GroupElem> xs;
    for (const auto &item : lit.items)
      xs.push_back(coerce_group_elem(*G.qc_base, item));
    return g_tuple(std::move(xs));
  }
  }
  fail(ErrorKind::ShapeMismatch, "coerce_group_elem");
}

inline MvElem coerce_elem(const MvAlgebraDesc &A, const ElemLit &lit) {
  MvElem out = m_rat(Rat(0));
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    if (lit.kind != ElemLit::Kind::Rational)
      fail(ErrorKind::ShapeMismatch, "expected a rational literal");
    out = m_rat(lit.value);
    break;
  case MvAlgebraDesc::Kind::Product: {
    if (lit.kind != ElemLit::Kind::Paren || lit.items.size() != A.factors.size())
      fail(ErrorKind::ShapeMismatch, "expected a tuple literal matching the product");
    std::vector<MvElem> xs;
    for (std::size_t i = 0; i < A.factors.size(); ++i)
      xs.push_back(coerce_elem(A.factors[i], lit.items[i]));
    out = m_tuple(std::move(xs));
    break;
  }
  case MvAlgebraDesc::Kind::Gamma:
    out = m_group(coerce_group_elem(*A.group, lit));
    break;
  case MvAlgebraDesc::Kind::Quotient:
    out = m_class(A.qtable->canon_of(coerce_elem(*A.base, lit)));
    break;
  case MvAlgebraDesc::Kind::QuasiConstant:
  case MvAlgebraDesc::Kind::FunctionAlgebra: {
    if (lit.kind != ElemLit::Kind::Bracket || lit.items.size() != A.sites)
      fail(ErrorKind::ShapeMismatch, "expected a site tuple [e1, ..., ek]");
    std::vector<MvElem> xs;
    for (const auto &item : lit.items)
      xs.push_back(coerce_elem(*A.base, item));
    out = m_tuple(std::move(xs));
    break;
  }
  }
  if (!mv_contains(A, out))
    fail(ErrorKind::ElementNotInAlgebra, "literal is not an element of the algebra");
  return out;
}

inline Ideal resolve_ideal_arg(const MvAlgebraDesc &A, const IdealArg &arg) {
  switch (arg.kind) {
  case IdealArg::Kind::Zero:
    return Ideal::zero();
  case IdealArg::Kind::Radical:
    return Ideal::radical();
  case IdealArg::Kind::Whole:
    return Ideal::whole();
  case IdealArg::Kind::Kernel: {
    std::set<std::size_t> zeroed(arg.indices.begin(), arg.indices.end());
    if (A.kind != MvAlgebraDesc::Kind::Product)
      fail(ErrorKind::InvalidIdeal, "kernel(...) needs a product algebra");
    for (std::size_t i : zeroed)
      if (i >= A.factors.size())
        fail(ErrorKind::InvalidIdeal, "kernel index out of range");
    return Ideal::product_kernel(std::move(zeroed));
  }
  case IdealArg::Kind::Explicit: {
    std::vector<MvElem> xs;
    for (const auto &lit : arg.elems)
      xs.push_back(coerce_elem(A, lit));
    return Ideal::explicit_set(std::move(xs));
  }
  }
  fail(ErrorKind::InvalidIdeal, "resolve_ideal_arg");
}

inline OrderedGroupDesc resolve_group(const GroupExprPtr &e, const ResolvedFile &ctx) {
  switch (e->kind) {
  case GroupExpr::Kind::Z:
    return integers();
  case GroupExpr::Kind::Q:
    return rationals();
  case GroupExpr::Kind::Lex:
  case GroupExpr::Kind::Direct: {
    std::vector<OrderedGroupDesc> comps;
    for (const auto &a : e->args)
      comps.push_back(resolve_group(a, ctx));
    return e->kind == GroupExpr::Kind::Lex ? lex_product(std::move(comps))
                                           : direct_product(std::move(comps));
  }
  case GroupExpr::Kind::Ref: {
    auto it = ctx.groups.find(e->name);
    if (it == ctx.groups.end())
      fail(ErrorKind::UnknownName, "unknown group '" + e->name + "'");
    return it->second;
  }
  }
  fail(ErrorKind::UnknownName, "resolve_group");
}

inline MvAlgebraDesc resolve_algebra(const AlgExprPtr &e, const ResolvedFile &ctx,
                                     std::size_t cap = kDefaultIdealCap) {
  switch (e->kind) {
  case AlgExpr::Kind::Chain:
    return finite_chain(e->number);
  case AlgExpr::Kind::Komori:
    return komori(e->number);
  case AlgExpr::Kind::Chang:
    return chang();
  case AlgExpr::Kind::UnitQ:
    return unit_interval_q();
  case AlgExpr::Kind::Product: {
    std::vector<MvAlgebraDesc> fs;
    for (const auto &a : e->args) {
      MvAlgebraDesc f = resolve_algebra(a, ctx, cap);
      if (!finite_size(f))
        fail(ErrorKind::UnsupportedShape, "product factors must be finite");
      fs.push_back(std::move(f));
    }
    return mv_product(std::move(fs));
  }
  case AlgExpr::Kind::Gamma: {
    OrderedGroupDesc g = resolve_group(e->group, ctx);
    GroupElem u = coerce_group_elem(g, e->unit);
    return gamma_desc(std::move(g), std::move(u));
  }
  case AlgExpr::Kind::QuasiConst: {
    MvAlgebraDesc base = resolve_algebra(e->args[0], ctx, cap);
    return quasi_constant_desc(std::move(base), e->number);
  }
  case AlgExpr::Kind::Quotient: {
    MvAlgebraDesc base = resolve_algebra(e->args[0], ctx, cap);
    Ideal I = resolve_ideal_arg(base, e->ideal);
    return quotient(base, std::move(I), cap).algebra;
  }
  case AlgExpr::Kind::Ref: {
    auto it = ctx.algebras.find(e->name);
    if (it == ctx.algebras.end())
      fail(ErrorKind::UnknownName, "unknown algebra '" + e->name + "'");
    return it->second;
  }
  }
  fail(ErrorKind::UnknownName, "resolve_algebra");
}

inline ResolvedFile resolve_spec(const SpecFile &file, std::size_t cap = kDefaultIdealCap) {
  ResolvedFile ctx;
  for (const auto &d : file.decls) {
    switch (d.kind) {
    case Decl::Kind::Group: {
      OrderedGroupDesc g = resolve_group(d.group, ctx);
      validate_group(g);
      ctx.groups.emplace(d.name, std::move(g));
      break;
    }
    case Decl::Kind::Algebra:
      ctx.algebras.emplace(d.name, resolve_algebra(d.algebra, ctx, cap));
      break;
    case Decl::Kind::Term:
      ctx.terms.emplace(d.name, d.term);
      break;
    }
  }
  return ctx;
}

// ---------------------------------------------------------------------------
// Printers (canonical surface forms; reports reuse these)
// ---------------------------------------------------------------------------

inline std::string print_group_expr(const GroupExprPtr &e) {
  switch (e->kind) {
  case GroupExpr::Kind::Z:
    return "Z";
  case GroupExpr::Kind::Q:
    return "Q";
  case GroupExpr::Kind::Lex:
  case GroupExpr::Kind::Direct: {
    std::string out = e->kind == GroupExpr::Kind::Lex ? "lex(" : "direct(";
    for (std::size_t i = 0; i < e->args.size(); ++i)
      out += (i ? ", " : "") + print_group_expr(e->args[i]);
    return out + ")";
  }
  case GroupExpr::Kind::Ref:
    return e->name;
  }
  return "?";
}

inline std::string print_elem_lit(const ElemLit &lit) {
  switch (lit.kind) {
  case ElemLit::Kind::Rational:
    return lit.value.str();
  case ElemLit::Kind::Paren:
  case ElemLit::Kind::Bracket: {
    std::string out = lit.kind == ElemLit::Kind::Paren ? "(" : "[";
    for (std::size_t i = 0; i < lit.items.size(); ++i)
      out += (i ? ", " : "") + print_elem_lit(lit.items[i]);
    return out + (lit.kind == ElemLit::Kind::Paren ? ")" : "]");
  }
  }
  return "?";
}

inline std::string print_ideal_arg(const IdealArg &arg) {
  switch (arg.kind) {
  case IdealArg::Kind::Zero:
    return "zero";
  case IdealArg::Kind::Radical:
    return "radical";
  case IdealArg::Kind::Whole:
    return "whole";
  case IdealArg::Kind::Kernel: {
    std::string out = "kernel(";
    for (std::size_t i = 0; i < arg.indices.size(); ++i)
      out += (i ? ", " : "") + std::to_string(arg.indices[i]);
    return out + ")";
  }
  case IdealArg::Kind::Explicit: {
    std::string out = "{";
    for (std::size_t i = 0; i < arg.elems.size(); ++i)
      out += (i ? ", " : "") + print_elem_lit(arg.elems[i]);
    return out + "}";
  }
  }
  return "?";
}

inline std::string print_alg_expr(const AlgExprPtr &e) {
  switch (e->kind) {
  case AlgExpr::Kind::Chain:
    return "chain(" + std::to_string(e->number) + ")";
  case AlgExpr::Kind::Komori:
    return "komori(" + std::to_string(e->number) + ")";
  case AlgExpr::Kind::Chang:
    return "chang";
  case AlgExpr::Kind::UnitQ:
    return "unitQ";
  case AlgExpr::Kind::Product: {
    std::string out = "product(";
    for (std::size_t i = 0; i < e->args.size(); ++i)
      out += (i ? ", " : "") + print_alg_expr(e->args[i]);
    return out + ")";
  }
  case AlgExpr::Kind::Gamma:
    return "gamma(" + print_group_expr(e->group) + ", " + print_elem_lit(e->unit) + ")";
  case AlgExpr::Kind::QuasiConst:
    return "quasiconst(" + print_alg_expr(e->args[0]) + ", " + std::to_string(e->number) +
           ")";
  case AlgExpr::Kind::Quotient:
    return "quotient(" + print_alg_expr(e->args[0]) + ", " + print_ideal_arg(e->ideal) +
           ")";
  case AlgExpr::Kind::Ref:
    return e->name;
  }
  return "?";
}

/// Canonical primitive-basis form: sugar never reappears; Neg(Zero) prints
/// as 1; Plus children that are themselves Plus are parenthesized so the
/// reparse rebuilds the identical tree.
inline std::string print_term(const TermPtr &t) {
  switch (t->kind) {
  case TermNode::Kind::Var:
    return t->name;
  case TermNode::Kind::Zero:
    return "0";
  case TermNode::Kind::Neg: {
    if (t->a->kind == TermNode::Kind::Zero)
      return "1";
    std::string inner = print_term(t->a);
    if (t->a->kind == TermNode::Kind::Plus)
      return "~(" + inner + ")";
    return "~" + inner;
  }
  case TermNode::Kind::Plus: {
    auto wrap = [](const TermPtr &c) {
      std::string s = print_term(c);
      return c->kind == TermNode::Kind::Plus ? "(" + s + ")" : s;
    };
    return wrap(t->a) + " + " + wrap(t->b);
  }
  }
  return "?";
}

inline std::string print_spec(const SpecFile &file) {
  std::string out;
  for (const auto &d : file.decls) {
    switch (d.kind) {
    case Decl::Kind::Group:
      out += "group " + d.name + " = " + print_group_expr(d.group) + "\n";
      break;
    case Decl::Kind::Algebra:
      out += "algebra " + d.name + " = " + print_alg_expr(d.algebra) + "\n";
      break;
    case Decl::Kind::Term:
      out += "term " + d.name + " = " + print_term(d.term) + "\n";
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Descriptor and element printers for reports
// ---------------------------------------------------------------------------

inline std::string group_desc_str(const OrderedGroupDesc &g) {
  switch (g.kind) {
  case OrderedGroupDesc::Kind::Integers:
    return "Z";
  case OrderedGroupDesc::Kind::Rationals:
    return "Q";
  case OrderedGroupDesc::Kind::Lex:
  case OrderedGroupDesc::Kind::Direct: {
    std::string out = g.kind == OrderedGroupDesc::Kind::Lex ? "lex(" : "direct(";
    for (std::size_t i = 0; i < g.components.size(); ++i)
      out += (i ? ", " : "") + group_desc_str(g.components[i]);
    return out + ")";
  }
  case OrderedGroupDesc::Kind::QuasiConstant:
    return "qcgroup(" + group_desc_str(*g.qc_base) + ", " +
           std::to_string(g.qc_sites) + ")";
  }
  return "?";
}

inline std::string group_elem_str(const GroupElem &x) {
  if (x.is_int())
    return x.as_int().str();
  if (x.is_rat())
    return x.as_rat().str();
  std::string out = "(";
  for (std::size_t i = 0; i < x.as_tuple().size(); ++i)
    out += (i ? ", " : "") + group_elem_str(x.as_tuple()[i]);
  return out + ")";
}

inline std::string mv_elem_str(const MvElem &x) {
  if (x.is_rat())
    return x.as_rat().str();
  if (x.is_group())
    return group_elem_str(x.as_group());
  if (x.is_class())
    return mv_elem_str(x.as_class());
  std::string out = "(";
  for (std::size_t i = 0; i < x.as_tuple().size(); ++i)
    out += (i ? ", " : "") + mv_elem_str(x.as_tuple()[i]);
  return out + ")";
}

inline std::string ideal_str(const Ideal &I) {
  switch (I.kind) {
  case Ideal::Kind::Zero:
    return "zero";
  case Ideal::Kind::Radical:
    return "radical";
  case Ideal::Kind::Whole:
    return "whole";
  case Ideal::Kind::ProductKernel: {
    std::string out = "kernel(";
    bool first = true;
    for (std::size_t i : I.zeroed) {
      out += (first ? "" : ", ") + std::to_string(i);
      first = false;
    }
    return out + ")";
  }
  case Ideal::Kind::Explicit: {
    std::string out = "{";
    for (std::size_t i = 0; i < I.elems.size(); ++i)
      out += (i ? ", " : "") + mv_elem_str(I.elems[i]);
    return out + "}";
  }
  }
  return "?";
}

inline std::string lideal_str(const LIdeal &J) {
  switch (J.kind) {
  case LIdeal::Kind::Zero:
    return "zero";
  case LIdeal::Kind::Whole:
    return "whole";
  case LIdeal::Kind::TailKernel:
    return "tailkernel(" + std::to_string(J.tail) + ")";
  case LIdeal::Kind::ProductKernel: {
    std::string out = "kernel(";
    bool first = true;
    for (std::size_t i : J.zeroed) {
      out += (first ? "" : ", ") + std::to_string(i);
      first = false;
    }
    return out + ")";
  }
  }
  return "?";
}

inline std::string alg_desc_str(const MvAlgebraDesc &A) {
  switch (A.kind) {
  case MvAlgebraDesc::Kind::FiniteChain:
    return "chain(" + std::to_string(A.chain_size) + ")";
  case MvAlgebraDesc::Kind::UnitIntervalQ:
    return "unitQ";
  case MvAlgebraDesc::Kind::Product: {
    std::string out = "product(";
    for (std::size_t i = 0; i < A.factors.size(); ++i)
      out += (i ? ", " : "") + alg_desc_str(A.factors[i]);
    return out + ")";
  }
  case MvAlgebraDesc::Kind::Gamma:
    return "gamma(" + group_desc_str(*A.group) + ", " + group_elem_str(*A.unit) + ")";
  case MvAlgebraDesc::Kind::Quotient:
    return "quotient(" + alg_desc_str(*A.base) + ", " + ideal_str(*A.ideal) + ")";
  case MvAlgebraDesc::Kind::QuasiConstant:
    return "quasiconst(" + alg_desc_str(*A.base) + ", " + std::to_string(A.sites) + ")";
  case MvAlgebraDesc::Kind::FunctionAlgebra:
    return "functions(" + alg_desc_str(*A.base) + ", " + std::to_string(A.sites) + ")";
  }
  return "?";
}

} // namespace mvkit

#endif
