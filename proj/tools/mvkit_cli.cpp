// mvkit command-line driver: loads a declaration file, dispatches one
// command against it and prints a deterministic JSON report (or a tabular
// rendering with --pretty). Exit codes: 0 success, 1 verification failure
// (the report carries the witness), 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "mvkit/mvkit.hpp"

using json = nlohmann::json;
using namespace mvkit;

namespace {

struct Options {
  std::string file;
  bool pretty = false;
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  std::size_t cap = 64;
  std::size_t surrogate_depth = 2;
};

struct CommandContext {
  Options opts;
  ResolvedFile resolved;
  SpecFile surface;

  SampleParams params() const { return {opts.samples, opts.seed}; }
};

const MvAlgebraDesc &need_algebra(const CommandContext &ctx, const std::string &name) {
  auto it = ctx.resolved.algebras.find(name);
  if (it == ctx.resolved.algebras.end())
    fail(ErrorKind::UnknownName, "unknown algebra '" + name + "'");
  return it->second;
}

const OrderedGroupDesc &need_group(const CommandContext &ctx, const std::string &name) {
  auto it = ctx.resolved.groups.find(name);
  if (it == ctx.resolved.groups.end())
    fail(ErrorKind::UnknownName, "unknown group '" + name + "'");
  return it->second;
}

const TermPtr &need_term(const CommandContext &ctx, const std::string &name) {
  auto it = ctx.resolved.terms.find(name);
  if (it == ctx.resolved.terms.end())
    fail(ErrorKind::UnknownName, "unknown term '" + name + "'");
  return it->second;
}

ElemLit parse_elem_arg(const std::string &text) {
  dsl::Parser p(dsl::tokenize(text));
  ElemLit lit = p.parse_elem();
  if (p.peek().kind != dsl::Tok::End)
    fail(ErrorKind::SyntaxError, "trailing input after element literal");
  return lit;
}

Rat parse_rat_arg(const std::string &text) {
  dsl::Parser p(dsl::tokenize(text));
  Rat r = p.parse_rational();
  if (p.peek().kind != dsl::Tok::End)
    fail(ErrorKind::SyntaxError, "trailing input after rational");
  return r;
}

json verification_json(const VerificationInfo &v) {
  json j;
  j["strategy"] = v.strategy;
  j["checked"] = v.checked;
  if (v.strategy == "sampled")
    j["seed"] = v.seed;
  j["passed"] = v.passed;
  return j;
}

json axiom_report_json(const AxiomReport &rep) {
  json out;
  out["strategy"] = rep.strategy;
  out["tuples_checked"] = rep.tuples_checked;
  if (rep.strategy == "sampled")
    out["seed"] = rep.seed;
  out["all_passed"] = rep.all_passed;
  json checks = json::array();
  for (const auto &c : rep.checks) {
    json e;
    e["axiom"] = c.axiom;
    e["name"] = c.name;
    e["passed"] = c.passed;
    if (!c.witness.empty()) {
      json w = json::array();
      for (const auto &x : c.witness)
        w.push_back(mv_elem_str(x));
      e["witness"] = w;
    }
    checks.push_back(e);
  }
  out["checks"] = checks;
  return out;
}

json embedding_json(const Embedding &e) {
  json out;
  out["source"] = alg_desc_str(e.source);
  out["target"] = alg_desc_str(e.target);
  out["homomorphism"] = verification_json(e.hom);
  out["injectivity"] = verification_json(e.injectivity);
  out["notes"] = e.notes;
  return out;
}

json surrogate_json(std::size_t depth) {
  json s;
  s["used"] = true;
  s["group"] = group_desc_str(nonstandard_reals(depth));
  s["depth"] = depth;
  return s;
}

void print_pretty(const json &j, std::ostream &os, int indent = 0) {
  std::string pad(indent, ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        os << pad << it.key() << ":\n";
        print_pretty(it.value(), os, indent + 2);
      } else {
        os << pad << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto &v : j) {
      if (v.is_object() || v.is_array()) {
        os << pad << "-\n";
        print_pretty(v, os, indent + 2);
      } else {
        os << pad << "- " << v.dump() << "\n";
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

int emit(const CommandContext &ctx, json report, bool verification_ok) {
  report["status"] = verification_ok ? "ok" : "verification-failed";
  if (ctx.opts.pretty)
    print_pretty(report, std::cout);
  else
    std::cout << report.dump(2) << "\n";
  return verification_ok ? 0 : 1;
}

json base_report(const CommandContext &ctx, const std::string &command) {
  json j;
  j["command"] = command;
  j["inputs"] = json::object();
  j["settings"] = {{"seed", ctx.opts.seed},
                   {"samples", ctx.opts.samples},
                   {"cap", ctx.opts.cap},
                   {"surrogate_depth", ctx.opts.surrogate_depth}};
  return j;
}

// ---------------------------------------------------------------------------
// command handlers
// ---------------------------------------------------------------------------

int cmd_classify(const CommandContext &ctx, const std::string &name) {
  const auto &A = need_algebra(ctx, name);
  auto c = classify(A, ctx.opts.cap, ctx.params());
  json rep = base_report(ctx, "classify");
  rep["inputs"] = {{"algebra", name}, {"desc", alg_desc_str(A)}};
  rep["results"] = {{"is_chain", c.is_chain},
                    {"is_simple", c.is_simple},
                    {"is_semisimple", c.is_semisimple},
                    {"is_local", c.is_local},
                    {"is_perfect", c.is_perfect},
                    {"maximal_ideal_count", c.maximal_ideal_count.str()},
                    {"radical", ideal_str(c.radical_ideal)}};
  return emit(ctx, rep, true);
}

int cmd_ideals(const CommandContext &ctx, const std::string &name) {
  const auto &A = need_algebra(ctx, name);
  std::vector<Ideal> ideals =
      finite_size(A) ? enumerate_ideals(A, ctx.opts.cap) : symbolic_ideals(A);
  json rep = base_report(ctx, "ideals");
  rep["inputs"] = {{"algebra", name}, {"desc", alg_desc_str(A)}};
  json list = json::array();
  for (const auto &I : ideals) {
    auto p = ideal_predicates(A, I, ctx.params(), ctx.opts.cap);
    list.push_back({{"ideal", ideal_str(I)},
                    {"is_prime", p.is_prime},
                    {"is_maximal", p.is_maximal}});
  }
  rep["results"] = {{"count", ideals.size()},
                    {"mode", finite_size(A) ? "enumerated" : "symbolic-catalog"},
                    {"ideals", list}};
  return emit(ctx, rep, true);
}

int cmd_spec(const CommandContext &ctx, const std::string &name) {
  const auto &A = need_algebra(ctx, name);
  auto primes = spec(A, ctx.opts.cap, ctx.params());
  json rep = base_report(ctx, "spec");
  rep["inputs"] = {{"algebra", name}, {"desc", alg_desc_str(A)}};
  json list = json::array();
  for (const auto &P : primes)
    list.push_back(ideal_str(P));
  rep["results"] = {{"count", primes.size()}, {"primes", list}};
  return emit(ctx, rep, true);
}

int cmd_radical(const CommandContext &ctx, const std::string &name) {
  const auto &A = need_algebra(ctx, name);
  Ideal r = radical(A, ctx.opts.cap, ctx.params());
  json rep = base_report(ctx, "radical");
  rep["inputs"] = {{"algebra", name}, {"desc", alg_desc_str(A)}};
  rep["results"] = {{"radical", ideal_str(r)}};
  return emit(ctx, rep, true);
}

int cmd_quotient(const CommandContext &ctx, const std::string &name,
                 const std::string &ideal_text) {
  const auto &A = need_algebra(ctx, name);
  dsl::Parser p(dsl::tokenize(ideal_text));
  IdealArg arg = p.parse_ideal_arg();
  Ideal I = resolve_ideal_arg(A, arg);
  QuotientResult q = quotient(A, I, ctx.opts.cap);
  json rep = base_report(ctx, "quotient");
  rep["inputs"] = {{"algebra", name}, {"desc", alg_desc_str(A)}, {"ideal", ideal_str(I)}};
  json res;
  res["quotient"] = alg_desc_str(q.algebra);
  if (auto s = finite_size(q.algebra))
    res["carrier_size"] = s->str();
  rep["results"] = res;
  return emit(ctx, rep, true);
}

int cmd_ord(const CommandContext &ctx, const std::string &name, const std::string &elem) {
  const auto &A = need_algebra(ctx, name);
  MvElem x = coerce_elem(A, parse_elem_arg(elem));
  auto o = ord(A, x);
  json rep = base_report(ctx, "ord");
  rep["inputs"] = {{"algebra", name}, {"element", mv_elem_str(x)}};
  json res;
  if (o) {
    res["ord"] = o->str();
    res["witness_nfold_is_one"] = mv_nfold(A, x, *o) == mv_one(A);
  } else {
    res["ord"] = "infinite";
  }
  rep["results"] = res;
  return emit(ctx, rep, true);
}

int cmd_eval(const CommandContext &ctx, const std::string &term_name,
             const std::string &alg_name, const std::vector<std::string> &bindings) {
  const auto &A = need_algebra(ctx, alg_name);
  const auto &t = need_term(ctx, term_name);
  std::map<std::string, MvElem> env;
  for (const auto &b : bindings) {
    auto eq = b.find('=');
    if (eq == std::string::npos)
      fail(ErrorKind::SyntaxError, "binding must look like name=element: " + b);
    env.emplace(b.substr(0, eq), coerce_elem(A, parse_elem_arg(b.substr(eq + 1))));
  }
  MvElem v = eval_term(A, t, env);
  json rep = base_report(ctx, "eval");
  json binds = json::object();
  for (const auto &[k, x] : env)
    binds[k] = mv_elem_str(x);
  rep["inputs"] = {{"term", term_name}, {"algebra", alg_name}, {"bindings", binds}};
  rep["results"] = {{"value", mv_elem_str(v)}};
  return emit(ctx, rep, true);
}

int cmd_axioms(const CommandContext &ctx, const std::string &name,
               const std::string &strategy) {
  const auto &A = need_algebra(ctx, name);
  Strategy s = Exhaustive{};
  std::string chosen = strategy;
  if (chosen.empty())
    chosen = finite_size(A) ? "exhaustive" : "sampled";
  if (chosen == "sampled")
    s = Sampled{ctx.opts.samples, ctx.opts.seed};
  else if (chosen != "exhaustive")
    fail(ErrorKind::SyntaxError, "strategy must be 'exhaustive' or 'sampled'");
  AxiomReport r = check_axioms(A, s, std::max<std::size_t>(ctx.opts.cap, 4096));
  json rep = base_report(ctx, "axioms");
  rep["inputs"] = {{"algebra", name}, {"desc", alg_desc_str(A)}};
  rep["results"] = axiom_report_json(r);
  return emit(ctx, rep, r.all_passed);
}

int cmd_embed_chang(const CommandContext &ctx, const std::string &name) {
  const auto &A = need_algebra(ctx, name);
  Embedding e = chang_embedding(A, ctx.opts.cap, ctx.params());
  json rep = base_report(ctx, "embed-chang");
  rep["inputs"] = {{"algebra", name}, {"desc", alg_desc_str(A)}};
  rep["results"] = embedding_json(e);
  return emit(ctx, rep, true);
}

int cmd_dfunctor(const CommandContext &ctx, const std::string &name) {
  const auto &A = need_algebra(ctx, name);
  DFunctorResult d = d_functor(A, ctx.opts.cap, ctx.params());
  json rep = base_report(ctx, "dfunctor");
  rep["inputs"] = {{"algebra", name}, {"desc", alg_desc_str(A)}};
  rep["results"] = {{"group", group_desc_str(d.group)}};
  return emit(ctx, rep, true);
}

int cmd_gfunctor(const CommandContext &ctx, const std::string &name) {
  const auto &G = need_group(ctx, name);
  MvAlgebraDesc A = g_functor(G);
  bool perfect = classify(A, ctx.opts.cap, ctx.params()).is_perfect;
  json rep = base_report(ctx, "gfunctor");
  rep["inputs"] = {{"group", name}, {"desc", group_desc_str(G)}};
  rep["results"] = {{"algebra", alg_desc_str(A)}, {"is_perfect", perfect}};
  return emit(ctx, rep, perfect);
}

int cmd_roundtrip(const CommandContext &ctx, const std::string &name) {
  json rep = base_report(ctx, "roundtrip");
  RoundtripReport r;
  if (ctx.resolved.groups.count(name)) {
    const auto &G = need_group(ctx, name);
    rep["inputs"] = {{"group", name}, {"desc", group_desc_str(G)}};
    r = roundtrip_group(G, ctx.params(), ctx.opts.cap);
  } else {
    const auto &A = need_algebra(ctx, name);
    rep["inputs"] = {{"algebra", name}, {"desc", alg_desc_str(A)}};
    r = roundtrip_algebra(A, ctx.params(), ctx.opts.cap);
  }
  rep["results"] = {{"direction", r.direction},
                    {"identity", verification_json(r.identity)},
                    {"homomorphism", verification_json(r.hom)}};
  return emit(ctx, rep, r.identity.passed && r.hom.passed);
}

int cmd_qc_member(const CommandContext &ctx, const std::string &name,
                  const std::string &elem) {
  const auto &K = need_algebra(ctx, name);
  if (K.kind != MvAlgebraDesc::Kind::QuasiConstant)
    fail(ErrorKind::ShapeMismatch, "qc-member needs a quasiconst(...) algebra");
  ElemLit lit = parse_elem_arg(elem);
  if (lit.kind != ElemLit::Kind::Bracket || lit.items.size() != K.sites)
    fail(ErrorKind::ShapeMismatch, "expected a site tuple [e1, ..., ek]");
  std::vector<MvElem> sites;
  for (const auto &item : lit.items)
    sites.push_back(coerce_elem(*K.base, item));
  QuasiConstantWitness w = is_quasi_constant(*K.base, sites, ctx.opts.cap, ctx.params());
  json rep = base_report(ctx, "qc-member");
  rep["inputs"] = {{"algebra", name}, {"function", mv_elem_str(m_tuple(sites))}};
  json res;
  res["member"] = w.member;
  res["anchor"] = mv_elem_str(w.anchor);
  res["anchor_class"] = w.anchor_class.str();
  json dists = json::array();
  for (const auto &d : w.distances)
    dists.push_back(mv_elem_str(d));
  res["site_distances"] = dists;
  if (!w.member)
    res["failing_site"] = w.failing_site;
  rep["results"] = res;
  return emit(ctx, rep, true);
}

int cmd_separate(const CommandContext &ctx, const std::string &xs, const std::string &ys) {
  Rat x = parse_rat_arg(xs), y = parse_rat_arg(ys);
  SeparatingTerm st = separating_term(x, y);
  json rep = base_report(ctx, "separate");
  rep["inputs"] = {{"x", x.str()}, {"y", y.str()}};
  json res;
  res["stages"] = std::string(st.stages.begin(), st.stages.end());
  res["stage_count"] = st.stages.size();
  // straight-line form keeps deep shared terms readable
  json lines = json::array();
  std::string cur = "t0 = x";
  lines.push_back(cur);
  for (std::size_t i = 0; i < st.stages.size(); ++i) {
    std::string prev = "t" + std::to_string(i);
    std::string next = "t" + std::to_string(i + 1);
    lines.push_back(next + " = " + prev + (st.stages[i] == 'D' ? " + " : " * ") + prev);
  }
  res["straight_line"] = lines;
  if (st.stages.size() <= 8)
    res["term"] = print_term(st.term);
  res["value_at_x"] = st.value_at_x.str();
  res["value_at_y"] = st.value_at_y.str();
  rep["results"] = res;
  return emit(ctx, rep, true);
}

int cmd_local_rep(const CommandContext &ctx, const std::string &name) {
  const auto &A = need_algebra(ctx, name);
  Embedding e = local_representation(A, ctx.opts.surrogate_depth, ctx.opts.cap, ctx.params());
  json rep = base_report(ctx, "local-rep");
  rep["inputs"] = {{"algebra", name}, {"desc", alg_desc_str(A)}};
  rep["results"] = embedding_json(e);
  rep["surrogate"] = surrogate_json(ctx.opts.surrogate_depth);
  return emit(ctx, rep, true);
}

int cmd_perfect_rep(const CommandContext &ctx, const std::string &name) {
  const auto &A = need_algebra(ctx, name);
  Embedding e = perfect_representation(A, ctx.opts.surrogate_depth, ctx.opts.cap, ctx.params());
  json rep = base_report(ctx, "perfect-rep");
  rep["inputs"] = {{"algebra", name}, {"desc", alg_desc_str(A)}};
  rep["results"] = embedding_json(e);
  rep["surrogate"] = surrogate_json(ctx.opts.surrogate_depth);
  return emit(ctx, rep, true);
}

int cmd_group_rep(const CommandContext &ctx, const std::string &name,
                  const std::string &unit) {
  const auto &G = need_group(ctx, name);
  GroupElem u = coerce_group_elem(G, parse_elem_arg(unit));
  GroupEmbedding e =
      group_qc_representation(G, u, ctx.opts.surrogate_depth, ctx.opts.cap, ctx.params());
  json rep = base_report(ctx, "group-rep");
  rep["inputs"] = {{"group", name}, {"desc", group_desc_str(G)}, {"unit", group_elem_str(u)}};
  rep["results"] = {{"target", group_desc_str(e.target)},
                    {"target_unit", group_elem_str(e.target_unit)},
                    {"homomorphism", verification_json(e.hom)},
                    {"injectivity", verification_json(e.injectivity)},
                    {"order_embedding", verification_json(e.order)},
                    {"notes", e.notes}};
  rep["surrogate"] = surrogate_json(ctx.opts.surrogate_depth);
  return emit(ctx, rep, true);
}

int cmd_prop_spec(const CommandContext &ctx, const std::string &name) {
  const auto &A = need_algebra(ctx, name);
  PropSpecReport r = verify_prop_spec(A, ctx.opts.cap, ctx.params());
  json rep = base_report(ctx, "prop-spec");
  rep["inputs"] = {{"algebra", name}, {"desc", alg_desc_str(A)}};
  json res;
  res["algebra_is_local"] = r.algebra_is_local;
  res["holds"] = r.holds;
  res["strategy"] = r.strategy;
  res["checked"] = r.checked;
  if (r.strategy == "sampled")
    res["seed"] = r.seed;
  if (r.witness_x) {
    json w;
    w["x"] = mv_elem_str(*r.witness_x);
    w["prime_p"] = r.prime_p;
    w["prime_q"] = r.prime_q;
    w["value_at_p"] = r.value_p.str();
    w["value_at_q"] = r.value_q.str();
    w["separating_stages"] = std::string(r.term_stages.begin(), r.term_stages.end());
    w["orders_infinite_and_radical_memberships_hold"] = r.counterexample_valid;
    res["witness"] = w;
  }
  rep["results"] = res;
  return emit(ctx, rep, r.holds);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"exact MV-algebra and unital ordered group toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  app.add_option("--file", opts.file, "declaration file");
  app.add_flag("--pretty", opts.pretty, "tabular text instead of JSON");
  bool json_flag = false;
  app.add_flag("--json", json_flag, "JSON output (default)");
  app.add_option("--seed", opts.seed, "seed for sampled verification");
  app.add_option("--samples", opts.samples, "sample count for sampled verification");
  app.add_option("--cap", opts.cap, "finite-algebra enumeration cap");
  app.add_option("--surrogate-depth", opts.surrogate_depth,
                 "lex depth of the ultrapower surrogate");

  std::string a1, a2;
  std::vector<std::string> rest;

  auto *classify_cmd = app.add_subcommand("classify", "classification flags");
  classify_cmd->add_option("algebra", a1)->required();
  auto *ideals_cmd = app.add_subcommand("ideals", "ideal list");
  ideals_cmd->add_option("algebra", a1)->required();
  auto *spec_cmd = app.add_subcommand("spec", "prime spectrum");
  spec_cmd->add_option("algebra", a1)->required();
  auto *radical_cmd = app.add_subcommand("radical", "radical ideal");
  radical_cmd->add_option("algebra", a1)->required();
  auto *quotient_cmd = app.add_subcommand("quotient", "quotient algebra");
  quotient_cmd->add_option("algebra", a1)->required();
  quotient_cmd->add_option("ideal", a2)->required();
  auto *ord_cmd = app.add_subcommand("ord", "order of an element");
  ord_cmd->add_option("algebra", a1)->required();
  ord_cmd->add_option("element", a2)->required();
  auto *eval_cmd = app.add_subcommand("eval", "evaluate a term");
  eval_cmd->add_option("term", a1)->required();
  eval_cmd->add_option("algebra", a2)->required();
  eval_cmd->add_option("bindings", rest, "name=element bindings");
  auto *axioms_cmd = app.add_subcommand("axioms", "check the six axioms");
  axioms_cmd->add_option("algebra", a1)->required();
  std::string strategy;
  axioms_cmd->add_option("--strategy", strategy, "exhaustive or sampled");
  auto *embed_cmd = app.add_subcommand("embed-chang", "subdirect embedding");
  embed_cmd->add_option("algebra", a1)->required();
  auto *dfun_cmd = app.add_subcommand("dfunctor", "radical-pair group");
  dfun_cmd->add_option("algebra", a1)->required();
  auto *gfun_cmd = app.add_subcommand("gfunctor", "perfect algebra of a group");
  gfun_cmd->add_option("group", a1)->required();
  auto *round_cmd = app.add_subcommand("roundtrip", "equivalence round-trip");
  round_cmd->add_option("name", a1)->required();
  auto *qc_cmd = app.add_subcommand("qc-member", "quasi-constant membership");
  qc_cmd->add_option("algebra", a1)->required();
  qc_cmd->add_option("function", a2)->required();
  auto *sep_cmd = app.add_subcommand("separate", "separating term for x < y");
  sep_cmd->add_option("x", a1)->required();
  sep_cmd->add_option("y", a2)->required();
  auto *local_cmd = app.add_subcommand("local-rep", "local representation");
  local_cmd->add_option("algebra", a1)->required();
  auto *perfect_cmd = app.add_subcommand("perfect-rep", "perfect representation");
  perfect_cmd->add_option("algebra", a1)->required();
  auto *group_cmd = app.add_subcommand("group-rep", "unital group representation");
  group_cmd->add_option("group", a1)->required();
  group_cmd->add_option("unit", a2)->required();
  auto *prop_cmd = app.add_subcommand("prop-spec", "prime independence");
  prop_cmd->add_option("algebra", a1)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    CommandContext ctx;
    ctx.opts = opts;
    if (!opts.file.empty()) {
      std::ifstream in(opts.file);
      if (!in)
        fail(ErrorKind::UnknownName, "cannot open file '" + opts.file + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      ctx.surface = parse_spec(ss.str());
      ctx.resolved = resolve_spec(ctx.surface, opts.cap);
    }

    if (classify_cmd->parsed())
      return cmd_classify(ctx, a1);
    if (ideals_cmd->parsed())
      return cmd_ideals(ctx, a1);
    if (spec_cmd->parsed())
      return cmd_spec(ctx, a1);
    if (radical_cmd->parsed())
      return cmd_radical(ctx, a1);
    if (quotient_cmd->parsed())
      return cmd_quotient(ctx, a1, a2);
    if (ord_cmd->parsed())
      return cmd_ord(ctx, a1, a2);
    if (eval_cmd->parsed())
      return cmd_eval(ctx, a1, a2, rest);
    if (axioms_cmd->parsed())
      return cmd_axioms(ctx, a1, strategy);
    if (embed_cmd->parsed())
      return cmd_embed_chang(ctx, a1);
    if (dfun_cmd->parsed())
      return cmd_dfunctor(ctx, a1);
    if (gfun_cmd->parsed())
      return cmd_gfunctor(ctx, a1);
    if (round_cmd->parsed())
      return cmd_roundtrip(ctx, a1);
    if (qc_cmd->parsed())
      return cmd_qc_member(ctx, a1, a2);
    if (sep_cmd->parsed())
      return cmd_separate(ctx, a1, a2);
    if (local_cmd->parsed())
      return cmd_local_rep(ctx, a1);
    if (perfect_cmd->parsed())
      return cmd_perfect_rep(ctx, a1);
    if (group_cmd->parsed())
      return cmd_group_rep(ctx, a1, a2);
    if (prop_cmd->parsed())
      return cmd_prop_spec(ctx, a1);
    std::cerr << "no command dispatched\n";
    return 2;
  } catch (const Error &e) {
    if (e.kind() == ErrorKind::VerificationFailed) {
      json rep;
      rep["status"] = "verification-failed";
      rep["error"] = e.what();
      std::cout << rep.dump(2) << "\n";
      return 1;
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
