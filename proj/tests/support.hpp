// Shared helpers for the test suites: random term generators, an independent
// s-expression evaluator, and fixture loading.
#pragma once

#include <array>
#include <fstream>
#include <memory>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sygus/conjecture.hpp"
#include "sygus/outcome.hpp"
#include "sygus/grammar.hpp"
#include "sygus/sexpr.hpp"
#include "sygus/term.hpp"
#include "sygus/term_io.hpp"

namespace sygus::testing {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture(const std::string& name) { return std::string(SYGUS_FIXTURE_DIR) + "/" + name; }

/// Random terms over Int variables `vars`, using every surface spelling.
class TermGen {
 public:
  TermGen(std::uint32_t seed, std::vector<std::string> vars, int lo = -3, int hi = 3)
      : rng_(seed), vars_(std::move(vars)), lo_(lo), hi_(hi) {}

  std::mt19937& rng() { return rng_; }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Term int_term(int depth) {
    if (depth <= 0 || pick(0, 3) == 0) {
      if (pick(0, 1) == 0) return Term::integer(pick(lo_, hi_));
      return Term::var(vars_[pick(0, static_cast<int>(vars_.size()) - 1)], Sort::integer());
    }
    switch (pick(0, 2)) {
      case 0: return make(SurfaceOp::Add, {int_term(depth - 1), int_term(depth - 1)});
      case 1: return make(SurfaceOp::Sub, {int_term(depth - 1), int_term(depth - 1)});
      default: return make(SurfaceOp::Ite, {bool_term(depth - 1), int_term(depth - 1), int_term(depth - 1)});
    }
  }

  Term bool_term(int depth) {
    if (depth <= 0) {
      if (pick(0, 4) == 0) return Term::boolean(pick(0, 1) == 1);
      return compare_term(0);
    }
    switch (pick(0, 6)) {
      case 0: return make(SurfaceOp::And, {bool_term(depth - 1), bool_term(depth - 1)});
      case 1: return make(SurfaceOp::Or, {bool_term(depth - 1), bool_term(depth - 1)});
      case 2: return make(SurfaceOp::Not, {bool_term(depth - 1)});
      case 3: return make(SurfaceOp::Implies, {bool_term(depth - 1), bool_term(depth - 1)});
      case 4: return make(SurfaceOp::Ite, {bool_term(depth - 1), bool_term(depth - 1), bool_term(depth - 1)});
      default: return compare_term(depth - 1);
    }
  }

  Term compare_term(int depth) {
    static const SurfaceOp ops[] = {SurfaceOp::Leq, SurfaceOp::Geq, SurfaceOp::Lt, SurfaceOp::Gt, SurfaceOp::Eq};
    return make(ops[pick(0, 4)], {int_term(depth), int_term(depth)});
  }

  Assignment assignment(int lo, int hi) {
    Assignment a;
    for (const std::string& v : vars_) a.bind(v, Value(pick(lo, hi)));
    return a;
  }

 private:
  std::mt19937 rng_;
  std::vector<std::string> vars_;
  int lo_, hi_;
};

/// Integer multiple c*t built from + and -, since the language has no
/// multiplication.
inline Term scaled(int c, const Term& t) {
  if (c == 0) return Term::integer(0);
  Term acc = t;
  for (int i = 1; i < (c < 0 ? -c : c); ++i) acc = make(SurfaceOp::Add, {acc, t});
  return c < 0 ? make(SurfaceOp::Sub, {Term::integer(0), acc}) : acc;
}

/// Evaluator over the printed s-expression, sharing no code with
/// sygus::evaluate. Values are long long; Booleans are 0/1.
inline long long oracle_eval(const SExpr& e, const std::map<std::string, long long>& env) {
  if (e.is_atom()) {
    if (e.atom == "true") return 1;
    if (e.atom == "false") return 0;
    if (is_numeral(e.atom)) return std::stoll(e.atom);
    return env.at(e.atom);
  }
  const std::string& h = e.items[0].atom;
  auto arg = [&](std::size_t i) { return oracle_eval(e.items[i], env); };
  const std::size_t n = e.items.size() - 1;
  if (h == "-" && n == 1) return -arg(1);
  if (h == "+" || h == "-") {
    long long acc = arg(1);
    for (std::size_t i = 2; i <= n; ++i) acc = h == "+" ? acc + arg(i) : acc - arg(i);
    return acc;
  }
  if (h == "<=") return arg(1) <= arg(2);
  if (h == ">=") return arg(1) >= arg(2);
  if (h == "<") return arg(1) < arg(2);
  if (h == ">") return arg(1) > arg(2);
  if (h == "=") return arg(1) == arg(2);
  if (h == "not") return !arg(1);
  if (h == "=>") return !arg(1) || arg(2);
  if (h == "and") {
    for (std::size_t i = 1; i <= n; ++i)
      if (!arg(i)) return 0;
    return 1;
  }
  if (h == "or") {
    for (std::size_t i = 1; i <= n; ++i)
      if (arg(i)) return 1;
    return 0;
  }
  if (h == "ite") return arg(1) ? arg(2) : arg(3);
  throw std::runtime_error("oracle: unknown operator " + h);
}

inline long long oracle_eval(const Term& t, const std::map<std::string, long long>& env) {
  return oracle_eval(read_sexprs(to_string(t)).front(), env);
}

inline long long as_ll(const Value& v) {
  return v.is_bool() ? (v.as_bool() ? 1 : 0) : static_cast<long long>(v.as_int());
}

inline std::map<std::string, long long> to_env(const Assignment& a) {
  std::map<std::string, long long> env;
  for (const auto& [k, v] : a) env[k] = as_ll(v);
  return env;
}

inline Term X() { return Term::var("x", Sort::integer()); }
inline Term Y() { return Term::var("y", Sort::integer()); }
inline Term V(const std::string& n) { return Term::var(n, Sort::integer()); }
inline Term N(long long v) { return Term::integer(v); }

inline Scope int_scope(std::initializer_list<std::string> names) {
  Scope s;
  for (const auto& n : names) s.variables[n] = Sort::integer();
  return s;
}


inline std::vector<Variable> xy_inputs() { return {{"x", Sort::integer()}, {"y", Sort::integer()}}; }

/// S := 0 | 1 | x | y | S+S | S-S | ite(C,S,S);  C := S<=S | S=S | C and C | C or C | not C
inline GrammarSpec full_grammar() {
  using D = Denotation;
  Datatype s{"S", Sort::integer(), {}};
  Datatype c{"C", Sort::boolean(), {}};
  s.constructors = {{"0", {}, D::numeral_(0), {}},
                    {"1", {}, D::numeral_(1), {}},
                    {"x", {}, D::variable_("x"), {}},
                    {"y", {}, D::variable_("y"), {}},
                    {"+", {"S", "S"}, D::operator_(SurfaceOp::Add), {}},
                    {"-", {"S", "S"}, D::operator_(SurfaceOp::Sub), {}},
                    {"ite", {"C", "S", "S"}, D::operator_(SurfaceOp::Ite), {}}};
  c.constructors = {{"<=", {"S", "S"}, D::operator_(SurfaceOp::Leq), {}},
                    {"=", {"S", "S"}, D::operator_(SurfaceOp::Eq), {}},
                    {"and", {"C", "C"}, D::operator_(SurfaceOp::And), {}},
                    {"or", {"C", "C"}, D::operator_(SurfaceOp::Or), {}},
                    {"not", {"C"}, D::operator_(SurfaceOp::Not), {}}};
  return GrammarSpec({s, c}, "S", xy_inputs());
}

inline GrammarSpec nullary_grammar() {
  using D = Denotation;
  Datatype s{"S", Sort::integer(), {}};
  s.constructors = {{"0", {}, D::numeral_(0), {}},
                    {"1", {}, D::numeral_(1), {}},
                    {"x", {}, D::variable_("x"), {}},
                    {"y", {}, D::variable_("y"), {}}};
  return GrammarSpec({s}, "S", xy_inputs());
}

/// f(x,y) >= x and f(x,y) >= y and (f(x,y) = x or f(x,y) = y)
inline Conjecture max_conjecture(std::optional<GrammarSpec> g = full_grammar()) {
  Conjecture c;
  c.fun_name = "f";
  c.params = xy_inputs();
  c.result_sort = Sort::integer();
  c.input_vars = xy_inputs();
  Term fxy = Term::call("f", Sort::integer(), {X(), Y()});
  c.property = mk_and(make(SurfaceOp::Geq, {fxy, X()}),
                      mk_and(make(SurfaceOp::Geq, {fxy, Y()}),
                             mk_or(make(SurfaceOp::Eq, {fxy, X()}), make(SurfaceOp::Eq, {fxy, Y()}))));
  c.grammar = std::move(g);
  c.single_invocation = detect_single_invocation(c);
  return c;
}

/// Programs of the start datatype of `g` by name path, for tests:
/// leaf(g, "x"), app(g, "+", {..}).
inline ProgramTerm prog(const GrammarSpec& g, const std::string& dt, const std::string& ctor,
                        std::vector<ProgramTerm> kids = {}) {
  const std::size_t d = *g.find(dt);
  const auto& cs = g.datatype(d).constructors;
  for (std::size_t i = 0; i < cs.size(); ++i)
    if (cs[i].name == ctor) return ProgramTerm::make(g, d, i, std::move(kids));
  throw std::runtime_error("no constructor " + ctor);
}

/// A single-invocation conjecture over inputs x (and y when `two`), with a
/// random property built from linear atoms c0*f + c1*x + c2*y <= d or = d,
/// coefficients in [-3,3]. The function coefficient is nonzero in every
/// atom, so f occurs.
inline Conjecture random_si_conjecture(TermGen& gen, bool two) {
  Conjecture c;
  c.fun_name = "f";
  c.params = two ? xy_inputs() : std::vector<Variable>{{"x", Sort::integer()}};
  c.input_vars = c.params;
  c.result_sort = Sort::integer();
  std::vector<Term> args;
  for (const Variable& v : c.params) args.push_back(v.term());
  const Term call = Term::call("f", Sort::integer(), args);
  auto atom = [&]() {
    int c0 = 0;
    while (c0 == 0) c0 = gen.pick(-3, 3);
    Term lhs = scaled(c0, call);
    for (const Variable& v : c.params)
      if (int k = gen.pick(-3, 3)) lhs = make(SurfaceOp::Add, {lhs, scaled(k, v.term())});
    const Term rhs = Term::integer(gen.pick(-3, 3));
    switch (gen.pick(0, 4)) {
      case 0: return make(SurfaceOp::Eq, {lhs, rhs});
      case 1: return make(SurfaceOp::Geq, {lhs, rhs});
      case 2: return make(SurfaceOp::Lt, {lhs, rhs});
      default: return make(SurfaceOp::Leq, {lhs, rhs});
    }
  };
  std::function<Term(int)> formula = [&](int depth) -> Term {
    if (depth == 0 || gen.pick(0, 2) == 0) return atom();
    const Term a = formula(depth - 1), b = formula(depth - 1);
    return gen.pick(0, 1) ? mk_and(a, b) : mk_or(a, b);
  };
  c.property = formula(2);
  c.single_invocation = detect_single_invocation(c);
  return c;
}

/// Evaluates the property with `body` substituted for the function, through
/// the printed text and the independent evaluator.
inline bool oracle_holds(const Conjecture& c, const Term& body, const std::map<std::string, long long>& env) {
  return oracle_eval(apply_solution(c, body), env) != 0;
}

/// The printed property with `body` substituted, for repeated oracle_eval.
inline SExpr oracle_property(const Conjecture& c, const Term& body) {
  return read_sexprs(to_string(apply_solution(c, body))).front();
}

/// Candidate sizes never decrease, every finished layer of a run without
/// pruning examined the whole layer, and a candidate of size s appears only
/// after layers 0..s-1 finished. Returns a description of the first
/// violation, or an empty string.
inline std::string fairness_violation(const GrammarSpec& g, const std::vector<CegisRound>& trace,
                                      const std::vector<LayerRecord>& layers) {
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].size != i) return "layer records out of order";
    const std::size_t expected = enumerate_layer(g, g.start(), i).size();
    if (layers[i].examined != expected)
      return "layer " + std::to_string(i) + " examined " + std::to_string(layers[i].examined) + " of " +
             std::to_string(expected);
  }
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i > 0 && trace[i].size < trace[i - 1].size) return "size decreased at round " + std::to_string(i + 1);
    if (trace[i].size > layers.size())
      return "size " + std::to_string(trace[i].size) + " candidate before layer " + std::to_string(layers.size()) +
             " finished";
  }
  return {};
}

/// Random ground formula AST for differential solver tests, evaluated with
/// machine integers.
struct RF {
  enum Kind { Atom, And, Or, Not } kind = Atom;
  // atom: sum c_i v_i (+ optional ite offset) <= k, or = k
  std::array<int, 3> c{};
  int k = 0;
  bool eq = false;
  std::shared_ptr<RF> ite_cond;  // when set, lhs gets + (cond ? d : -d)
  int d = 0;
  std::vector<std::shared_ptr<RF>> kids;
};

inline bool rf_eval(const RF& f, const std::array<int, 3>& v) {
  switch (f.kind) {
    case RF::And: return rf_eval(*f.kids[0], v) && rf_eval(*f.kids[1], v);
    case RF::Or: return rf_eval(*f.kids[0], v) || rf_eval(*f.kids[1], v);
    case RF::Not: return !rf_eval(*f.kids[0], v);
    case RF::Atom: break;
  }
  long long lhs = 0;
  for (int i = 0; i < 3; ++i) lhs += static_cast<long long>(f.c[i]) * v[i];
  if (f.ite_cond) lhs += rf_eval(*f.ite_cond, v) ? f.d : -f.d;
  return f.eq ? lhs == f.k : lhs <= f.k;
}

inline const char* const kVars[] = {"x", "y", "z"};

inline Term rf_term(const RF& f) {
  switch (f.kind) {
    case RF::And: return mk_and(rf_term(*f.kids[0]), rf_term(*f.kids[1]));
    case RF::Or: return mk_or(rf_term(*f.kids[0]), rf_term(*f.kids[1]));
    case RF::Not: return mk_not(rf_term(*f.kids[0]));
    case RF::Atom: break;
  }
  Term lhs = N(0);
  for (int i = 0; i < 3; ++i)
    if (f.c[i] != 0) lhs = make(SurfaceOp::Add, {lhs, scaled(f.c[i], V(kVars[i]))});
  if (f.ite_cond) lhs = make(SurfaceOp::Add, {lhs, mk_ite(rf_term(*f.ite_cond), N(f.d), N(-f.d))});
  return make(f.eq ? SurfaceOp::Eq : SurfaceOp::Leq, {lhs, N(f.k)});
}

struct RFGen {
  std::mt19937 rng;
  int nvars;
  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  std::shared_ptr<RF> atom(bool allow_ite) {
    auto a = std::make_shared<RF>();
    for (int i = 0; i < nvars; ++i) a->c[i] = pick(-4, 4);
    a->k = pick(-10, 10);
    a->eq = pick(0, 3) == 0;
    if (allow_ite && pick(0, 5) == 0) {
      a->ite_cond = atom(false);
      a->d = pick(1, 4);
    }
    return a;
  }
  std::shared_ptr<RF> formula(int depth) {
    if (depth == 0 || pick(0, 3) == 0) return atom(true);
    auto f = std::make_shared<RF>();
    const int k = pick(0, 4);
    f->kind = k <= 1 ? RF::And : k <= 3 ? RF::Or : RF::Not;
    f->kids.push_back(formula(depth - 1));
    if (f->kind != RF::Not) f->kids.push_back(formula(depth - 1));
    return f;
  }
};

}  // namespace sygus::testing
