/*! \file problem.hpp
 * \brief Problem files: a small SyGuS-style s-expression format, its
 *        canonical printer, conversion to a Conjecture, mode selection, and
 *        trace tables. The format is described in docs/format.md.
 */
#pragma once

#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "sygus/conjecture.hpp"
#include "sygus/grammar.hpp"
#include "sygus/outcome.hpp"
#include "sygus/sexpr.hpp"
#include "sygus/term_io.hpp"

namespace sygus {

struct ProblemFile {
  std::string logic = "LIA";
  std::string fun_name;
  std::vector<Variable> params;
  Sort result_sort;
  std::optional<GrammarSpec> grammar;
  std::vector<Variable> vars;  // declare-var, in order
  std::vector<Term> constraints;
};

namespace detail {

inline Sort parse_sort(const SExpr& e) {
  if (e.is_symbol("Int")) return Sort::integer();
  if (e.is_symbol("Bool")) return Sort::boolean();
  throw SyntaxError(e.line, e.col, "expected Int or Bool");
}

inline const std::string& expect_symbol(const SExpr& e, const char* what) {
  if (!e.is_atom() || is_numeral(e.atom)) throw SyntaxError(e.line, e.col, std::string("expected ") + what);
  return e.atom;
}

inline std::optional<Integer> parse_integer(const SExpr& e) {
  if (e.is_atom() && is_numeral(e.atom)) return Integer(e.atom);
  if (e.is_list && e.items.size() == 2 && e.items[0].is_symbol("-") && e.items[1].is_atom() &&
      is_numeral(e.items[1].atom))
    return -Integer(e.items[1].atom);
  return std::nullopt;
}

inline Constructor parse_constructor(const SExpr& e, const std::vector<Variable>& params,
                                     const std::set<std::string>& nonterminals) {
  auto param_named = [&](const std::string& s) {
    return std::any_of(params.begin(), params.end(), [&](const Variable& v) { return v.name == s; });
  };
  if (auto n = parse_integer(e)) return {Value(*n).to_string(), {}, Denotation::numeral_(*n), {}};
  if (e.is_atom()) {
    if (e.atom == "true" || e.atom == "false")
      return {e.atom, {}, Denotation::boolean_(e.atom == "true"), {}};
    if (param_named(e.atom)) return {e.atom, {}, Denotation::variable_(e.atom), {}};
    throw UnknownSymbol(e.atom, e.line, e.col);
  }
  if (e.items.empty()) throw SyntaxError(e.line, e.col, "empty constructor");
  const SExpr& head = e.items[0];
  if (head.is_symbol("Constant")) {
    if (e.items.size() != 2) throw SyntaxError(e.line, e.col, "(Constant c) takes one argument");
    const SExpr& a = e.items[1];
    if (auto n = parse_integer(a)) return {Value(*n).to_string(), {}, Denotation::numeral_(*n), {}};
    if (a.is_symbol("true") || a.is_symbol("false")) return {a.atom, {}, Denotation::boolean_(a.atom == "true"), {}};
    throw SyntaxError(a.line, a.col, "expected a numeral or Boolean constant");
  }
  if (head.is_symbol("Variable")) {
    if (e.items.size() != 2) throw SyntaxError(e.line, e.col, "(Variable x) takes one argument");
    const std::string& v = expect_symbol(e.items[1], "a parameter name");
    if (!param_named(v)) throw UnknownSymbol(v, e.items[1].line, e.items[1].col);
    return {v, {}, Denotation::variable_(v), {}};
  }
  const std::string& sym = expect_symbol(head, "an operator");
  auto op = surface_op_from_symbol(sym);
  if (!op) throw UnknownSymbol(sym, head.line, head.col);
  Constructor c{sym, {}, Denotation::operator_(*op), {}};
  for (std::size_t i = 1; i < e.items.size(); ++i) {
    const std::string& a = expect_symbol(e.items[i], "a nonterminal");
    if (!nonterminals.count(a)) throw UnknownSymbol(a, e.items[i].line, e.items[i].col);
    c.arg_names.push_back(a);
  }
  if (c.arg_names.size() != surface_arity(*op))
    throw SortError(e.where(), "'" + sym + "' takes " + std::to_string(surface_arity(*op)) + " arguments");
  return c;
}

/// ((S Int (ctor...)) (C Bool (ctor...))), the first block being the start.
inline GrammarSpec parse_grammar(const SExpr& e, const std::vector<Variable>& params, const Sort& result) {
  if (!e.is_list || e.items.empty()) throw SyntaxError(e.line, e.col, "expected a grammar block");
  std::set<std::string> names;
  for (const SExpr& b : e.items) {
    if (!b.is_list || b.items.size() != 3) throw SyntaxError(b.line, b.col, "expected (Name Sort (constructors...))");
    names.insert(expect_symbol(b.items[0], "a nonterminal name"));
  }
  std::vector<Datatype> dts;
  for (const SExpr& b : e.items) {
    Datatype d{b.items[0].atom, parse_sort(b.items[1]), {}};
    if (!b.items[2].is_list) throw SyntaxError(b.items[2].line, b.items[2].col, "expected a constructor list");
    for (const SExpr& c : b.items[2].items) d.constructors.push_back(parse_constructor(c, params, names));
    dts.push_back(std::move(d));
  }
  if (dts.front().sort != result)
    throw SortError(e.items.front().where(), "start nonterminal must have the result sort " + result.to_string());
  try {
    return GrammarSpec(std::move(dts), e.items.front().items[0].atom, params);
  } catch (const GrammarError& err) {
    throw SortError(e.where(), err.what());
  }
}

}  // namespace detail

/// Parses a problem file. Throws SyntaxError, SortError or UnknownSymbol
/// with source positions.
inline ProblemFile parse_problem(std::string_view text) {
  ProblemFile pf;
  bool have_logic = false, have_fun = false, have_check = false;
  Scope scope;
  for (const SExpr& cmd : read_sexprs(text)) {
    if (!cmd.is_list || cmd.items.empty() || !cmd.items[0].is_atom())
      throw SyntaxError(cmd.line, cmd.col, "expected a command");
    if (have_check) throw SyntaxError(cmd.line, cmd.col, "command after check-synth");
    const std::string& name = cmd.items[0].atom;
    const auto& it = cmd.items;
    if (name == "set-logic") {
      if (it.size() != 2 || !it[1].is_symbol("LIA")) throw SyntaxError(cmd.line, cmd.col, "only (set-logic LIA) is supported");
      if (have_logic) throw SyntaxError(cmd.line, cmd.col, "duplicate set-logic");
      have_logic = true;
    } else if (name == "synth-fun") {
      if (have_fun) throw SyntaxError(cmd.line, cmd.col, "only one synth-fun is supported");
      if (it.size() < 4 || it.size() > 6)
        throw SyntaxError(cmd.line, cmd.col, "expected (synth-fun name ((x Sort)...) Sort [grammar])");
      pf.fun_name = detail::expect_symbol(it[1], "a function name");
      if (!it[2].is_list) throw SyntaxError(it[2].line, it[2].col, "expected a parameter list");
      std::set<std::string> seen;
      for (const SExpr& p : it[2].items) {
        if (!p.is_list || p.items.size() != 2) throw SyntaxError(p.line, p.col, "expected (name Sort)");
        Variable v{detail::expect_symbol(p.items[0], "a parameter name"), detail::parse_sort(p.items[1])};
        if (!seen.insert(v.name).second) throw SyntaxError(p.line, p.col, "duplicate parameter '" + v.name + "'");
        pf.params.push_back(v);
      }
      pf.result_sort = detail::parse_sort(it[3]);
      if (it.size() >= 5) {
        // with six items the fifth predeclares the nonterminals; it must
        // agree with the blocks that follow
        const SExpr& g = it.back();
        if (it.size() == 6) {
          const SExpr& pre = it[4];
          bool ok = pre.is_list && g.is_list && pre.items.size() == g.items.size();
          for (std::size_t i = 0; ok && i < pre.items.size(); ++i)
            ok = pre.items[i].is_list && pre.items[i].items.size() == 2 && g.items[i].is_list &&
                 !g.items[i].items.empty() && pre.items[i].items[0].is_atom() &&
                 pre.items[i].items[0].atom == g.items[i].items[0].atom;
          if (!ok) throw SyntaxError(pre.line, pre.col, "nonterminal declarations do not match the grammar");
        }
        pf.grammar = detail::parse_grammar(g, pf.params, pf.result_sort);
      }
      FunctionSignature sig{{}, pf.result_sort};
      for (const Variable& v : pf.params) sig.args.push_back(v.sort);
      scope.functions[pf.fun_name] = sig;
      have_fun = true;
    } else if (name == "declare-var") {
      if (it.size() != 3) throw SyntaxError(cmd.line, cmd.col, "expected (declare-var name Sort)");
      Variable v{detail::expect_symbol(it[1], "a variable name"), detail::parse_sort(it[2])};
      if (scope.variables.count(v.name) || v.name == pf.fun_name)
        throw SyntaxError(it[1].line, it[1].col, "'" + v.name + "' is already declared");
      scope.variables[v.name] = v.sort;
      pf.vars.push_back(v);
    } else if (name == "constraint") {
      if (!have_fun) throw SyntaxError(cmd.line, cmd.col, "constraint before synth-fun");
      if (it.size() != 2) throw SyntaxError(cmd.line, cmd.col, "expected (constraint term)");
      Term t = parse_term(it[1], scope);
      if (!t.sort().is_bool()) throw SortError(it[1].where(), "constraint has sort " + t.sort().to_string());
      pf.constraints.push_back(t);
    } else if (name == "check-synth") {
      if (it.size() != 1) throw SyntaxError(cmd.line, cmd.col, "check-synth takes no arguments");
      have_check = true;
    } else {
      throw SyntaxError(cmd.items[0].line, cmd.items[0].col, "unsupported command '" + name + "'");
    }
  }
  if (!have_logic) throw SyntaxError(1, 1, "missing (set-logic LIA)");
  if (!have_fun) throw SyntaxError(1, 1, "missing synth-fun");
  if (pf.constraints.empty()) throw SyntaxError(1, 1, "no constraints");
  if (!have_check) throw SyntaxError(1, 1, "missing (check-synth)");
  return pf;
}

inline std::string params_text(const std::vector<Variable>& params) {
  std::string s = "(";
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) s += " ";
    s += "(" + params[i].name + " " + params[i].sort.to_string() + ")";
  }
  return s + ")";
}

/// Canonical text: one command per line, grammar blocks one per line.
inline std::string print_problem(const ProblemFile& pf) {
  std::ostringstream os;
  os << "(set-logic " << pf.logic << ")\n";
  os << "(synth-fun " << pf.fun_name << " " << params_text(pf.params) << " " << pf.result_sort.to_string();
  if (pf.grammar) os << "\n  " << grammar_text(*pf.grammar);
  os << ")\n";
  for (const Variable& v : pf.vars) os << "(declare-var " << v.name << " " << v.sort.to_string() << ")\n";
  for (const Term& t : pf.constraints) os << "(constraint " << t << ")\n";
  os << "(check-synth)\n";
  return os.str();
}

inline Conjecture to_conjecture(const ProblemFile& pf) {
  Conjecture c;
  c.fun_name = pf.fun_name;
  c.params = pf.params;
  c.result_sort = pf.result_sort;
  c.input_vars = pf.vars;
  c.property = mk_and(pf.constraints);
  c.grammar = pf.grammar;
  c.single_invocation = detect_single_invocation(c);
  return c;
}

inline std::string define_fun_text(const Conjecture& c, const Term& body) {
  return "(define-fun " + c.fun_name + " " + params_text(c.params) + " " + c.result_sort.to_string() + " " +
         to_string(body) + ")";
}

enum class Mode { Auto, Cegis, SI };

/// Procedure chosen for a conjecture.
enum class Procedure { Cegis, SIBuiltin, SIGrammar, NotApplicable };

/// auto: instantiation when the property is single-invocation and the
/// grammar is absent or ite-capable, else cegis. Forcing si on a grammar
/// without ite gives NotApplicable.
inline Procedure select_procedure(const Conjecture& c, Mode m) {
  const bool si_ok = c.single_invocation && (!c.grammar || c.grammar->ite_capable());
  switch (m) {
    case Mode::Cegis: return Procedure::Cegis;
    case Mode::SI:
      if (!c.single_invocation || !si_ok) return Procedure::NotApplicable;
      return c.grammar ? Procedure::SIGrammar : Procedure::SIBuiltin;
    case Mode::Auto:
      if (!si_ok) return Procedure::Cegis;
      return c.grammar ? Procedure::SIGrammar : Procedure::SIBuiltin;
  }
  return Procedure::Cegis;
}

// --- trace tables ---------------------------------------------------------

namespace detail {

inline std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  std::ostringstream os;
  for (const auto& r : rows) {
    std::ostringstream line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i + 1 == r.size())
        line << r[i];
      else
        line << std::left << std::setw(static_cast<int>(width[i] + 2)) << r[i];
    }
    std::string text = line.str();
    text.erase(text.find_last_not_of(' ') + 1);
    os << text << "\n";
  }
  return os.str();
}

}  // namespace detail

/// Round | Size | Candidate | Counterexample.
inline std::string cegis_table(const std::vector<CegisRound>& trace) {
  std::vector<std::vector<std::string>> rows{{"Round", "Size", "Candidate", "Counterexample"}};
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const CegisRound& r = trace[i];
    rows.push_back({std::to_string(i + 1), std::to_string(r.size), to_string(r.candidate_term),
                    r.counterexample ? r.counterexample->to_string() : "none"});
  }
  return detail::table(rows);
}

/// Model | Choice of t | Added Clause, closed by a row for the final
/// unsatisfiable check.
inline std::string si_table(const SynthesisOutcome& o) {
  std::vector<std::vector<std::string>> rows{{"Model", "Choice of t", "Added Clause"}};
  for (const SIRound& r : o.si_trace) rows.push_back({r.model.to_string(), to_string(r.choice), to_string(r.added_clause)});
  if (o.solved()) rows.push_back({"none", "", ""});
  return detail::table(rows);
}

}  // namespace sygus
