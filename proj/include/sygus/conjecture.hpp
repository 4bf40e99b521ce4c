#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sygus/grammar.hpp"
#include "sygus/term.hpp"

namespace sygus {

/// A synthesis problem: find `fun_name` such that `property` holds for all
/// values of `input_vars`.
struct Conjecture {
  std::string fun_name;
  std::vector<Variable> params;  // formal parameters of the function
  Sort result_sort;
  std::vector<Variable> input_vars;  // universally quantified inputs
  Term property;
  std::optional<GrammarSpec> grammar;
  bool single_invocation = false;
};

/// True iff every application of the function is to exactly the input
/// variables, in declaration order.
inline bool detect_single_invocation(const Conjecture& c) {
  std::function<bool(const Term&)> ok = [&](const Term& t) -> bool {
    if (t.kind() == Term::Kind::Call && t.name() == c.fun_name) {
      if (t.children().size() != c.input_vars.size()) return false;
      for (std::size_t i = 0; i < t.children().size(); ++i) {
        const Term& a = t.children()[i];
        if (!a.is_var() || a.name() != c.input_vars[i].name || a.sort() != c.input_vars[i].sort) return false;
      }
      return true;
    }
    return std::all_of(t.children().begin(), t.children().end(), ok);
  };
  return ok(c.property);
}

/// P[f := lambda params. body].
inline Term apply_solution(const Conjecture& c, const Term& body) {
  return instantiate_function(c.property, c.fun_name, c.params, body);
}

/// Interprets the function by evaluating `body` with the parameters bound.
inline FunctionInterp body_interp(const Conjecture& c, const Term& body) {
  return [&c, body](const std::string& fun, std::span<const Value> args) -> Value {
    if (fun != c.fun_name) throw PreconditionViolated("unexpected function '" + fun + "'");
    Assignment a;
    for (std::size_t i = 0; i < c.params.size(); ++i) a.bind(c.params[i].name, args[i]);
    return evaluate(body, a);
  };
}

/// Interprets the function by running a grammar program.
inline FunctionInterp program_interp(const Conjecture& c, const GrammarSpec& g, const ProgramTerm& p) {
  return [&c, &g, p](const std::string& fun, std::span<const Value> args) -> Value {
    if (fun != c.fun_name) throw PreconditionViolated("unexpected function '" + fun + "'");
    Assignment a;
    for (std::size_t i = 0; i < c.params.size(); ++i) a.bind(c.params[i].name, args[i]);
    return eval_program(p, g, a);
  };
}

}  // namespace sygus
