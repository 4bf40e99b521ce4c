/*! \file solver.hpp
 * \brief Ground satisfiability with models for quantifier-free linear
 *        integer arithmetic with Booleans and ite.
 *
 * Integer ite is removed by case splitting: an atom s <= t over terms with
 * ite becomes the disjunction, over the ite cases of s and t, of the case
 * guards conjoined with the case atom. The resulting negation normal form is
 * searched DPLL-style (conjuncts first, then branching on the smallest
 * disjunction), with the Omega test deciding each conjunction of theory
 * literals. Models are minimized by re-solving inside boxes for
 * B = 0, 1, 2, 4, ... up to the magnitude of the first model found, trying
 * 0 <= x <= B before |x| <= B so that small non-negative models win.
 * Box searches over the whole formula run on a small budget of their own;
 * past it only the branch that produced the first model is minimized.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sygus/conjecture.hpp"
#include "sygus/lia/omega.hpp"
#include "sygus/term.hpp"

namespace sygus::lia {

struct SolverConfig {
  std::uint64_t budget = 1'000'000;
  bool minimize_models = true;
};

struct SatResult {
  bool sat = false;
  Assignment model;  // total on the free variables of the formula when sat
};

namespace detail {

struct Formula {
  enum class Kind { True, False, And, Or, Atom, BoolVar };
  Kind kind = Kind::True;
  std::vector<Formula> kids;
  Constraint atom;
  std::string var;
  bool positive = true;

  static Formula constant(bool b) { return {b ? Kind::True : Kind::False, {}, {}, {}, true}; }
};

inline Formula junction(Formula::Kind kind, std::vector<Formula> kids) {
  const bool is_and = kind == Formula::Kind::And;
  std::vector<Formula> kept;
  for (Formula& k : kids) {
    if (k.kind == (is_and ? Formula::Kind::False : Formula::Kind::True)) return Formula::constant(!is_and);
    if (k.kind == (is_and ? Formula::Kind::True : Formula::Kind::False)) continue;
    if (k.kind == kind) {
      for (Formula& g : k.kids) kept.push_back(std::move(g));
      continue;
    }
    kept.push_back(std::move(k));
  }
  if (kept.empty()) return Formula::constant(is_and);
  if (kept.size() == 1) return std::move(kept.front());
  Formula f;
  f.kind = kind;
  f.kids = std::move(kept);
  return f;
}

/// Linear expression coeffs . x + constant.
struct Linear {
  std::vector<Integer> coeffs;
  Integer constant;
};

struct Case {
  std::vector<std::pair<Term, bool>> guards;
  Linear expr;
};

/// Guards of both cases, each once; nullopt when one guard is required
/// with both polarities. A shared ite then contributes its own cases
/// rather than their cross product.
inline std::optional<std::vector<std::pair<Term, bool>>> merge_guards(const std::vector<std::pair<Term, bool>>& a,
                                                                     const std::vector<std::pair<Term, bool>>& b) {
  std::vector<std::pair<Term, bool>> out = a;
  for (const auto& [g, pol] : b) {
    bool present = false;
    for (const auto& [h, hpol] : a) {
      if (h != g) continue;
      if (hpol != pol) return std::nullopt;
      present = true;
    }
    if (!present) out.emplace_back(g, pol);
  }
  return out;
}

class Translator {
 public:
  Translator(const std::vector<std::string>& int_vars, Budget& budget) : budget_(&budget) {
    for (std::size_t i = 0; i < int_vars.size(); ++i) index_[int_vars[i]] = i;
    n_ = int_vars.size();
  }

  Formula translate(const Term& t, bool positive) {
    budget_->charge();
    switch (t.kind()) {
      case Term::Kind::BoolConst: return Formula::constant(t.bool_value() == positive);
      case Term::Kind::Var: {
        Formula f;
        f.kind = Formula::Kind::BoolVar;
        f.var = t.name();
        f.positive = positive;
        return f;
      }
      case Term::Kind::App: break;
      default: throw PreconditionViolated("formula is not ground: " + t.name());
    }
    switch (t.op()) {
      case Op::Not: return translate(t[0], !positive);
      case Op::And:
      case Op::Or: {
        const bool conj = (t.op() == Op::And) == positive;
        return junction(conj ? Formula::Kind::And : Formula::Kind::Or,
                        {translate(t[0], positive), translate(t[1], positive)});
      }
      case Op::Ite: {
        // (c and a) or (not c and b), with the polarity pushed into branches
        return junction(Formula::Kind::Or,
                        {junction(Formula::Kind::And, {translate(t[0], true), translate(t[1], positive)}),
                         junction(Formula::Kind::And, {translate(t[0], false), translate(t[2], positive)})});
      }
      case Op::Leq:
      case Op::Eq: {
        std::vector<Formula> alts;
        const std::vector<Case> rhs = cases(t[1]);
        for (const Case& l : cases(t[0]))
          for (const Case& r : rhs) {
            budget_->charge();
            const auto guards = merge_guards(l.guards, r.guards);
            if (!guards) continue;
            std::vector<Formula> parts;
            for (const auto& [g, pol] : *guards) parts.push_back(translate(g, pol));
            Linear d = l.expr;
            for (std::size_t i = 0; i < n_; ++i) d.coeffs[i] -= r.expr.coeffs[i];
            d.constant -= r.expr.constant;
            parts.push_back(atom(t.op(), d, positive));
            alts.push_back(junction(Formula::Kind::And, std::move(parts)));
          }
        return junction(Formula::Kind::Or, std::move(alts));
      }
      default: throw SortMismatch("integer term in formula position");
    }
  }

 private:
  // d <= 0 or d = 0 (negated when !positive), as constraints.
  Formula atom(Op op, const Linear& d, bool positive) const {
    auto leaf = [&](std::vector<Integer> coeffs, Integer bound, bool eq) {
      bool trivial = std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& a) { return a == 0; });
      if (trivial) return Formula::constant(eq ? bound == 0 : bound >= 0);
      Formula f;
      f.kind = Formula::Kind::Atom;
      f.atom = {std::move(coeffs), std::move(bound), eq};
      return f;
    };
    std::vector<Integer> neg(d.coeffs);
    for (Integer& a : neg) a = -a;
    if (op == Op::Leq) {
      if (positive) return leaf(d.coeffs, -d.constant, false);  // a.x <= -c
      return leaf(neg, d.constant - 1, false);                    // -a.x <= c - 1
    }
    if (positive) return leaf(d.coeffs, -d.constant, true);
    return junction(Formula::Kind::Or, {leaf(d.coeffs, -d.constant - 1, false), leaf(neg, d.constant - 1, false)});
  }

  std::vector<Case> cases(const Term& t) {
    budget_->charge();
    switch (t.kind()) {
      case Term::Kind::IntConst: return {Case{{}, Linear{std::vector<Integer>(n_), t.int_value()}}};
      case Term::Kind::Var: {
        Linear l{std::vector<Integer>(n_), 0};
        l.coeffs.at(index_.at(t.name())) = 1;
        return {Case{{}, std::move(l)}};
      }
      case Term::Kind::App: break;
      default: throw PreconditionViolated("formula is not ground");
    }
    if (t.op() == Op::Ite) {
      std::vector<Case> out;
      for (int branch = 1; branch <= 2; ++branch)
        for (Case c : cases(t[branch])) {
          auto guards = merge_guards({{t[0], branch == 1}}, c.guards);
          if (!guards) continue;
          c.guards = std::move(*guards);
          out.push_back(std::move(c));
        }
      return out;
    }
    if (t.op() != Op::Add && t.op() != Op::Sub) throw SortMismatch("Bool term in integer position");
    const Integer sign = t.op() == Op::Add ? 1 : -1;
    std::vector<Case> out;
    const std::vector<Case> rhs = cases(t[1]);
    for (const Case& a : cases(t[0]))
      for (const Case& b : rhs) {
        budget_->charge();
        auto guards = merge_guards(a.guards, b.guards);
        if (!guards) continue;
        Case c{std::move(*guards), a.expr};
        for (std::size_t i = 0; i < n_; ++i) c.expr.coeffs[i] += sign * b.expr.coeffs[i];
        c.expr.constant += sign * b.expr.constant;
        out.push_back(std::move(c));
      }
    return out;
  }

  std::map<std::string, std::size_t> index_;
  std::size_t n_ = 0;
  Budget* budget_;
};

struct Found {
  Model ints;
  std::map<std::string, bool> bools;
  std::vector<Constraint> theory;  // the branch's conjunction
};

class Search {
 public:
  Search(std::size_t nvars, Budget& budget) : n_(nvars), budget_(&budget) {}

  std::optional<Found> run(const Formula& root, std::vector<Constraint> initial) {
    State st;
    st.todo.push_back(&root);
    st.theory = std::move(initial);
    return dfs(std::move(st));
  }

 private:
  struct State {
    std::vector<const Formula*> todo;
    std::vector<const Formula*> ors;
    std::vector<Constraint> theory;
    std::map<std::string, bool> bools;
    std::size_t checked = 0;
  };

  std::optional<Found> dfs(State st) {
    budget_->charge();
    while (!st.todo.empty()) {
      const Formula* f = st.todo.back();
      st.todo.pop_back();
      switch (f->kind) {
        case Formula::Kind::True: break;
        case Formula::Kind::False: return std::nullopt;
        case Formula::Kind::And:
          for (auto it = f->kids.rbegin(); it != f->kids.rend(); ++it) st.todo.push_back(&*it);
          break;
        case Formula::Kind::Or: st.ors.push_back(f); break;
        case Formula::Kind::Atom: st.theory.push_back(f->atom); break;
        case Formula::Kind::BoolVar: {
          auto [it, fresh] = st.bools.emplace(f->var, f->positive);
          if (!fresh && it->second != f->positive) return std::nullopt;
          break;
        }
      }
    }
    if (st.ors.empty()) {
      auto m = solve_conjunction(st.theory, n_, *budget_);
      if (!m) return std::nullopt;
      return Found{std::move(*m), std::move(st.bools), std::move(st.theory)};
    }
    if (st.theory.size() > st.checked) {
      if (!solve_conjunction(st.theory, n_, *budget_)) return std::nullopt;
      st.checked = st.theory.size();
    }
    std::size_t pick = 0;
    for (std::size_t i = 1; i < st.ors.size(); ++i)
      if (st.ors[i]->kids.size() < st.ors[pick]->kids.size()) pick = i;
    const Formula* branch = st.ors[pick];
    st.ors.erase(st.ors.begin() + static_cast<std::ptrdiff_t>(pick));
    for (const Formula& alt : branch->kids) {
      State next = st;
      next.todo.push_back(&alt);
      if (auto r = dfs(std::move(next))) return r;
    }
    return std::nullopt;
  }

  std::size_t n_;
  Budget* budget_;
};

}  // namespace detail

/// Decides a ground Bool term. Sat results carry a model that is total on
/// the formula's free variables and re-checked by evaluation. Throws
/// ResourceLimit when the step budget runs out and PreconditionViolated when
/// the formula still mentions an uninterpreted function.
inline SatResult check_sat(const Term& f, const SolverConfig& cfg = {}) {
  if (!f.sort().is_bool()) throw SortMismatch("check_sat expects a Bool formula");
  if (contains_call(f)) throw PreconditionViolated("formula mentions an uninterpreted function");
  const std::vector<Variable> vars = free_variables(f);
  std::vector<std::string> ints;
  for (const Variable& v : vars) {
    if (v.sort.is_int())
      ints.push_back(v.name);
    else if (!v.sort.is_bool())
      throw PreconditionViolated("variable '" + v.name + "' is not Int or Bool");
  }

  Budget budget(cfg.budget);
  detail::Translator tr(ints, budget);
  const detail::Formula root = tr.translate(f, true);
  detail::Search search(ints.size(), budget);

  // Box 0 <= x <= B when `nonnegative`, else -B <= x <= B.
  auto box_constraints = [&](const Integer& box, bool nonnegative) {
    std::vector<Constraint> init;
    for (std::size_t i = 0; i < ints.size(); ++i) {
      std::vector<Integer> up(ints.size()), down(ints.size());
      up[i] = 1;
      down[i] = -1;
      init.push_back({std::move(up), box, false});
      init.push_back({std::move(down), nonnegative ? Integer(0) : box, false});
    }
    return init;
  };

  auto found = search.run(root, {});
  if (!found) return {};
  if (cfg.minimize_models) {
    Integer magnitude = 0;
    for (const Integer& v : found->ints) magnitude = std::max(magnitude, abs_value(v));
    // Boxes over the whole formula first, on a small budget of their own.
    // Running out falls back to boxes over the branch that gave the model,
    // which are single Omega calls.
    Budget spare(std::min<std::uint64_t>(cfg.budget, 20'000));
    detail::Search small(ints.size(), spare);
    bool whole = true;
    for (Integer box = 0; box <= magnitude; box = box == 0 ? Integer(1) : box * 2) {
      std::optional<detail::Found> smaller;
      for (bool nonnegative : {true, false}) {
        if (smaller) break;
        if (whole) {
          try {
            smaller = small.run(root, box_constraints(box, nonnegative));
            continue;
          } catch (const ResourceLimit&) {
            whole = false;
          }
        }
        std::vector<Constraint> branch = found->theory;
        for (Constraint& c : box_constraints(box, nonnegative)) branch.push_back(std::move(c));
        if (auto m = solve_conjunction(branch, ints.size(), budget))
          smaller = detail::Found{std::move(*m), found->bools, found->theory};
      }
      if (smaller) {
        found = std::move(smaller);
        break;
      }
    }
  }

  SatResult out;
  out.sat = true;
  for (std::size_t i = 0; i < ints.size(); ++i) out.model.bind(ints[i], Value(found->ints[i]));
  for (const Variable& v : vars) {
    if (!v.sort.is_bool()) continue;
    auto it = found->bools.find(v.name);
    out.model.bind(v.name, Value(it != found->bools.end() && it->second));
  }
  if (!evaluate(f, out.model).as_bool())
    throw InternalConsistency("model " + out.model.to_string() + " does not satisfy the formula");
  return out;
}

/// A point of the input variables at which the candidate body violates the
/// property, or nullopt when the candidate is a solution.
inline std::optional<Assignment> find_counterexample(const Conjecture& c, const Term& body,
                                                     const SolverConfig& cfg = {}) {
  const Term violated = mk_not(apply_solution(c, body));
  SatResult r = check_sat(violated, cfg);
  if (!r.sat) return std::nullopt;
  Assignment point;
  for (const Variable& v : c.input_vars) {
    if (const Value* val = r.model.find(v.name))
      point.bind(v.name, *val);
    else
      point.bind(v.name, v.sort.is_int() ? Value(0) : Value(false));
  }
  return point;
}

inline std::optional<Assignment> find_counterexample(const Conjecture& c, const ProgramTerm& candidate,
                                                     const GrammarSpec& g, const SolverConfig& cfg = {}) {
  return find_counterexample(c, denote(candidate, g), cfg);
}

}  // namespace sygus::lia
