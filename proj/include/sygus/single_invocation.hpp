/*! \file single_invocation.hpp
 * \brief Synthesis for single-invocation properties by instantiation.
 *
 * With f(i) replaced by a first-order variable g and the inputs by skolems
 * k, the negated conjecture is: for all g, not Q(g, k). The loop adds
 * instances not Q(t1, k), ..., not Q(tn, k). Once they are jointly
 * unsatisfiable, the chain
 *
 *     ite(Q(t1, k), t1, ite(Q(t2, k), t2, ... tn))
 *
 * is a solution: at every k some Q(ti, k) holds, and the chain returns the
 * first such ti. Each new ti is read off a model of Q(e, k) together with
 * the instances so far.
 */
#pragma once

#include <chrono>
#include <functional>

#include "sygus/conjecture.hpp"
#include "sygus/enumerator.hpp"
#include "sygus/lia/solver.hpp"
#include "sygus/outcome.hpp"
#include "sygus/simplify.hpp"
#include "sygus/verifier.hpp"

namespace sygus {

enum class PoolPolicy { InputVarsThenConstant, ConstantOnly };

struct SIConfig {
  std::size_t max_rounds = 64;
  PoolPolicy pool = PoolPolicy::InputVarsThenConstant;
  bool simplify = true;
  /// Grammar-restricted loop only: when no nullary term has the wanted
  /// value, ite-free programs up to this size are tried as well.
  std::size_t grammar_pool_size = 2;
  lia::SolverConfig solver{};
  std::function<void(const SIRound&)> on_round{};
};

/// Q(g, k): the property with f(i) replaced by `g` and the inputs by the
/// skolems.
struct SIProblem {
  std::vector<Variable> skolems;
  Variable g;
  Term q;

  /// Q(t, k).
  Term instance(const Term& t) const { return substitute(q, {{g.name, t}}); }
};

inline SIProblem make_si_problem(const Conjecture& c) {
  if (!detect_single_invocation(c)) throw PreconditionViolated("property is not single-invocation");
  SIProblem p;
  p.g = {"g", c.result_sort};
  Substitution to_skolem;
  for (std::size_t i = 0; i < c.input_vars.size(); ++i) {
    Variable k{"k" + std::to_string(i + 1), c.input_vars[i].sort};
    p.skolems.push_back(k);
    to_skolem[c.input_vars[i].name] = k.term();
  }
  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    if (u.kind() == Term::Kind::Call) return p.g.term();
    return detail::map_children(u, go);
  };
  p.q = substitute(go(c.property), to_skolem);
  return p;
}

struct IteChain {
  std::vector<std::pair<Term, Term>> branches;  // (Q(ti, k), ti) for i < n
  Term last;                                    // tn

  Term render() const {
    Term acc = last;
    for (auto it = branches.rbegin(); it != branches.rend(); ++it) acc = mk_ite(it->first, it->second, acc);
    return acc;
  }
};

/// Builds L(t1..tn). Requires the negated instances to be jointly
/// unsatisfiable (PreconditionViolated otherwise) and certifies the result
/// with one solver call (InternalConsistency if that fails).
inline IteChain build_ite_chain(const std::vector<Term>& ts, const SIProblem& p, const lia::SolverConfig& cfg = {}) {
  if (ts.empty()) throw PreconditionViolated("empty instantiation list");
  std::vector<Term> negated;
  for (const Term& t : ts) negated.push_back(mk_not(p.instance(t)));
  if (lia::check_sat(mk_and(negated), cfg).sat)
    throw PreconditionViolated("negated instances are jointly satisfiable");
  IteChain chain;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) chain.branches.emplace_back(p.instance(ts[i]), ts[i]);
  chain.last = ts.back();
  auto bad = lia::check_sat(mk_not(p.instance(chain.render())), cfg);
  if (bad.sat) throw InternalConsistency("ite-chain fails at " + bad.model.to_string());
  return chain;
}

namespace detail {

/// Picks the next instantiation term from a model, or nullopt when the pool
/// has nothing with the model value of e.
using PoolFn = std::function<std::optional<Term>(const Assignment& model, const Value& e_value)>;

struct SILoopResult {
  enum class Kind { Refuted, NoSolution, Unknown } kind = Kind::Unknown;
  std::vector<Term> terms;
  std::string reason;
};

inline SILoopResult si_loop(const SIProblem& p, const PoolFn& pool, const SIConfig& cfg,
                            std::vector<SIRound>& trace) {
  SILoopResult res;
  const Variable e{"e", p.g.sort};
  const Term q_e = p.instance(e.term());
  std::vector<Term> negated;
  try {
    for (;;) {
      if (!res.terms.empty() && !lia::check_sat(mk_and(negated), cfg.solver).sat) {
        res.kind = SILoopResult::Kind::Refuted;
        return res;
      }
      if (res.terms.size() >= cfg.max_rounds) {
        res.reason = "round limit " + std::to_string(cfg.max_rounds) + " reached";
        return res;
      }
      std::vector<Term> query = negated;
      query.insert(query.begin(), q_e);
      const lia::SatResult m = lia::check_sat(mk_and(query), cfg.solver);
      if (!m.sat) {
        res.kind = SILoopResult::Kind::NoSolution;
        return res;
      }
      Assignment model;
      for (const Variable& k : p.skolems)
        model.bind(k.name, m.model.find(k.name) ? *m.model.find(k.name) : (k.sort.is_int() ? Value(0) : Value(false)));
      const Value ev = m.model.find(e.name) ? *m.model.find(e.name) : (e.sort.is_int() ? Value(0) : Value(false));
      model.bind(e.name, ev);

      std::optional<Term> t = pool(model, ev);
      if (!t) {
        res.reason = "no pool term takes the value " + ev.to_string();
        return res;
      }
      if (std::find(res.terms.begin(), res.terms.end(), *t) != res.terms.end())
        throw InternalConsistency("instantiation term " + to_string(*t) + " chosen twice");
      res.terms.push_back(*t);
      negated.push_back(mk_not(p.instance(*t)));
      trace.push_back({model, *t, negated.back()});
      if (cfg.on_round) cfg.on_round(trace.back());
    }
  } catch (const ResourceLimit& err) {
    res.kind = SILoopResult::Kind::Unknown;
    res.reason = err.what();
    return res;
  }
}

inline Substitution skolems_to_params(const Conjecture& c, const SIProblem& p) {
  Substitution s;
  for (std::size_t i = 0; i < p.skolems.size(); ++i) s[p.skolems[i].name] = c.params[i].term();
  return s;
}

}  // namespace detail

/// The instantiation loop with the builtin pool: skolems whose model value
/// equals that of e (unless ConstantOnly), then the constant itself.
inline SynthesisOutcome solve_single_invocation(const Conjecture& c, const SIConfig& cfg = {}) {
  const auto start = std::chrono::steady_clock::now();
  const SIProblem p = make_si_problem(c);
  SynthesisOutcome out;
  out.stats.mode = "si";
  const detail::PoolFn pool = [&](const Assignment& m, const Value& ev) -> std::optional<Term> {
    if (cfg.pool == PoolPolicy::InputVarsThenConstant)
      for (const Variable& k : p.skolems)
        if (k.sort == p.g.sort && m.at(k.name) == ev) return k.term();
    return Term::value(ev);
  };
  auto r = detail::si_loop(p, pool, cfg, out.si_trace);
  out.stats.rounds = r.terms.size();
  switch (r.kind) {
    case detail::SILoopResult::Kind::NoSolution: out.verdict = SynthesisOutcome::Verdict::NoSolution; break;
    case detail::SILoopResult::Kind::Unknown:
      out.verdict = SynthesisOutcome::Verdict::Unknown;
      out.reason = r.reason;
      break;
    case detail::SILoopResult::Kind::Refuted: {
      const IteChain chain = build_ite_chain(r.terms, p, cfg.solver);
      Term body = substitute(chain.render(), detail::skolems_to_params(c, p));
      out.solution = cfg.simplify ? simplify(body) : body;
      const Verdict v = verify(out.solution, c, cfg.solver);
      if (v.invalid()) throw InternalConsistency("solution " + to_string(out.solution) + " fails verification");
      out.verdict = v.valid() ? SynthesisOutcome::Verdict::Solution : SynthesisOutcome::Verdict::Unknown;
      out.reason = v.reason;
      break;
    }
  }
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

// --- grammar-restricted variant -----------------------------------------------

namespace detail {

/// Ways to read a builtin term as a surface operator application: a <= b is
/// also b >= a, not (a <= b) is also a > b and b < a, (not a) or b is a => b.
inline std::vector<std::pair<SurfaceOp, std::vector<Term>>> surface_views(const Term& t) {
  std::vector<std::pair<SurfaceOp, std::vector<Term>>> v;
  if (t.kind() != Term::Kind::App) return v;
  const auto& ch = t.children();
  switch (t.op()) {
    case Op::Add: v.push_back({SurfaceOp::Add, ch}); break;
    case Op::Sub: v.push_back({SurfaceOp::Sub, ch}); break;
    case Op::Leq:
      v.push_back({SurfaceOp::Leq, ch});
      v.push_back({SurfaceOp::Geq, {ch[1], ch[0]}});
      break;
    case Op::Eq:
      v.push_back({SurfaceOp::Eq, ch});
      v.push_back({SurfaceOp::Eq, {ch[1], ch[0]}});
      break;
    case Op::And: v.push_back({SurfaceOp::And, ch}); break;
    case Op::Or:
      v.push_back({SurfaceOp::Or, ch});
      if (ch[0].is_app(Op::Not)) v.push_back({SurfaceOp::Implies, {ch[0][0], ch[1]}});
      break;
    case Op::Not:
      v.push_back({SurfaceOp::Not, ch});
      if (ch[0].is_app(Op::Leq)) {
        v.push_back({SurfaceOp::Gt, ch[0].children()});
        v.push_back({SurfaceOp::Lt, {ch[0][1], ch[0][0]}});
      }
      break;
    case Op::Ite: v.push_back({SurfaceOp::Ite, ch}); break;
  }
  return v;
}

/// A program of datatype `dt` denoting `t` (up to the views above), trying
/// constructors in declaration order.
inline std::optional<ProgramTerm> invert(const Term& t, const GrammarSpec& g, std::size_t dt) {
  if (g.datatype(dt).sort != t.sort()) return std::nullopt;
  const auto& ctors = g.datatype(dt).constructors;
  for (std::size_t ci = 0; ci < ctors.size(); ++ci) {
    const Constructor& c = ctors[ci];
    const Denotation& d = c.denotation;
    switch (d.kind) {
      case Denotation::Kind::Variable:
        if (t.is_var() && t.name() == d.variable) return ProgramTerm::make(g, dt, ci, {});
        continue;
      case Denotation::Kind::Numeral:
        if (t.kind() == Term::Kind::IntConst && t.int_value() == d.numeral) return ProgramTerm::make(g, dt, ci, {});
        continue;
      case Denotation::Kind::Boolean:
        if (t.kind() == Term::Kind::BoolConst && t.bool_value() == d.truth) return ProgramTerm::make(g, dt, ci, {});
        continue;
      case Denotation::Kind::Operator: break;
    }
    for (const auto& [op, kids] : surface_views(t)) {
      if (op != d.op || kids.size() != c.args.size()) continue;
      std::vector<ProgramTerm> sub;
      for (std::size_t i = 0; i < kids.size(); ++i) {
        auto p = invert(kids[i], g, c.args[i]);
        if (!p) break;
        sub.push_back(std::move(*p));
      }
      if (sub.size() == kids.size()) return ProgramTerm::make(g, dt, ci, std::move(sub));
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// The instantiation loop where terms come from the grammar: nullary
/// constructors of the start datatype (variables first, then numerals)
/// whose value in the model equals that of e, falling back to small
/// ite-free programs. The solution is also returned as a program whose ite
/// conditions are condition-datatype programs for the property instances.
inline SynthesisOutcome solve_si_syntax_guided(const Conjecture& c, const SIConfig& cfg = {}) {
  const auto start = std::chrono::steady_clock::now();
  if (!c.grammar) throw PreconditionViolated("grammar-guided synthesis needs a grammar");
  const GrammarSpec& g = *c.grammar;
  if (!g.ite_capable())
    throw GrammarNotIteCapable("start datatype '" + g.datatype(g.start()).name + "' has no ite over itself");
  if (g.result_sort() != c.result_sort) throw SortMismatch("grammar start datatype does not match the result sort");
  const SIProblem p = make_si_problem(c);
  const Substitution to_params = detail::skolems_to_params(c, p);
  Substitution to_skolems;
  for (std::size_t i = 0; i < p.skolems.size(); ++i) to_skolems[c.params[i].name] = p.skolems[i].term();

  // Pool: nullary start constructors, variables before numerals and
  // Boolean constants; then ite-free programs of sizes 1, 2, ... when
  // nothing smaller fits.
  struct PoolEntry {
    ProgramTerm program;
    Term over_skolems;
  };
  std::vector<PoolEntry> entries;
  const std::size_t cond = g.ite()->condition;
  // Nullary terms must have a condition program for their guard; larger
  // ones are skipped when they do not.
  auto admit = [&](const ProgramTerm& prog, bool required) {
    PoolEntry e{prog, substitute(denote(prog, g), to_skolems)};
    const Term guard = substitute(p.instance(e.over_skolems), to_params);
    if (!detail::invert(guard, g, cond)) {
      if (!required) return;
      throw PropertyNotExpressible("no '" + g.datatype(cond).name + "' program for " + to_string(guard));
    }
    entries.push_back(std::move(e));
  };
  const auto& ctors = g.datatype(g.start()).constructors;
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t ci = 0; ci < ctors.size(); ++ci) {
      const Denotation& d = ctors[ci].denotation;
      if (d.kind == Denotation::Kind::Operator) continue;
      if ((d.kind == Denotation::Kind::Variable) != (pass == 0)) continue;
      admit(ProgramTerm::make(g, g.start(), ci, {}), true);
    }

  LayerCache layers(g);
  std::function<bool(const ProgramTerm&)> ite_free = [&](const ProgramTerm& q) {
    const Denotation& d = g.constructor(q.datatype(), q.ctor()).denotation;
    if (d.kind == Denotation::Kind::Operator && d.op == SurfaceOp::Ite) return false;
    return std::all_of(q.children().begin(), q.children().end(), ite_free);
  };
  std::size_t grown = 0;  // largest size admitted to the pool so far
  auto grow = [&]() {
    if (grown >= cfg.grammar_pool_size) return false;
    ++grown;
    for (const ProgramTerm& q : layers.layer(g.start(), grown))
      if (ite_free(q)) admit(q, false);
    return true;
  };

  SynthesisOutcome out;
  out.stats.mode = "si-grammar";
  const detail::PoolFn pool = [&](const Assignment& m, const Value& ev) -> std::optional<Term> {
    for (std::size_t i = 0;; ++i) {
      while (i >= entries.size())
        if (!grow()) return std::nullopt;
      if (evaluate(entries[i].over_skolems, m) == ev) return entries[i].over_skolems;
    }
  };
  auto r = detail::si_loop(p, pool, cfg, out.si_trace);
  out.stats.rounds = r.terms.size();
  switch (r.kind) {
    case detail::SILoopResult::Kind::NoSolution: out.verdict = SynthesisOutcome::Verdict::NoSolution; break;
    case detail::SILoopResult::Kind::Unknown:
      out.verdict = SynthesisOutcome::Verdict::Unknown;
      out.reason = r.reason;
      break;
    case detail::SILoopResult::Kind::Refuted: {
      const IteChain chain = build_ite_chain(r.terms, p, cfg.solver);
      auto program_of = [&](const Term& t) {
        for (const PoolEntry& e : entries)
          if (e.over_skolems == t) return e.program;
        throw InternalConsistency("instantiation term outside the pool");
      };
      ProgramTerm acc = program_of(chain.last);
      for (auto it = chain.branches.rbegin(); it != chain.branches.rend(); ++it) {
        auto guard = detail::invert(substitute(it->first, to_params), g, cond);
        if (!guard) throw InternalConsistency("guard lost its condition program");
        acc = ProgramTerm::make(g, g.start(), g.ite()->constructor, {*guard, program_of(it->second), acc});
      }
      out.program = acc;
      Term body = substitute(chain.render(), to_params);
      out.solution = cfg.simplify ? simplify(body) : body;
      const Verdict v = verify(out.solution, c, cfg.solver);
      if (v.invalid()) throw InternalConsistency("solution " + to_string(out.solution) + " fails verification");
      if (verify(denote(acc, g), c, cfg.solver).invalid())
        throw InternalConsistency("program form of the solution fails verification");
      out.verdict = v.valid() ? SynthesisOutcome::Verdict::Solution : SynthesisOutcome::Verdict::Unknown;
      out.reason = v.reason;
      break;
    }
  }
  out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace sygus
