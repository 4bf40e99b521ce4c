/*! \file cegis.hpp
 * \brief Counterexample-guided synthesis over a grammar.
 *
 * Each round asks the enumerator for the smallest program that satisfies the
 * property at every stored point, then asks the solver for a point where it
 * fails. No point means a solution; an exhausted finite grammar means there
 * is none.
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

struct CegisConfig {
  std::size_t max_size = 8;
  std::size_t max_rounds = 500;
  bool simplify = true;
  /// Observational-equivalence pruning. Used only for single-invocation
  /// properties: there the function is applied to the stored inputs
  /// themselves, so programs that agree on them are interchangeable.
  bool prune = false;
  lia::SolverConfig solver{};
  std::function<void(const CegisRound&)> on_round{};
};

/// Binds the parameters to the input values of `point`, for properties that
/// call the function on exactly the inputs.
inline Assignment inputs_as_params(const Conjecture& c, const Assignment& point) {
  Assignment a;
  for (std::size_t i = 0; i < c.params.size(); ++i) a.bind(c.params[i].name, point.at(c.input_vars[i].name));
  return a;
}

inline SynthesisOutcome synthesize_cegis(const Conjecture& c, const CegisConfig& cfg = {}) {
  if (!c.grammar) throw PreconditionViolated("grammar-guided synthesis needs a grammar");
  const GrammarSpec& g = *c.grammar;
  if (g.result_sort() != c.result_sort) throw SortMismatch("grammar start datatype does not match the result sort");

  const auto start = std::chrono::steady_clock::now();
  SynthesisOutcome out;
  out.stats.mode = "cegis";
  auto finish = [&](SynthesisOutcome::Verdict v, std::string reason, const Enumerator& e) {
    out.verdict = v;
    out.reason = std::move(reason);
    out.stats.layers = e.finished_layers();
    out.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
  };

  Enumerator enumerator(g, {.max_size = cfg.max_size, .prune_equivalent = cfg.prune && c.single_invocation});
  CounterexampleStore store;
  const PropertyCheck holds = [&](const ProgramTerm& p, const Assignment& point) {
    const FunctionInterp interp = program_interp(c, g, p);
    return evaluate(c.property, point, &interp).as_bool();
  };
  SignatureFn signature;
  if (c.single_invocation) {
    signature = [&](const ProgramTerm& p, const std::vector<Assignment>& points) {
      std::vector<Value> outputs;
      outputs.reserve(points.size());
      for (const Assignment& pt : points) outputs.push_back(eval_program(p, g, inputs_as_params(c, pt)));
      return outputs;
    };
  }

  while (out.stats.rounds < cfg.max_rounds) {
    CandidateResult r = enumerator.next_candidate(store, holds, signature);
    if (r.status == CandidateStatus::Exhausted)
      return finish(SynthesisOutcome::Verdict::NoSolution, {}, enumerator);
    if (r.status == CandidateStatus::CapReached)
      return finish(SynthesisOutcome::Verdict::Unknown,
                    "no solution up to size " + std::to_string(cfg.max_size), enumerator);

    CegisRound round{*r.program, denote(*r.program, g), r.program->size(), std::nullopt};
    ++out.stats.rounds;
    out.stats.peak_size = std::max(out.stats.peak_size, round.size);
    try {
      round.counterexample = lia::find_counterexample(c, round.candidate_term, cfg.solver);
    } catch (const ResourceLimit& e) {
      out.cegis_trace.push_back(round);
      if (cfg.on_round) cfg.on_round(round);
      return finish(SynthesisOutcome::Verdict::Unknown, e.what(), enumerator);
    }
    out.cegis_trace.push_back(round);
    if (cfg.on_round) cfg.on_round(round);

    if (!round.counterexample) {
      out.program = round.candidate;
      out.solution = cfg.simplify ? simplify(round.candidate_term) : round.candidate_term;
      const Verdict v = verify(out.solution, c, cfg.solver);
      if (v.invalid()) throw InternalConsistency("solution " + to_string(out.solution) + " fails verification");
      if (!v.valid()) return finish(SynthesisOutcome::Verdict::Unknown, v.reason, enumerator);
      return finish(SynthesisOutcome::Verdict::Solution, {}, enumerator);
    }
    store.add(*round.counterexample, !holds(round.candidate, *round.counterexample));
  }
  return finish(SynthesisOutcome::Verdict::Unknown, "round limit " + std::to_string(cfg.max_rounds) + " reached",
                enumerator);
}

}  // namespace sygus
