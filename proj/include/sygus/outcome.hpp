/*! \file outcome.hpp
 * \brief Results and traces shared by the synthesis procedures.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sygus/enumerator.hpp"
#include "sygus/grammar.hpp"
#include "sygus/term.hpp"

namespace sygus {

/// One round of the refinement loop: a candidate and the point refuting it
/// (none on the final, successful round).
struct CegisRound {
  ProgramTerm candidate;
  Term candidate_term;  // denotation
  std::size_t size = 0;
  std::optional<Assignment> counterexample;
};

/// One round of an instantiation loop.
struct SIRound {
  Assignment model;   // values of the skolems and of the value variable e
  Term choice;        // instantiation term t, over the skolems
  Term added_clause;  // not Q(t, k)
};

struct SynthesisStats {
  std::string mode;           // "cegis", "si" or "si-grammar"
  std::size_t rounds = 0;     // candidates tried, or instantiation terms added
  std::size_t peak_size = 0;  // largest candidate size (cegis)
  double seconds = 0;
  std::vector<LayerRecord> layers;  // finished enumeration layers (cegis)
};

struct SynthesisOutcome {
  enum class Verdict { Solution, NoSolution, Unknown };
  Verdict verdict = Verdict::Unknown;
  Term solution;                     // body over the function parameters
  std::optional<ProgramTerm> program;  // grammar witness, when there is one
  std::string reason;                // why Unknown
  std::vector<CegisRound> cegis_trace;
  std::vector<SIRound> si_trace;
  SynthesisStats stats;

  bool solved() const { return verdict == Verdict::Solution; }
};

inline const char* to_string(SynthesisOutcome::Verdict v) {
  switch (v) {
    case SynthesisOutcome::Verdict::Solution: return "solution";
    case SynthesisOutcome::Verdict::NoSolution: return "infeasible";
    case SynthesisOutcome::Verdict::Unknown: return "unknown";
  }
  return "?";
}

}  // namespace sygus
