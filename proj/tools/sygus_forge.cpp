// sygus-forge: command-line driver.
//
// Exit codes: 0 solution, 1 infeasible, 2 unknown, 3 parse error,
// 4 internal inconsistency.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "sygus/sygus.hpp"

namespace {

enum Exit { kSolution = 0, kInfeasible = 1, kUnknown = 2, kParseError = 3, kInternal = 4 };

int report(const sygus::Conjecture& c, const sygus::SynthesisOutcome& o, bool trace, bool stats) {
  if (trace) {
    std::cerr << (o.stats.mode == "cegis" ? sygus::cegis_table(o.cegis_trace) : sygus::si_table(o));
  }
  if (stats) {
    std::cerr << "mode: " << o.stats.mode << "\n"
              << "rounds: " << o.stats.rounds << "\n";
    if (o.stats.mode == "cegis") std::cerr << "peak size: " << o.stats.peak_size << "\n";
    std::cerr << "time: " << o.stats.seconds << " s\n";
  }
  switch (o.verdict) {
    case sygus::SynthesisOutcome::Verdict::Solution:
      std::cout << sygus::define_fun_text(c, o.solution) << "\n";
      return kSolution;
    case sygus::SynthesisOutcome::Verdict::NoSolution: std::cout << "infeasible\n"; return kInfeasible;
    case sygus::SynthesisOutcome::Verdict::Unknown: break;
  }
  if (!o.reason.empty()) std::cerr << "unknown: " << o.reason << "\n";
  std::cout << "unknown\n";
  return kUnknown;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Syntax-guided synthesis for linear integer arithmetic"};
  std::string file;
  std::string mode_name = "auto";
  std::size_t max_size = 8;
  std::optional<std::size_t> rounds;
  bool simplify = true, trace = false, stats = false, prune = true;
  std::optional<std::uint64_t> seed;
  app.add_option("file", file, "problem file")->required();
  app.add_option("--mode", mode_name, "auto, cegis or si")
      ->check(CLI::IsMember({"auto", "cegis", "si"}))
      ->capture_default_str();
  app.add_option("--max-size", max_size, "largest candidate size for cegis")->capture_default_str();
  app.add_option("--rounds", rounds, "round limit (default 500 for cegis, 64 for si)");
  app.add_flag("--simplify,!--no-simplify", simplify, "simplify the solution (default on)");
  app.add_flag("--trace", trace, "print the round table to stderr");
  app.add_flag("--stats", stats, "print statistics to stderr");
  app.add_flag("--prune,!--no-prune", prune, "observational-equivalence pruning in cegis, single-invocation properties only (default on)");
  app.add_option("--seed", seed, "accepted for compatibility; the engine is deterministic");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParseError;
  }
  if (seed) std::cerr << "warning: --seed is ignored, the engine is deterministic\n";

  std::ifstream in(file);
  if (!in) {
    std::cerr << "error: cannot open " << file << "\n";
    return kParseError;
  }
  std::stringstream text;
  text << in.rdbuf();

  sygus::Conjecture conj;
  try {
    conj = sygus::to_conjecture(sygus::parse_problem(text.str()));
  } catch (const sygus::Error& e) {
    std::cerr << file << ":" << e.what() << "\n";
    return kParseError;
  }

  const sygus::Mode mode = mode_name == "cegis" ? sygus::Mode::Cegis
                           : mode_name == "si"  ? sygus::Mode::SI
                                                : sygus::Mode::Auto;
  try {
    sygus::Procedure proc = sygus::select_procedure(conj, mode);
    if (proc == sygus::Procedure::NotApplicable) {
      std::cerr << (conj.single_invocation ? "si mode needs a grammar with an ite over its start nonterminal\n"
                                           : "si mode needs a single-invocation property\n");
      std::cout << "unknown\n";
      return kUnknown;
    }
    sygus::SIConfig si;
    si.simplify = simplify;
    if (rounds) si.max_rounds = *rounds;
    if (proc == sygus::Procedure::SIGrammar) {
      try {
        return report(conj, sygus::solve_si_syntax_guided(conj, si), trace, stats);
      } catch (const sygus::PropertyNotExpressible& e) {
        if (mode == sygus::Mode::SI) {
          std::cerr << e.what() << "\n";
          std::cout << "unknown\n";
          return kUnknown;
        }
        if (stats) std::cerr << "note: " << e.what() << "; using cegis\n";
        proc = sygus::Procedure::Cegis;
      }
    }
    if (proc == sygus::Procedure::SIBuiltin)
      return report(conj, sygus::solve_single_invocation(conj, si), trace, stats);

    if (!conj.grammar) conj.grammar = sygus::default_grammar(conj.params, conj.result_sort);
    sygus::CegisConfig cg;
    cg.max_size = max_size;
    cg.simplify = simplify;
    cg.prune = prune;
    if (rounds) cg.max_rounds = *rounds;
    return report(conj, sygus::synthesize_cegis(conj, cg), trace, stats);
  } catch (const sygus::InternalConsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kInternal;
  } catch (const sygus::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << "unknown\n";
    return kUnknown;
  }
}
