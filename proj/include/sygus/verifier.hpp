/*! \file verifier.hpp
 * \brief Solution checking: an exact check through the LIA solver, and a
 *        brute-force scan of a grid of inputs.
 */
#pragma once

#include <optional>
#include <string>

#include "sygus/conjecture.hpp"
#include "sygus/lia/solver.hpp"

namespace sygus {

struct Verdict {
  enum class Kind { Valid, Invalid, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<Assignment> counterexample;  // Invalid only
  std::string reason;                        // Unknown only

  bool valid() const { return kind == Kind::Valid; }
  bool invalid() const { return kind == Kind::Invalid; }

  static Verdict make_valid() { return {Kind::Valid, std::nullopt, {}}; }
  static Verdict make_invalid(Assignment cex) { return {Kind::Invalid, std::move(cex), {}}; }
  static Verdict make_unknown(std::string why) { return {Kind::Unknown, std::nullopt, std::move(why)}; }
};

namespace detail {

inline void check_solution_vars(const Term& solution, const Conjecture& c) {
  for (const Variable& v : free_variables(solution)) {
    auto it = std::find(c.params.begin(), c.params.end(), v);
    if (it == c.params.end()) throw PreconditionViolated("solution mentions '" + v.name + "', which is not a parameter");
  }
  if (solution.sort() != c.result_sort) throw SortMismatch("solution has sort " + solution.sort().to_string());
}

}  // namespace detail

/// Valid iff the negated property, with the solution substituted for the
/// function, is unsatisfiable.
inline Verdict verify(const Term& solution, const Conjecture& c, const lia::SolverConfig& cfg = {}) {
  detail::check_solution_vars(solution, c);
  try {
    auto cex = lia::find_counterexample(c, solution, cfg);
    if (!cex) return Verdict::make_valid();
    return Verdict::make_invalid(std::move(*cex));
  } catch (const ResourceLimit& e) {
    return Verdict::make_unknown(e.what());
  }
}

/// Evaluates the property at every point of [-radius, radius]^n (Booleans
/// range over false, true), the first input varying slowest. Invalid at the
/// first failing point.
inline Verdict grid_check(const Term& solution, const Conjecture& c, unsigned radius) {
  detail::check_solution_vars(solution, c);
  const FunctionInterp interp = body_interp(c, solution);
  const std::size_t n = c.input_vars.size();
  std::vector<long long> lo(n), hi(n), cur(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool b = c.input_vars[i].sort.is_bool();
    lo[i] = b ? 0 : -static_cast<long long>(radius);
    hi[i] = b ? 1 : static_cast<long long>(radius);
    cur[i] = lo[i];
  }
  for (;;) {
    Assignment a;
    for (std::size_t i = 0; i < n; ++i)
      a.bind(c.input_vars[i].name, c.input_vars[i].sort.is_bool() ? Value(cur[i] != 0) : Value(Integer(cur[i])));
    if (!evaluate(c.property, a, &interp).as_bool()) return Verdict::make_invalid(std::move(a));
    std::size_t i = n;
    while (i > 0 && cur[i - 1] == hi[i - 1]) {
      cur[i - 1] = lo[i - 1];
      --i;
    }
    if (i == 0) return Verdict::make_valid();
    ++cur[i - 1];
  }
}

}  // namespace sygus
