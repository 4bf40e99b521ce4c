/*! \file omega.hpp
 * \brief Exact integer feasibility of conjunctions of linear constraints
 *        (the Omega test), with model construction.
 *
 * Equalities are eliminated by substitution once some coefficient is a
 * unit; otherwise a unimodular change of variables runs Euclid on the
 * coefficients until one is. Inequalities are eliminated one variable at a
 * time: unbounded variables are dropped, exact projections are used when a
 * side has unit coefficients, and otherwise the real shadow, dark shadow and
 * splinters decide the problem. Back-substitution picks, for each
 * eliminated variable, the feasible value closest to zero.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sygus/error.hpp"
#include "sygus/term.hpp"

namespace sygus::lia {

/// coeffs . x <= bound, or coeffs . x = bound when `equality`.
struct Constraint {
  std::vector<Integer> coeffs;
  Integer bound;
  bool equality = false;
};

using Model = std::vector<Integer>;

/// Step counter shared by every stage of one solver call.
class Budget {
 public:
  explicit Budget(std::uint64_t limit) : limit_(limit) {}
  void charge(std::uint64_t steps = 1) {
    used_ += steps;
    if (used_ > limit_) throw ResourceLimit(limit_);
  }
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

inline Integer ceil_div(const Integer& a, const Integer& b) { return -floor_div(-a, b); }

inline Integer abs_value(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer closest_to_zero(const std::optional<Integer>& lo, const std::optional<Integer>& hi) {
  if (lo && *lo > 0) return *lo;
  if (hi && *hi < 0) return *hi;
  return 0;
}

class Omega {
 public:
  Omega(std::size_t nvars, Budget& budget) : n_(nvars), budget_(&budget) {}

  std::optional<Model> solve(std::vector<Constraint> cs) {
    budget_->charge();
    if (!normalize(cs)) return std::nullopt;
    for (std::size_t i = 0; i < cs.size(); ++i)
      if (cs[i].equality) return solve_equality(std::move(cs), i);
    if (cs.empty()) return Model(n_, 0);
    return solve_inequalities(std::move(cs));
  }

 private:
  // Divides by coefficient gcds, tightens bounds, drops trivial rows, merges
  // parallel rows. Returns false on a detected contradiction.
  bool normalize(std::vector<Constraint>& cs) const {
    std::map<std::vector<Integer>, Integer> ineqs;
    std::map<std::vector<Integer>, Integer> eqs;
    for (Constraint& c : cs) {
      Integer g = 0;
      for (const Integer& a : c.coeffs) g = gcd(g, abs_value(a));
      if (g == 0) {
        if (c.equality ? c.bound != 0 : c.bound < 0) return false;
        continue;
      }
      if (c.equality) {
        if (c.bound % g != 0) return false;
        for (Integer& a : c.coeffs) a /= g;
        c.bound /= g;
        auto first = std::find_if(c.coeffs.begin(), c.coeffs.end(), [](const Integer& a) { return a != 0; });
        if (*first < 0) {
          for (Integer& a : c.coeffs) a = -a;
          c.bound = -c.bound;
        }
        auto [it, fresh] = eqs.emplace(c.coeffs, c.bound);
        if (!fresh && it->second != c.bound) return false;
      } else {
        for (Integer& a : c.coeffs) a /= g;
        c.bound = floor_div(c.bound, g);
        auto [it, fresh] = ineqs.emplace(c.coeffs, c.bound);
        if (!fresh && c.bound < it->second) it->second = c.bound;
      }
    }
    std::vector<Constraint> out;
    for (const auto& [coeffs, bound] : eqs) out.push_back({coeffs, bound, true});
    for (const auto& [coeffs, bound] : ineqs) {
      std::vector<Integer> neg = coeffs;
      for (Integer& a : neg) a = -a;
      if (auto it = ineqs.find(neg); it != ineqs.end()) {
        // coeffs.x <= bound and coeffs.x >= -other
        if (bound + it->second < 0) return false;
        if (bound + it->second == 0) {
          if (coeffs < neg) continue;  // emitted once, from the smaller key
          Constraint e{coeffs, bound, true};
          if (*std::find_if(e.coeffs.begin(), e.coeffs.end(), [](const Integer& a) { return a != 0; }) < 0) {
            e.coeffs = neg;
            e.bound = it->second;
          }
          auto [eit, fresh] = eqs.emplace(e.coeffs, e.bound);
          if (!fresh && eit->second != e.bound) return false;
          if (fresh) out.push_back(std::move(e));
          continue;
        }
      }
      out.push_back({coeffs, bound, false});
    }
    cs = std::move(out);
    return true;
  }

  std::optional<Model> solve_equality(std::vector<Constraint> cs, std::size_t idx) {
    struct Change {
      std::size_t j, i;
      Integer q;
    };
    std::vector<Change> changes;
    auto smallest = [&] {
      const auto& e = cs[idx].coeffs;
      std::size_t j = n_;
      for (std::size_t i = 0; i < n_; ++i)
        if (e[i] != 0 && (j == n_ || abs_value(e[i]) < abs_value(e[j]))) j = i;
      return j;
    };
    // Until the equality has a unit coefficient, substitute x_j = x_j' - q x_i
    // to reduce e_i modulo e_j. The change is unimodular, so integer
    // solutions correspond one-to-one; gcd(e) = 1 guarantees termination.
    std::size_t j = smallest();
    while (abs_value(cs[idx].coeffs[j]) != 1) {
      const auto& e = cs[idx].coeffs;
      std::size_t i = 0;
      while (i == j || e[i] == 0) ++i;
      const Integer q = floor_div(2 * e[i] + e[j], 2 * e[j]);  // round(e_i / e_j)
      for (Constraint& c : cs) {
        budget_->charge();
        c.coeffs[i] -= q * c.coeffs[j];
      }
      changes.push_back({j, i, q});
      j = smallest();
    }

    const Constraint e = cs[idx];
    const Integer s = e.coeffs[j];
    std::vector<Constraint> rest;
    rest.reserve(cs.size());
    for (std::size_t k = 0; k < cs.size(); ++k) {
      if (k == idx) continue;
      Constraint c = std::move(cs[k]);
      if (c.coeffs[j] != 0) {
        budget_->charge();
        const Integer f = c.coeffs[j] * s;
        for (std::size_t i = 0; i < n_; ++i) c.coeffs[i] -= f * e.coeffs[i];
        c.bound -= f * e.bound;
      }
      rest.push_back(std::move(c));
    }
    auto m = solve(std::move(rest));
    if (!m) return std::nullopt;
    Integer acc = e.bound;
    for (std::size_t i = 0; i < n_; ++i)
      if (i != j) acc -= e.coeffs[i] * (*m)[i];
    (*m)[j] = s * acc;
    for (auto it = changes.rbegin(); it != changes.rend(); ++it) (*m)[it->j] -= it->q * (*m)[it->i];
    return m;
  }

  std::optional<Model> solve_inequalities(std::vector<Constraint> cs) {
    std::vector<std::size_t> lower(n_, 0), upper(n_, 0);
    for (const Constraint& c : cs)
      for (std::size_t i = 0; i < n_; ++i) {
        if (c.coeffs[i] < 0) ++lower[i];
        if (c.coeffs[i] > 0) ++upper[i];
      }

    // A variable bounded on one side only can always be satisfied.
    for (std::size_t j = 0; j < n_; ++j) {
      if (lower[j] + upper[j] == 0 || (lower[j] != 0 && upper[j] != 0)) continue;
      std::vector<Constraint> rest, removed;
      for (Constraint& c : cs) (c.coeffs[j] == 0 ? rest : removed).push_back(std::move(c));
      auto m = solve(std::move(rest));
      if (!m) return std::nullopt;
      (*m)[j] = 0;
      (*m)[j] = pick_value(removed, j, *m);
      return m;
    }

    // Pick the elimination variable: exact projections first, then fewest
    // combinations.
    std::size_t best = n_;
    bool best_exact = false;
    std::size_t best_cost = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      if (lower[j] == 0) continue;
      bool lower_unit = true, upper_unit = true;
      for (const Constraint& c : cs) {
        if (c.coeffs[j] < 0 && c.coeffs[j] != -1) lower_unit = false;
        if (c.coeffs[j] > 0 && c.coeffs[j] != 1) upper_unit = false;
      }
      const bool exact = lower_unit || upper_unit;
      const std::size_t cost = lower[j] * upper[j];
      if (best == n_ || (exact && !best_exact) || (exact == best_exact && cost < best_cost)) {
        best = j;
        best_exact = exact;
        best_cost = cost;
      }
    }
    const std::size_t j = best;

    std::vector<Constraint> rest, lows, ups;
    for (const Constraint& c : cs) {
      if (c.coeffs[j] == 0)
        rest.push_back(c);
      else
        (c.coeffs[j] < 0 ? lows : ups).push_back(c);
    }
    auto combine = [&](bool dark) {
      std::vector<Constraint> out = rest;
      for (const Constraint& lo : lows)
        for (const Constraint& up : ups) {
          budget_->charge();
          const Integer l = -lo.coeffs[j];
          const Integer u = up.coeffs[j];
          Constraint c;
          c.coeffs.resize(n_);
          for (std::size_t i = 0; i < n_; ++i) c.coeffs[i] = u * lo.coeffs[i] + l * up.coeffs[i];
          c.bound = u * lo.bound + l * up.bound;
          if (dark) c.bound -= (l - 1) * (u - 1);
          out.push_back(std::move(c));
        }
      return out;
    };

    if (best_exact) {
      auto m = solve(combine(false));
      if (!m) return std::nullopt;
      (*m)[j] = pick_value(cs, j, *m);
      return m;
    }
    if (!solve(combine(false))) return std::nullopt;  // real shadow has no integer point
    if (auto m = solve(combine(true))) {
      (*m)[j] = pick_value(cs, j, *m);
      return m;
    }
    // Splinters: an integer solution outside the dark shadow lies close to
    // some lower bound.
    Integer umax = 0;
    for (const Constraint& up : ups) umax = std::max(umax, up.coeffs[j]);
    for (const Constraint& lo : lows) {
      const Integer l = -lo.coeffs[j];
      const Integer last = floor_div(umax * l - umax - l, umax);
      for (Integer i = 0; i <= last; ++i) {
        std::vector<Constraint> with = cs;
        with.push_back({lo.coeffs, lo.bound - i, true});
        if (auto m = solve(std::move(with))) return m;
      }
    }
    return std::nullopt;
  }

  // Feasible value of x_j closest to zero given values for the others.
  Integer pick_value(const std::vector<Constraint>& cs, std::size_t j, const Model& m) const {
    std::optional<Integer> lo, hi;
    for (const Constraint& c : cs) {
      if (c.coeffs[j] == 0) continue;
      Integer r = c.bound;
      for (std::size_t i = 0; i < n_; ++i)
        if (i != j) r -= c.coeffs[i] * m[i];
      if (c.coeffs[j] > 0) {
        Integer h = floor_div(r, c.coeffs[j]);
        if (!hi || h < *hi) hi = h;
      } else {
        Integer l = ceil_div(r, c.coeffs[j]);
        if (!lo || l > *lo) lo = l;
      }
    }
    if (lo && hi && *lo > *hi) throw InternalConsistency("empty interval during back-substitution");
    return closest_to_zero(lo, hi);
  }

  std::size_t n_;
  Budget* budget_;
};

/// Convenience wrapper: integer model of a conjunction, or nullopt.
inline std::optional<Model> solve_conjunction(std::vector<Constraint> cs, std::size_t nvars, Budget& budget) {
  return Omega(nvars, budget).solve(std::move(cs));
}

}  // namespace sygus::lia
