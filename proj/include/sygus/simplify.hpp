/*! \file simplify.hpp
 * \brief Bottom-up rewriting to a canonical normal form.
 *
 * Rules: constant folding; t+0, 0+t, t-0 -> t; t-t -> 0; t<=t, t=t -> true;
 * double negation; neutral/absorbing Boolean constants; ite with a constant
 * condition or equal branches. Conjunctions and disjunctions are flattened,
 * deduplicated and sorted by the total term order, then rebuilt right-nested.
 * Every rule is an equivalence, and each node is rewritten to a fixpoint, so
 * simplify is idempotent.
 */
#pragma once

#include <algorithm>
#include <unordered_map>
#include <vector>

#include "sygus/term.hpp"

namespace sygus {

namespace detail {

inline void collect_operands(const Term& t, Op op, std::vector<Term>& out) {
  if (t.is_app(op)) {
    collect_operands(t[0], op, out);
    collect_operands(t[1], op, out);
  } else {
    out.push_back(t);
  }
}

inline Term simplify_junction(const Term& t) {
  const Op op = t.op();
  const bool is_and = op == Op::And;
  std::vector<Term> ops;
  collect_operands(t, op, ops);
  std::vector<Term> kept;
  for (const Term& o : ops) {
    if (o.kind() == Term::Kind::BoolConst) {
      if (o.bool_value() != is_and) return Term::boolean(!is_and);  // absorbing
      continue;                                                      // neutral
    }
    kept.push_back(o);
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  if (kept.empty()) return Term::boolean(is_and);
  if (kept.size() == 1) return kept.front();
  if (kept.size() == 2 && kept[0] == t[0] && kept[1] == t[1]) return t;
  Term acc = kept.back();
  for (std::size_t i = kept.size() - 1; i-- > 0;) acc = Term::app(op, {kept[i], acc});
  return acc;
}

/// One rewrite step at the root, assuming simplified children.
inline Term rewrite_root(const Term& t) {
  if (t.kind() != Term::Kind::App) return t;
  const auto& c = t.children();
  auto is_int = [](const Term& x) { return x.kind() == Term::Kind::IntConst; };
  auto is_zero = [&](const Term& x) { return is_int(x) && x.int_value() == 0; };
  switch (t.op()) {
    case Op::Add:
      if (is_int(c[0]) && is_int(c[1])) return Term::integer(c[0].int_value() + c[1].int_value());
      if (is_zero(c[1])) return c[0];
      if (is_zero(c[0])) return c[1];
      return t;
    case Op::Sub:
      if (is_int(c[0]) && is_int(c[1])) return Term::integer(c[0].int_value() - c[1].int_value());
      if (is_zero(c[1])) return c[0];
      if (c[0] == c[1]) return Term::integer(0);
      return t;
    case Op::Leq:
      if (is_int(c[0]) && is_int(c[1])) return Term::boolean(c[0].int_value() <= c[1].int_value());
      if (c[0] == c[1]) return Term::boolean(true);
      return t;
    case Op::Eq:
      if (is_int(c[0]) && is_int(c[1])) return Term::boolean(c[0].int_value() == c[1].int_value());
      if (c[0] == c[1]) return Term::boolean(true);
      return t;
    case Op::Not:
      if (c[0].kind() == Term::Kind::BoolConst) return Term::boolean(!c[0].bool_value());
      if (c[0].is_app(Op::Not)) return c[0][0];
      return t;
    case Op::And:
    case Op::Or: return simplify_junction(t);
    case Op::Ite:
      if (c[0].is_true()) return c[1];
      if (c[0].is_false()) return c[2];
      if (c[1] == c[2]) return c[1];
      return t;
  }
  return t;
}

}  // namespace detail

inline Term simplify(const Term& t) {
  std::unordered_map<Term, Term, TermHash> memo;
  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    if (u.children().empty()) return u;
    if (auto it = memo.find(u); it != memo.end()) return it->second;
    Term v = detail::map_children(u, go);
    for (;;) {
      Term w = detail::rewrite_root(v);
      if (w == v) break;
      // a rewrite may expose a new redex only at the root of its result
      v = w.children().empty() ? w : detail::map_children(w, go);
    }
    memo.emplace(u, v);
    return v;
  };
  return go(t);
}

}  // namespace sygus
