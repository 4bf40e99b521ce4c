/*! \file term_io.hpp
 * \brief Canonical s-expression printing and parsing of terms.
 *
 * The printer is the inverse of the parser: parse(print(t)) == t for every
 * term, including the surface spellings of `>=`, `<`, `>` and `=>`.
 * Conjunctions and disjunctions print their right spine n-ary, so
 * (and a (and b c)) prints as (and a b c).
 */
#pragma once

#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sygus/sexpr.hpp"
#include "sygus/term.hpp"

namespace sygus {

namespace detail {

inline void print_term(std::ostream& os, const Term& t);

inline void print_chain(std::ostream& os, const char* sym, const Term& t, Op op) {
  os << '(' << sym;
  Term cur = t;
  while (cur.is_app(op) && cur.spelling() == Spelling::Plain) {
    os << ' ';
    print_term(os, cur[0]);
    cur = cur[1];
  }
  os << ' ';
  print_term(os, cur);
  os << ')';
}

inline void print_app(std::ostream& os, const char* sym, std::initializer_list<Term> args) {
  os << '(' << sym;
  for (const Term& a : args) {
    os << ' ';
    print_term(os, a);
  }
  os << ')';
}

inline void print_term(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Var: os << t.name(); return;
    case Term::Kind::IntConst:
      if (t.int_value() < 0)
        os << "(- " << Integer(-t.int_value()).str() << ')';
      else
        os << t.int_value().str();
      return;
    case Term::Kind::BoolConst: os << (t.bool_value() ? "true" : "false"); return;
    case Term::Kind::Call:
      if (t.children().empty()) {
        os << t.name();
        return;
      }
      os << '(' << t.name();
      for (const Term& c : t.children()) {
        os << ' ';
        print_term(os, c);
      }
      os << ')';
      return;
    case Term::Kind::App: break;
  }
  switch (t.op()) {
    case Op::Add: print_app(os, "+", {t[0], t[1]}); return;
    case Op::Sub: print_app(os, "-", {t[0], t[1]}); return;
    case Op::Leq:
      if (t.spelling() == Spelling::Geq)
        print_app(os, ">=", {t[1], t[0]});
      else
        print_app(os, "<=", {t[0], t[1]});
      return;
    case Op::Eq: print_app(os, "=", {t[0], t[1]}); return;
    case Op::And: print_chain(os, "and", t, Op::And); return;
    case Op::Or:
      if (t.spelling() == Spelling::Implies)
        print_app(os, "=>", {t[0][0], t[1]});
      else
        print_chain(os, "or", t, Op::Or);
      return;
    case Op::Not:
      if (t.spelling() == Spelling::Lt)
        print_app(os, "<", {t[0][1], t[0][0]});
      else if (t.spelling() == Spelling::Gt)
        print_app(os, ">", {t[0][0], t[0][1]});
      else
        print_app(os, "not", {t[0]});
      return;
    case Op::Ite: print_app(os, "ite", {t[0], t[1], t[2]}); return;
  }
}

}  // namespace detail

inline std::ostream& operator<<(std::ostream& os, const Term& t) {
  detail::print_term(os, t);
  return os;
}

inline std::string to_string(const Term& t) {
  std::ostringstream os;
  detail::print_term(os, t);
  return os.str();
}

struct FunctionSignature {
  std::vector<Sort> args;
  Sort result;
};

/// Symbols visible while parsing a term.
struct Scope {
  std::map<std::string, Sort> variables;
  std::map<std::string, FunctionSignature> functions;
};

/// Parses one term from an s-expression. Errors carry source positions:
/// UnknownSymbol for undeclared names, SortError for ill-sorted terms,
/// SyntaxError for malformed applications.
inline Term parse_term(const SExpr& e, const Scope& scope) {
  if (e.is_atom()) {
    const std::string& a = e.atom;
    if (is_numeral(a)) return Term::integer(Integer(a));
    if (a == "true") return Term::boolean(true);
    if (a == "false") return Term::boolean(false);
    if (auto it = scope.variables.find(a); it != scope.variables.end()) return Term::var(a, it->second);
    if (auto it = scope.functions.find(a); it != scope.functions.end()) {
      if (!it->second.args.empty())
        throw SortError(e.where(), "function '" + a + "' used without arguments");
      return Term::call(a, it->second.result, {});
    }
    throw UnknownSymbol(a, e.line, e.col);
  }
  if (e.items.empty()) throw SyntaxError(e.line, e.col, "empty application");
  const SExpr& head = e.items.front();
  if (!head.is_atom()) throw SyntaxError(head.line, head.col, "expected an operator symbol");
  std::vector<Term> args;
  args.reserve(e.items.size() - 1);
  for (std::size_t i = 1; i < e.items.size(); ++i) args.push_back(parse_term(e.items[i], scope));

  const std::string& sym = head.atom;
  try {
    if (auto fit = scope.functions.find(sym); fit != scope.functions.end()) {
      const FunctionSignature& sig = fit->second;
      if (sig.args.size() != args.size())
        throw SortMismatch("'" + sym + "' expects " + std::to_string(sig.args.size()) +
                           " arguments, got " + std::to_string(args.size()));
      for (std::size_t i = 0; i < args.size(); ++i)
        if (args[i].sort() != sig.args[i])
          throw SortMismatch("argument " + std::to_string(i + 1) + " of '" + sym + "' has sort " +
                             args[i].sort().to_string() + ", expected " + sig.args[i].to_string());
      return Term::call(sym, sig.result, std::move(args));
    }
    auto op = surface_op_from_symbol(sym);
    if (!op) throw UnknownSymbol(sym, head.line, head.col);
    switch (*op) {
      case SurfaceOp::Sub:
        if (args.size() == 1) {
          if (args[0].kind() == Term::Kind::IntConst && e.items[1].is_atom())
            return Term::integer(-args[0].int_value());
          return make(SurfaceOp::Sub, {Term::integer(0), args[0]});
        }
        [[fallthrough]];
      case SurfaceOp::Add: {
        if (args.size() < 2) throw SortMismatch(sym + " expects at least 2 arguments");
        Term acc = make(*op, {args[0], args[1]});
        for (std::size_t i = 2; i < args.size(); ++i) acc = make(*op, {acc, args[i]});
        return acc;
      }
      case SurfaceOp::And:
      case SurfaceOp::Or: {
        if (args.size() < 2) throw SortMismatch(sym + " expects at least 2 arguments");
        Term acc = make(*op, {args[args.size() - 2], args.back()});
        for (std::size_t i = args.size() - 2; i-- > 0;) acc = make(*op, {args[i], acc});
        return acc;
      }
      default: return make(*op, std::move(args));
    }
  } catch (const SortMismatch& m) {
    throw SortError(e.where(), m.what());
  }
}

inline Term parse_term(std::string_view text, const Scope& scope) {
  auto es = read_sexprs(text);
  if (es.size() != 1) throw SyntaxError(1, 1, "expected exactly one term");
  return parse_term(es.front(), scope);
}

}  // namespace sygus
