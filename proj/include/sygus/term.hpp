/*! \file term.hpp
 * \brief Ground terms over linear integer arithmetic with Booleans: sorts,
 *        values, assignments, construction, evaluation and substitution.
 */
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sygus/error.hpp"

namespace sygus {

using Integer = boost::multiprecision::cpp_int;

enum class SortKind { Int, Bool, Datatype };

struct Sort {
  SortKind kind = SortKind::Int;
  std::string datatype;  // only for SortKind::Datatype

  static Sort integer() { return {SortKind::Int, {}}; }
  static Sort boolean() { return {SortKind::Bool, {}}; }
  static Sort named(std::string name) { return {SortKind::Datatype, std::move(name)}; }

  bool is_int() const { return kind == SortKind::Int; }
  bool is_bool() const { return kind == SortKind::Bool; }

  friend bool operator==(const Sort&, const Sort&) = default;
  friend auto operator<=>(const Sort&, const Sort&) = default;

  std::string to_string() const {
    switch (kind) {
      case SortKind::Int: return "Int";
      case SortKind::Bool: return "Bool";
      case SortKind::Datatype: return datatype;
    }
    return "?";
  }
};

/// A concrete Int or Bool value.
class Value {
 public:
  Value() : v_(Integer(0)) {}
  Value(Integer i) : v_(std::move(i)) {}  // NOLINT(google-explicit-constructor)
  Value(int i) : v_(Integer(i)) {}        // NOLINT(google-explicit-constructor)
  Value(bool b) : v_(b) {}                // NOLINT(google-explicit-constructor)

  bool is_int() const { return std::holds_alternative<Integer>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  const Integer& as_int() const {
    if (!is_int()) throw SortMismatch("expected an Int value");
    return std::get<Integer>(v_);
  }
  bool as_bool() const {
    if (!is_bool()) throw SortMismatch("expected a Bool value");
    return std::get<bool>(v_);
  }
  Sort sort() const { return is_int() ? Sort::integer() : Sort::boolean(); }

  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
  friend bool operator<(const Value& a, const Value& b) {
    if (a.v_.index() != b.v_.index()) return a.v_.index() < b.v_.index();
    if (a.is_int()) return a.as_int() < b.as_int();
    return a.as_bool() < b.as_bool();
  }

  std::string to_string() const {
    if (is_bool()) return as_bool() ? "true" : "false";
    const Integer& i = as_int();
    if (i < 0) return "(- " + Integer(-i).str() + ")";
    return i.str();
  }

 private:
  std::variant<Integer, bool> v_;
};

/// Finite map from variable names to values; ordered so printing is stable.
class Assignment {
 public:
  Assignment() = default;
  Assignment(std::initializer_list<std::pair<const std::string, Value>> init) : map_(init) {}

  void bind(const std::string& name, Value v) { map_[name] = std::move(v); }
  bool contains(const std::string& name) const { return map_.count(name) != 0; }
  const Value& at(const std::string& name) const {
    auto it = map_.find(name);
    if (it == map_.end()) throw UnboundVariable(name);
    return it->second;
  }
  const Value* find(const std::string& name) const {
    auto it = map_.find(name);
    return it == map_.end() ? nullptr : &it->second;
  }
  std::size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : map_) {
      out += first ? " " : ", ";
      first = false;
      out += k + " -> " + v.to_string();
    }
    return out + (first ? "}" : " }");
  }

 private:
  std::map<std::string, Value> map_;
};

/// Builtin operators of the internal term language.
enum class Op { Add, Sub, Leq, Eq, And, Or, Not, Ite };

/// Operators accepted in surface syntax. `>=`, `<`, `>` and `=>` are
/// normalized onto Op and remembered as a Spelling so printing restores them.
enum class SurfaceOp { Add, Sub, Leq, Geq, Lt, Gt, Eq, And, Or, Not, Ite, Implies };

/// Display hint carried by an App node. Never affects semantics.
///   Geq:     Leq(b, a)        prints as (>= a b)
///   Lt:      Not(Leq(b, a))   prints as (< a b)
///   Gt:      Not(Leq(a, b))   prints as (> a b)
///   Implies: Or(Not(a), b)    prints as (=> a b)
enum class Spelling { Plain, Geq, Lt, Gt, Implies };

inline std::size_t surface_arity(SurfaceOp op) {
  switch (op) {
    case SurfaceOp::Not: return 1;
    case SurfaceOp::Ite: return 3;
    default: return 2;
  }
}

inline const char* surface_symbol(SurfaceOp op) {
  switch (op) {
    case SurfaceOp::Add: return "+";
    case SurfaceOp::Sub: return "-";
    case SurfaceOp::Leq: return "<=";
    case SurfaceOp::Geq: return ">=";
    case SurfaceOp::Lt: return "<";
    case SurfaceOp::Gt: return ">";
    case SurfaceOp::Eq: return "=";
    case SurfaceOp::And: return "and";
    case SurfaceOp::Or: return "or";
    case SurfaceOp::Not: return "not";
    case SurfaceOp::Ite: return "ite";
    case SurfaceOp::Implies: return "=>";
  }
  return "?";
}

inline std::optional<SurfaceOp> surface_op_from_symbol(std::string_view s) {
  static const std::pair<std::string_view, SurfaceOp> table[] = {
      {"+", SurfaceOp::Add},  {"-", SurfaceOp::Sub},       {"<=", SurfaceOp::Leq},
      {">=", SurfaceOp::Geq}, {"<", SurfaceOp::Lt},        {">", SurfaceOp::Gt},
      {"=", SurfaceOp::Eq},   {"and", SurfaceOp::And},     {"or", SurfaceOp::Or},
      {"not", SurfaceOp::Not}, {"ite", SurfaceOp::Ite},    {"=>", SurfaceOp::Implies},
  };
  for (const auto& [sym, op] : table)
    if (sym == s) return op;
  return std::nullopt;
}

/// Immutable, structurally shared term. Copying is cheap.
class Term {
 public:
  enum class Kind { Var, IntConst, BoolConst, App, Call };

  Term() = default;

  static Term var(std::string name, Sort sort) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->name = std::move(name);
    n->sort = std::move(sort);
    return Term(finish(std::move(n)));
  }
  static Term integer(Integer value) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::IntConst;
    n->sort = Sort::integer();
    n->value = std::move(value);
    return Term(finish(std::move(n)));
  }
  static Term integer(long long value) { return integer(Integer(value)); }
  static Term boolean(bool truth) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::BoolConst;
    n->sort = Sort::boolean();
    n->truth = truth;
    return Term(finish(std::move(n)));
  }
  static Term value(const Value& v) { return v.is_int() ? integer(v.as_int()) : boolean(v.as_bool()); }

  /// Builtin application. Throws SortMismatch if ill-sorted. A spelling that
  /// does not fit the node's shape is dropped.
  static Term app(Op op, std::vector<Term> children, Spelling spelling = Spelling::Plain) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::App;
    n->op = op;
    n->sort = check_app(op, children);
    n->children = std::move(children);
    n->spelling = fits(op, n->children, spelling) ? spelling : Spelling::Plain;
    return Term(finish(std::move(n)));
  }

  /// Application of an uninterpreted (to-be-synthesized) function.
  static Term call(std::string fun, Sort result, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Call;
    n->name = std::move(fun);
    n->sort = std::move(result);
    n->children = std::move(args);
    return Term(finish(std::move(n)));
  }

  bool valid() const { return node_ != nullptr; }
  Kind kind() const { return node_->kind; }
  const Sort& sort() const { return node_->sort; }
  const std::string& name() const { return node_->name; }
  const Integer& int_value() const { return node_->value; }
  bool bool_value() const { return node_->truth; }
  Op op() const { return node_->op; }
  Spelling spelling() const { return node_->spelling; }
  const std::vector<Term>& children() const { return node_->children; }
  const Term& operator[](std::size_t i) const { return node_->children[i]; }
  std::size_t hash() const { return node_->hash; }
  /// Number of nodes in the tree.
  std::size_t node_count() const { return node_->count; }

  bool is_var() const { return kind() == Kind::Var; }
  bool is_const() const { return kind() == Kind::IntConst || kind() == Kind::BoolConst; }
  bool is_app(Op o) const { return kind() == Kind::App && op() == o; }
  bool is_true() const { return kind() == Kind::BoolConst && bool_value(); }
  bool is_false() const { return kind() == Kind::BoolConst && !bool_value(); }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_ || a.hash() != b.hash()) return false;
    return compare(a, b) == 0;
  }

  /// Total order: smaller trees first, then by structure.
  friend int compare(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return 0;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    if (x.count != y.count) return x.count < y.count ? -1 : 1;
    if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
    if (x.kind == Kind::App) {
      if (x.op != y.op) return x.op < y.op ? -1 : 1;
      if (x.spelling != y.spelling) return x.spelling < y.spelling ? -1 : 1;
    }
    if (x.name != y.name) return x.name < y.name ? -1 : 1;
    if (x.sort != y.sort) return x.sort < y.sort ? -1 : 1;
    if (x.value != y.value) return x.value < y.value ? -1 : 1;
    if (x.truth != y.truth) return x.truth < y.truth ? -1 : 1;
    if (x.children.size() != y.children.size()) return x.children.size() < y.children.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.children.size(); ++i)
      if (int c = compare(x.children[i], y.children[i]); c != 0) return c;
    return 0;
  }
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

 private:
  struct Node {
    Kind kind = Kind::Var;
    Sort sort;
    std::string name;
    Integer value;
    bool truth = false;
    Op op = Op::Add;
    Spelling spelling = Spelling::Plain;
    std::vector<Term> children;
    std::size_t hash = 0;
    std::size_t count = 1;
  };

  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static std::shared_ptr<const Node> finish(std::shared_ptr<Node> n) {
    std::size_t h = static_cast<std::size_t>(n->kind) * 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(std::hash<std::string>{}(n->name));
    mix(static_cast<std::size_t>(n->op));
    mix(static_cast<std::size_t>(n->spelling));
    mix(n->truth ? 1 : 0);
    if (n->kind == Kind::IntConst) {
      if (n->value >= -(Integer(1) << 62) && n->value <= (Integer(1) << 62))
        mix(static_cast<std::size_t>(static_cast<long long>(n->value)));
      else
        mix(std::hash<std::string>{}(n->value.str()));
    }
    for (const Term& c : n->children) {
      mix(c.hash());
      n->count += c.node_count();
    }
    n->hash = h;
    return n;
  }

  static Sort check_app(Op op, const std::vector<Term>& ch) {
    auto need = [&](std::size_t n) {
      if (ch.size() != n)
        throw SortMismatch("operator expects " + std::to_string(n) + " arguments, got " +
                           std::to_string(ch.size()));
      for (const Term& c : ch)
        if (!c.valid()) throw SortMismatch("null argument");
    };
    auto all = [&](const Sort& s, const char* what) {
      for (const Term& c : ch)
        if (c.sort() != s)
          throw SortMismatch(std::string(what) + " expects " + s.to_string() + " arguments, got " +
                             c.sort().to_string());
    };
    switch (op) {
      case Op::Add:
      case Op::Sub:
        need(2);
        all(Sort::integer(), op == Op::Add ? "+" : "-");
        return Sort::integer();
      case Op::Leq:
      case Op::Eq:
        need(2);
        all(Sort::integer(), op == Op::Leq ? "<=" : "=");
        return Sort::boolean();
      case Op::And:
      case Op::Or:
        need(2);
        all(Sort::boolean(), op == Op::And ? "and" : "or");
        return Sort::boolean();
      case Op::Not:
        need(1);
        all(Sort::boolean(), "not");
        return Sort::boolean();
      case Op::Ite:
        need(3);
        if (!ch[0].sort().is_bool()) throw SortMismatch("ite condition must be Bool");
        if (ch[1].sort() != ch[2].sort())
          throw SortMismatch("ite branches differ: " + ch[1].sort().to_string() + " vs " +
                             ch[2].sort().to_string());
        if (!ch[1].sort().is_int() && !ch[1].sort().is_bool())
          throw SortMismatch("ite branches must be Int or Bool");
        return ch[1].sort();
    }
    throw SortMismatch("unknown operator");
  }

  static bool fits(Op op, const std::vector<Term>& ch, Spelling s) {
    switch (s) {
      case Spelling::Plain: return true;
      case Spelling::Geq: return op == Op::Leq;
      case Spelling::Lt:
      case Spelling::Gt: return op == Op::Not && ch[0].is_app(Op::Leq) && ch[0].spelling() == Spelling::Plain;
      case Spelling::Implies:
        return op == Op::Or && ch[0].is_app(Op::Not) && ch[0].spelling() == Spelling::Plain;
    }
    return false;
  }

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

/// Builds the internal form of a surface operator application.
inline Term make(SurfaceOp op, std::vector<Term> ch) {
  if (ch.size() != surface_arity(op))
    throw SortMismatch(std::string(surface_symbol(op)) + " expects " +
                       std::to_string(surface_arity(op)) + " arguments, got " +
                       std::to_string(ch.size()));
  switch (op) {
    case SurfaceOp::Add: return Term::app(Op::Add, std::move(ch));
    case SurfaceOp::Sub: return Term::app(Op::Sub, std::move(ch));
    case SurfaceOp::Leq: return Term::app(Op::Leq, std::move(ch));
    case SurfaceOp::Geq: return Term::app(Op::Leq, {ch[1], ch[0]}, Spelling::Geq);
    case SurfaceOp::Lt:
      return Term::app(Op::Not, {Term::app(Op::Leq, {ch[1], ch[0]})}, Spelling::Lt);
    case SurfaceOp::Gt:
      return Term::app(Op::Not, {Term::app(Op::Leq, {ch[0], ch[1]})}, Spelling::Gt);
    case SurfaceOp::Eq: return Term::app(Op::Eq, std::move(ch));
    case SurfaceOp::And: return Term::app(Op::And, std::move(ch));
    case SurfaceOp::Or: return Term::app(Op::Or, std::move(ch));
    case SurfaceOp::Not: return Term::app(Op::Not, std::move(ch));
    case SurfaceOp::Ite: return Term::app(Op::Ite, std::move(ch));
    case SurfaceOp::Implies:
      return Term::app(Op::Or, {Term::app(Op::Not, {ch[0]}), ch[1]}, Spelling::Implies);
  }
  throw SortMismatch("unknown surface operator");
}

/// Result sort of a surface operator given its argument sorts, if well-sorted.
inline std::optional<Sort> surface_result_sort(SurfaceOp op, std::span<const Sort> args) {
  if (args.size() != surface_arity(op)) return std::nullopt;
  auto all = [&](const Sort& s) {
    return std::all_of(args.begin(), args.end(), [&](const Sort& a) { return a == s; });
  };
  switch (op) {
    case SurfaceOp::Add:
    case SurfaceOp::Sub:
      return all(Sort::integer()) ? std::optional(Sort::integer()) : std::nullopt;
    case SurfaceOp::Leq:
    case SurfaceOp::Geq:
    case SurfaceOp::Lt:
    case SurfaceOp::Gt:
    case SurfaceOp::Eq:
      return all(Sort::integer()) ? std::optional(Sort::boolean()) : std::nullopt;
    case SurfaceOp::And:
    case SurfaceOp::Or:
    case SurfaceOp::Not:
    case SurfaceOp::Implies:
      return all(Sort::boolean()) ? std::optional(Sort::boolean()) : std::nullopt;
    case SurfaceOp::Ite:
      if (args[0].is_bool() && args[1] == args[2] && (args[1].is_int() || args[1].is_bool()))
        return args[1];
      return std::nullopt;
  }
  return std::nullopt;
}

struct Variable {
  std::string name;
  Sort sort;
  Term term() const { return Term::var(name, sort); }
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Interpretation of uninterpreted function applications during evaluation.
using FunctionInterp = std::function<Value(const std::string& fun, std::span<const Value> args)>;

/// Standard Int/Bool semantics. Throws UnboundVariable when `a` is not total
/// on the free variables of `t`, and PreconditionViolated on a function call
/// with no interpretation.
inline Value evaluate(const Term& t, const Assignment& a, const FunctionInterp* interp = nullptr) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      const Value& v = a.at(t.name());
      if (v.sort() != t.sort())
        throw SortMismatch("variable '" + t.name() + "' bound to a value of the wrong sort");
      return v;
    }
    case Term::Kind::IntConst: return Value(t.int_value());
    case Term::Kind::BoolConst: return Value(t.bool_value());
    case Term::Kind::Call: {
      if (interp == nullptr || !*interp)
        throw PreconditionViolated("no interpretation for function '" + t.name() + "'");
      std::vector<Value> args;
      args.reserve(t.children().size());
      for (const Term& c : t.children()) args.push_back(evaluate(c, a, interp));
      return (*interp)(t.name(), args);
    }
    case Term::Kind::App: break;
  }
  const auto& ch = t.children();
  switch (t.op()) {
    case Op::Add: return Value(evaluate(ch[0], a, interp).as_int() + evaluate(ch[1], a, interp).as_int());
    case Op::Sub: return Value(evaluate(ch[0], a, interp).as_int() - evaluate(ch[1], a, interp).as_int());
    case Op::Leq: return Value(evaluate(ch[0], a, interp).as_int() <= evaluate(ch[1], a, interp).as_int());
    case Op::Eq: return Value(evaluate(ch[0], a, interp).as_int() == evaluate(ch[1], a, interp).as_int());
    case Op::And: return Value(evaluate(ch[0], a, interp).as_bool() && evaluate(ch[1], a, interp).as_bool());
    case Op::Or: return Value(evaluate(ch[0], a, interp).as_bool() || evaluate(ch[1], a, interp).as_bool());
    case Op::Not: return Value(!evaluate(ch[0], a, interp).as_bool());
    case Op::Ite:
      return evaluate(ch[0], a, interp).as_bool() ? evaluate(ch[1], a, interp) : evaluate(ch[2], a, interp);
  }
  throw SortMismatch("unknown operator");
}

using Substitution = std::map<std::string, Term>;

namespace detail {

inline Term rebuild(const Term& t, std::vector<Term> children) {
  if (t.kind() == Term::Kind::Call) return Term::call(t.name(), t.sort(), std::move(children));
  return Term::app(t.op(), std::move(children), t.spelling());
}

template <class Fn>
Term map_children(const Term& t, Fn&& fn) {
  if (t.children().empty()) return t;
  std::vector<Term> out;
  out.reserve(t.children().size());
  bool changed = false;
  for (const Term& c : t.children()) {
    out.push_back(fn(c));
    changed = changed || !(out.back().hash() == c.hash() && out.back() == c);
  }
  return changed ? rebuild(t, std::move(out)) : t;
}

}  // namespace detail

/// Simultaneous substitution of variables by terms.
inline Term substitute(const Term& t, const Substitution& sigma) {
  for (const auto& [name, rep] : sigma) {
    (void)name;
    if (!rep.valid()) throw SortMismatch("null replacement term");
  }
  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    if (u.is_var()) {
      auto it = sigma.find(u.name());
      if (it == sigma.end()) return u;
      if (it->second.sort() != u.sort())
        throw SortMismatch("cannot replace '" + u.name() + "' of sort " + u.sort().to_string() +
                           " by a term of sort " + it->second.sort().to_string());
      return it->second;
    }
    return detail::map_children(u, go);
  };
  if (sigma.empty()) return t;
  return go(t);
}

/// Replaces every application fun(a1..an) by body[params := a1..an].
inline Term instantiate_function(const Term& t, const std::string& fun,
                                 std::span<const Variable> params, const Term& body) {
  std::function<Term(const Term&)> go = [&](const Term& u) -> Term {
    Term v = detail::map_children(u, go);
    if (v.kind() != Term::Kind::Call || v.name() != fun) return v;
    if (v.children().size() != params.size())
      throw SortMismatch("'" + fun + "' applied to " + std::to_string(v.children().size()) +
                         " arguments, expects " + std::to_string(params.size()));
    Substitution sigma;
    for (std::size_t i = 0; i < params.size(); ++i) sigma[params[i].name] = v.children()[i];
    return substitute(body, sigma);
  };
  return go(t);
}

/// Free variables in first-occurrence (left-to-right) order.
inline std::vector<Variable> free_variables(const Term& t) {
  std::vector<Variable> out;
  std::set<std::string> seen;
  std::function<void(const Term&)> go = [&](const Term& u) {
    if (u.is_var()) {
      if (seen.insert(u.name()).second) out.push_back({u.name(), u.sort()});
      return;
    }
    for (const Term& c : u.children()) go(c);
  };
  go(t);
  return out;
}

inline bool contains_call(const Term& t, const std::string& fun = {}) {
  if (t.kind() == Term::Kind::Call && (fun.empty() || t.name() == fun)) return true;
  return std::any_of(t.children().begin(), t.children().end(),
                     [&](const Term& c) { return contains_call(c, fun); });
}

inline Term mk_not(Term a) { return Term::app(Op::Not, {std::move(a)}); }
inline Term mk_and(Term a, Term b) { return Term::app(Op::And, {std::move(a), std::move(b)}); }
inline Term mk_or(Term a, Term b) { return Term::app(Op::Or, {std::move(a), std::move(b)}); }
inline Term mk_ite(Term c, Term a, Term b) {
  return Term::app(Op::Ite, {std::move(c), std::move(a), std::move(b)});
}

/// Right-nested conjunction; `true` when empty.
inline Term mk_and(std::span<const Term> ts) {
  if (ts.empty()) return Term::boolean(true);
  Term acc = ts.back();
  for (std::size_t i = ts.size() - 1; i-- > 0;) acc = mk_and(ts[i], acc);
  return acc;
}

}  // namespace sygus
