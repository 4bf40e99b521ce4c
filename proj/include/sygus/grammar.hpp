/*! \file grammar.hpp
 * \brief Grammars as mutually recursive datatypes, program terms over them,
 *        the size measure, and the evaluation operators (denotation into
 *        builtin terms, and direct interpretation).
 */
#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sygus/term.hpp"
#include "sygus/term_io.hpp"

namespace sygus {

/// What a grammar constructor stands for.
struct Denotation {
  enum class Kind { Operator, Variable, Numeral, Boolean };
  Kind kind = Kind::Operator;
  SurfaceOp op = SurfaceOp::Add;  // Operator
  std::string variable;           // Variable
  Integer numeral;                // Numeral
  bool truth = false;             // Boolean

  static Denotation operator_(SurfaceOp op) { return {Kind::Operator, op, {}, {}, false}; }
  static Denotation variable_(std::string name) { return {Kind::Variable, {}, std::move(name), {}, false}; }
  static Denotation numeral_(Integer n) { return {Kind::Numeral, {}, {}, std::move(n), false}; }
  static Denotation boolean_(bool b) { return {Kind::Boolean, {}, {}, {}, b}; }

  std::size_t arity() const { return kind == Kind::Operator ? surface_arity(op) : 0; }
};

struct Constructor {
  std::string name;
  std::vector<std::string> arg_names;  // argument datatype names, as declared
  Denotation denotation;
  std::vector<std::size_t> args;  // resolved datatype indices

  std::size_t arity() const { return args.size(); }
};

struct Datatype {
  std::string name;
  Sort sort;  // builtin sort this datatype denotes (Int or Bool)
  std::vector<Constructor> constructors;
};

/// Where the start datatype's ite constructor lives, if it has one whose
/// branches are the start datatype itself.
struct IteInfo {
  std::size_t constructor = 0;
  std::size_t condition = 0;  // datatype index of the condition argument
};

class GrammarSpec {
 public:
  GrammarSpec() = default;

  /// Validates and resolves the grammar. Throws GrammarError on undeclared
  /// datatypes, arity or sort mismatches, unknown variables, or
  /// uninhabited datatypes.
  GrammarSpec(std::vector<Datatype> datatypes, const std::string& start, std::vector<Variable> inputs)
      : datatypes_(std::move(datatypes)), inputs_(std::move(inputs)) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < datatypes_.size(); ++i) {
      const Datatype& d = datatypes_[i];
      if (!d.sort.is_int() && !d.sort.is_bool())
        throw GrammarError("datatype '" + d.name + "' must denote Int or Bool");
      if (!index.emplace(d.name, i).second) throw GrammarError("datatype '" + d.name + "' declared twice");
      if (d.constructors.empty()) throw GrammarError("datatype '" + d.name + "' has no constructors");
    }
    auto found = index.find(start);
    if (found == index.end()) throw GrammarError("unknown start datatype '" + start + "'");
    start_ = found->second;

    for (Datatype& d : datatypes_) {
      for (Constructor& c : d.constructors) {
        c.args.clear();
        for (const std::string& a : c.arg_names) {
          auto it = index.find(a);
          if (it == index.end()) throw GrammarError("constructor '" + c.name + "' references unknown datatype '" + a + "'");
          c.args.push_back(it->second);
        }
        check_constructor(d, c);
      }
    }
    compute_min_sizes();
    compute_finiteness();
    detect_ite();
  }

  const std::vector<Datatype>& datatypes() const { return datatypes_; }
  const Datatype& datatype(std::size_t i) const { return datatypes_.at(i); }
  const Constructor& constructor(std::size_t dt, std::size_t c) const { return datatypes_.at(dt).constructors.at(c); }
  std::size_t start() const { return start_; }
  Sort result_sort() const { return datatypes_[start_].sort; }
  const std::vector<Variable>& inputs() const { return inputs_; }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < datatypes_.size(); ++i)
      if (datatypes_[i].name == name) return i;
    return std::nullopt;
  }

  /// Least size of any program of datatype `dt`.
  std::size_t min_size(std::size_t dt) const { return min_size_.at(dt); }

  /// Largest program size of the start datatype, when the program space is
  /// finite; nullopt when it is infinite.
  std::optional<std::size_t> max_program_size() const { return max_size_; }

  const std::optional<IteInfo>& ite() const { return ite_; }
  bool ite_capable() const { return ite_.has_value(); }

 private:
  void check_constructor(const Datatype& d, const Constructor& c) const {
    const Denotation& den = c.denotation;
    if (den.arity() != c.args.size())
      throw GrammarError("constructor '" + c.name + "' has " + std::to_string(c.args.size()) +
                         " arguments but its denotation takes " + std::to_string(den.arity()));
    switch (den.kind) {
      case Denotation::Kind::Operator: {
        std::vector<Sort> sorts;
        for (std::size_t a : c.args) sorts.push_back(datatypes_[a].sort);
        auto r = surface_result_sort(den.op, sorts);
        if (!r || *r != d.sort)
          throw GrammarError("constructor '" + c.name + "' of datatype '" + d.name + "' is ill-sorted");
        return;
      }
      case Denotation::Kind::Variable: {
        auto it = std::find_if(inputs_.begin(), inputs_.end(),
                               [&](const Variable& v) { return v.name == den.variable; });
        if (it == inputs_.end()) throw GrammarError("constructor '" + c.name + "' names unknown input '" + den.variable + "'");
        if (it->sort != d.sort) throw GrammarError("input '" + den.variable + "' has the wrong sort for datatype '" + d.name + "'");
        return;
      }
      case Denotation::Kind::Numeral:
        if (!d.sort.is_int()) throw GrammarError("numeral constructor in non-Int datatype '" + d.name + "'");
        return;
      case Denotation::Kind::Boolean:
        if (!d.sort.is_bool()) throw GrammarError("Boolean constructor in non-Bool datatype '" + d.name + "'");
        return;
    }
  }

  void compute_min_sizes() {
    constexpr std::size_t inf = std::numeric_limits<std::size_t>::max();
    min_size_.assign(datatypes_.size(), inf);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < datatypes_.size(); ++i) {
        for (const Constructor& c : datatypes_[i].constructors) {
          std::size_t s = c.arity() == 0 ? 0 : 1;
          for (std::size_t a : c.args) {
            if (min_size_[a] == inf) {
              s = inf;
              break;
            }
            s += min_size_[a];
          }
          if (s < min_size_[i]) {
            min_size_[i] = s;
            changed = true;
          }
        }
      }
    }
    for (std::size_t i = 0; i < datatypes_.size(); ++i)
      if (min_size_[i] == inf) throw GrammarError("datatype '" + datatypes_[i].name + "' has no finite programs");
  }

  // The program space is infinite iff a datatype reachable from the start
  // lies on a cycle of the argument graph (all datatypes are inhabited).
  void compute_finiteness() {
    const std::size_t n = datatypes_.size();
    std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
    std::vector<std::size_t> longest(n, 0);
    bool cyclic = false;
    std::function<void(std::size_t)> dfs = [&](std::size_t d) {
      state[d] = 1;
      std::size_t best = 0;
      for (const Constructor& c : datatypes_[d].constructors) {
        std::size_t s = c.arity() == 0 ? 0 : 1;
        for (std::size_t a : c.args) {
          if (state[a] == 1) {
            cyclic = true;
            continue;
          }
          if (state[a] == 0) dfs(a);
          s += longest[a];
        }
        best = std::max(best, s);
      }
      longest[d] = best;
      state[d] = 2;
    };
    dfs(start_);
    if (cyclic)
      max_size_.reset();
    else
      max_size_ = longest[start_];
  }

  void detect_ite() {
    const Datatype& s = datatypes_[start_];
    for (std::size_t i = 0; i < s.constructors.size(); ++i) {
      const Constructor& c = s.constructors[i];
      if (c.denotation.kind == Denotation::Kind::Operator && c.denotation.op == SurfaceOp::Ite &&
          c.args[1] == start_ && c.args[2] == start_) {
        ite_ = IteInfo{i, c.args[0]};
        return;
      }
    }
  }

  std::vector<Datatype> datatypes_;
  std::vector<Variable> inputs_;
  std::size_t start_ = 0;
  std::vector<std::size_t> min_size_;
  std::optional<std::size_t> max_size_;
  std::optional<IteInfo> ite_;
};

/// A value of a grammar datatype. Immutable and structurally shared.
class ProgramTerm {
 public:
  ProgramTerm() = default;

  /// Checks arity and argument datatypes against the grammar.
  static ProgramTerm make(const GrammarSpec& g, std::size_t dt, std::size_t ctor, std::vector<ProgramTerm> children) {
    const Constructor& c = g.constructor(dt, ctor);
    if (children.size() != c.arity())
      throw GrammarError("constructor '" + c.name + "' expects " + std::to_string(c.arity()) + " children");
    for (std::size_t i = 0; i < children.size(); ++i)
      if (children[i].datatype() != c.args[i])
        throw GrammarError("child " + std::to_string(i) + " of '" + c.name + "' has the wrong datatype");
    return unchecked(dt, ctor, std::move(children));
  }

  /// Construction without validation, for enumerators that build only
  /// well-formed terms.
  static ProgramTerm unchecked(std::size_t dt, std::size_t ctor, std::vector<ProgramTerm> children) {
    auto n = std::make_shared<Node>();
    n->datatype = dt;
    n->ctor = ctor;
    n->size = children.empty() ? 0 : 1;
    n->applications = 1;
    for (const ProgramTerm& ch : children) {
      n->size += ch.size();
      n->applications += ch.applications();
    }
    n->children = std::move(children);
    return ProgramTerm(std::move(n));
  }

  bool valid() const { return node_ != nullptr; }
  std::size_t datatype() const { return node_->datatype; }
  std::size_t ctor() const { return node_->ctor; }
  const std::vector<ProgramTerm>& children() const { return node_->children; }
  /// Number of non-nullary constructor applications.
  std::size_t size() const { return node_->size; }
  /// Number of constructor applications, nullary ones included.
  std::size_t applications() const { return node_->applications; }

  friend bool operator==(const ProgramTerm& a, const ProgramTerm& b) {
    if (a.node_ == b.node_) return true;
    if (a.datatype() != b.datatype() || a.ctor() != b.ctor() || a.size() != b.size() ||
        a.children().size() != b.children().size())
      return false;
    for (std::size_t i = 0; i < a.children().size(); ++i)
      if (!(a.children()[i] == b.children()[i])) return false;
    return true;
  }

 private:
  struct Node {
    std::size_t datatype = 0;
    std::size_t ctor = 0;
    std::vector<ProgramTerm> children;
    std::size_t size = 0;
    std::size_t applications = 1;
  };
  explicit ProgramTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline std::size_t size(const ProgramTerm& p) { return p.size(); }

inline Term denotation_leaf(const GrammarSpec& g, const Constructor& c) {
  const Denotation& d = c.denotation;
  switch (d.kind) {
    case Denotation::Kind::Variable: {
      for (const Variable& v : g.inputs())
        if (v.name == d.variable) return v.term();
      throw GrammarError("unknown input '" + d.variable + "'");
    }
    case Denotation::Kind::Numeral: return Term::integer(d.numeral);
    case Denotation::Kind::Boolean: return Term::boolean(d.truth);
    case Denotation::Kind::Operator: break;
  }
  throw GrammarError("constructor '" + c.name + "' is not nullary");
}

/// The builtin term a program stands for: every constructor replaced by its
/// denotation. One surface operator per program node.
inline Term denote(const ProgramTerm& p, const GrammarSpec& g) {
  const Constructor& c = g.constructor(p.datatype(), p.ctor());
  if (c.denotation.kind != Denotation::Kind::Operator) return denotation_leaf(g, c);
  std::vector<Term> kids;
  kids.reserve(p.children().size());
  for (const ProgramTerm& ch : p.children()) kids.push_back(denote(ch, g));
  return make(c.denotation.op, std::move(kids));
}

/// Direct interpretation of a program on concrete inputs, in one recursive
/// pass. When `visits` is given it is incremented once per program node
/// visited; ite skips the untaken branch.
inline Value eval_program(const ProgramTerm& p, const GrammarSpec& g, const Assignment& inputs,
                          std::size_t* visits = nullptr) {
  if (visits) ++*visits;
  const Constructor& c = g.constructor(p.datatype(), p.ctor());
  const Denotation& d = c.denotation;
  switch (d.kind) {
    case Denotation::Kind::Variable: return inputs.at(d.variable);
    case Denotation::Kind::Numeral: return Value(d.numeral);
    case Denotation::Kind::Boolean: return Value(d.truth);
    case Denotation::Kind::Operator: break;
  }
  const auto& ch = p.children();
  auto ev = [&](std::size_t i) { return eval_program(ch[i], g, inputs, visits); };
  switch (d.op) {
    case SurfaceOp::Add: return Value(ev(0).as_int() + ev(1).as_int());
    case SurfaceOp::Sub: return Value(ev(0).as_int() - ev(1).as_int());
    case SurfaceOp::Leq: return Value(ev(0).as_int() <= ev(1).as_int());
    case SurfaceOp::Geq: return Value(ev(0).as_int() >= ev(1).as_int());
    case SurfaceOp::Lt: return Value(ev(0).as_int() < ev(1).as_int());
    case SurfaceOp::Gt: return Value(ev(0).as_int() > ev(1).as_int());
    case SurfaceOp::Eq: return Value(ev(0).as_int() == ev(1).as_int());
    case SurfaceOp::And: return Value(ev(0).as_bool() && ev(1).as_bool());
    case SurfaceOp::Or: return Value(ev(0).as_bool() || ev(1).as_bool());
    case SurfaceOp::Not: return Value(!ev(0).as_bool());
    case SurfaceOp::Implies: return Value(!ev(0).as_bool() || ev(1).as_bool());
    case SurfaceOp::Ite: return ev(0).as_bool() ? ev(1) : ev(2);
  }
  throw GrammarError("unknown operator");
}

inline std::string to_string(const ProgramTerm& p, const GrammarSpec& g) { return to_string(denote(p, g)); }

/// The program tree by constructor names, e.g. (ite (<= x y) y x). Unlike
/// to_string it keeps nesting exactly as built.
inline std::string program_text(const ProgramTerm& p, const GrammarSpec& g) {
  const std::string& name = g.constructor(p.datatype(), p.ctor()).name;
  if (p.children().empty()) return name;
  std::string out = "(" + name;
  for (const ProgramTerm& ch : p.children()) out += " " + program_text(ch, g);
  return out + ")";
}

/// Surface form of a constructor inside a grammar block, e.g. (+ S S),
/// (Variable x), (Constant 0).
inline std::string constructor_text(const GrammarSpec& g, const Constructor& c) {
  const Denotation& d = c.denotation;
  switch (d.kind) {
    case Denotation::Kind::Variable: return "(Variable " + d.variable + ")";
    case Denotation::Kind::Numeral: return "(Constant " + Value(d.numeral).to_string() + ")";
    case Denotation::Kind::Boolean: return std::string("(Constant ") + (d.truth ? "true" : "false") + ")";
    case Denotation::Kind::Operator: break;
  }
  std::string s = std::string("(") + surface_symbol(d.op);
  for (std::size_t a : c.args) s += " " + g.datatype(a).name;
  return s + ")";
}

/// The Example-style grammar text: ((S Int (...)) (C Bool (...))).
inline std::string grammar_text(const GrammarSpec& g) {
  std::string out = "(";
  for (std::size_t i = 0; i < g.datatypes().size(); ++i) {
    const Datatype& d = g.datatype(i);
    if (i) out += "\n   ";
    out += "(" + d.name + " " + d.sort.to_string() + " (";
    for (std::size_t j = 0; j < d.constructors.size(); ++j) {
      if (j) out += " ";
      out += constructor_text(g, d.constructors[j]);
    }
    out += "))";
  }
  return out + ")";
}

/// Default grammar when a problem gives none: numerals 0 and 1, the Int
/// inputs, + - ite over Int; true, false, the Bool inputs, <= = and or not
/// over Bool.
inline GrammarSpec default_grammar(const std::vector<Variable>& inputs, const Sort& result) {
  Datatype ints{"Start", Sort::integer(), {}};
  Datatype bools{"StartBool", Sort::boolean(), {}};
  ints.constructors.push_back({"0", {}, Denotation::numeral_(0), {}});
  ints.constructors.push_back({"1", {}, Denotation::numeral_(1), {}});
  bools.constructors.push_back({"true", {}, Denotation::boolean_(true), {}});
  bools.constructors.push_back({"false", {}, Denotation::boolean_(false), {}});
  for (const Variable& v : inputs)
    (v.sort.is_int() ? ints : bools).constructors.push_back({v.name, {}, Denotation::variable_(v.name), {}});
  ints.constructors.push_back({"+", {"Start", "Start"}, Denotation::operator_(SurfaceOp::Add), {}});
  ints.constructors.push_back({"-", {"Start", "Start"}, Denotation::operator_(SurfaceOp::Sub), {}});
  ints.constructors.push_back({"ite", {"StartBool", "Start", "Start"}, Denotation::operator_(SurfaceOp::Ite), {}});
  bools.constructors.push_back({"<=", {"Start", "Start"}, Denotation::operator_(SurfaceOp::Leq), {}});
  bools.constructors.push_back({"=", {"Start", "Start"}, Denotation::operator_(SurfaceOp::Eq), {}});
  bools.constructors.push_back({"and", {"StartBool", "StartBool"}, Denotation::operator_(SurfaceOp::And), {}});
  bools.constructors.push_back({"or", {"StartBool", "StartBool"}, Denotation::operator_(SurfaceOp::Or), {}});
  bools.constructors.push_back({"not", {"StartBool"}, Denotation::operator_(SurfaceOp::Not), {}});
  if (result.is_bool()) {
    bools.constructors.push_back({"ite", {"StartBool", "StartBool", "StartBool"}, Denotation::operator_(SurfaceOp::Ite), {}});
    return GrammarSpec({bools, ints}, "StartBool", inputs);
  }
  return GrammarSpec({ints, bools}, "Start", inputs);
}

}  // namespace sygus
