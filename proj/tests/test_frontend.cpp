#include <gtest/gtest.h>

#include "support.hpp"
#include "sygus/sygus.hpp"

using namespace sygus;
using namespace sygus::testing;

namespace {

ProblemFile load(const std::string& name) { return parse_problem(read_file(fixture(name))); }

const char* const kGood[] = {"max.sl",   "max_nullary.sl", "max_no_ite.sl", "max_default.sl", "abs.sl",
                             "clamp.sl", "identity.sl",    "strict_lt.sl",  "not_single.sl"};

TEST(Problem, MaxFile) {
  ProblemFile pf = load("max.sl");
  EXPECT_EQ(pf.logic, "LIA");
  EXPECT_EQ(pf.fun_name, "f");
  ASSERT_EQ(pf.params.size(), 2u);
  ASSERT_TRUE(pf.grammar);
  EXPECT_TRUE(pf.grammar->ite_capable());
  EXPECT_EQ(pf.constraints.size(), 3u);
  Conjecture c = to_conjecture(pf);
  EXPECT_TRUE(c.single_invocation);
  // same property as the hand-built conjecture
  Conjecture hand = max_conjecture();
  TermGen gen(3, {"x", "y"});
  Term body = parse_term("(ite (<= x 0) y x)", int_scope({"x", "y"}));
  for (int i = 0; i < 100; ++i) {
    Assignment a = gen.assignment(-5, 5);
    FunctionInterp fi = body_interp(c, body);
    EXPECT_EQ(evaluate(c.property, a, &fi), evaluate(hand.property, a, &fi));
  }
}

TEST(Problem, RoundTripsCanonicalFixtures) {
  for (const char* name : kGood) {
    const std::string text = read_file(fixture(name));
    EXPECT_EQ(print_problem(parse_problem(text)), text) << name;
  }
}

TEST(Problem, ReprintIsStable) {
  const std::string messy =
      "; comment\n(set-logic LIA)\n(synth-fun f ((x Int) (y Int)) Int\n ((S Int (x y 0 (+ S S) (ite B S S)))"
      " (B Bool ((>= S S)))))\n(declare-var x Int)(declare-var y Int)\n(constraint (< x (+ (f x y) 1)))\n"
      "(check-synth)\n";
  const std::string once = print_problem(parse_problem(messy));
  EXPECT_EQ(print_problem(parse_problem(once)), once);
  EXPECT_NE(once.find("(Variable x)"), std::string::npos);
}

TEST(Problem, TwoSynthFuns) {
  try {
    load("bad_two_synth.sl");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Problem, UndeclaredVariable) { EXPECT_THROW(load("bad_undeclared.sl"), UnknownSymbol); }

TEST(Problem, Errors) {
  const std::string head = "(set-logic LIA)\n(synth-fun f ((x Int)) Int)\n(declare-var x Int)\n";
  EXPECT_THROW(parse_problem(head + "(constraint (+ (f x) 1))\n(check-synth)\n"), SortError);
  EXPECT_THROW(parse_problem(head + "(check-synth)\n"), SyntaxError);
  EXPECT_THROW(parse_problem(head + "(constraint (>= (f x) x))\n"), SyntaxError);
  EXPECT_THROW(parse_problem(head + "(constraint (>= (f x) x))\n(check-synth)\n(check-synth)\n"), SyntaxError);
  EXPECT_THROW(parse_problem("(set-logic BV)\n"), SyntaxError);
  EXPECT_THROW(parse_problem(head + "(constraint (>= (f x) x)\n"), SyntaxError);
  EXPECT_THROW(parse_problem(head + "(constraint (>= (f x x) x))\n(check-synth)\n"), SortError);
  EXPECT_THROW(parse_problem(head + "(constraint (>= (g x) x))\n(check-synth)\n"), UnknownSymbol);
  // grammar start sort differs from the result sort
  EXPECT_THROW(parse_problem("(set-logic LIA)\n(synth-fun f ((x Int)) Int ((B Bool (true))))\n(declare-var x Int)\n"
                             "(constraint (f x))\n(check-synth)\n"),
               SortError);
}

TEST(Problem, DefineFunText) {
  Conjecture c = to_conjecture(load("max.sl"));
  EXPECT_EQ(define_fun_text(c, parse_term("(ite (>= x y) x y)", int_scope({"x", "y"}))),
            "(define-fun f ((x Int) (y Int)) Int (ite (>= x y) x y))");
}

TEST(Mode, Selection) {
  auto pick = [](const char* name, Mode m) { return select_procedure(to_conjecture(load(name)), m); };
  EXPECT_EQ(pick("max.sl", Mode::Auto), Procedure::SIGrammar);
  EXPECT_EQ(pick("max_default.sl", Mode::Auto), Procedure::SIBuiltin);
  EXPECT_EQ(pick("max_nullary.sl", Mode::Auto), Procedure::Cegis);
  EXPECT_EQ(pick("not_single.sl", Mode::Auto), Procedure::Cegis);
  EXPECT_EQ(pick("max.sl", Mode::Cegis), Procedure::Cegis);
  EXPECT_EQ(pick("max_nullary.sl", Mode::SI), Procedure::NotApplicable);
  EXPECT_EQ(pick("not_single.sl", Mode::SI), Procedure::NotApplicable);
  EXPECT_EQ(pick("max_default.sl", Mode::SI), Procedure::SIBuiltin);
}

TEST(Trace, CegisTable) {
  Conjecture c = to_conjecture(load("max.sl"));
  SynthesisOutcome o = synthesize_cegis(c);
  const std::string t = cegis_table(o.cegis_trace);
  EXPECT_EQ(t.substr(0, t.find('\n')), "Round  Size  Candidate           Counterexample");
  EXPECT_NE(t.find("{ x -> 1, y -> 0 }"), std::string::npos);
  EXPECT_EQ(std::count(t.begin(), t.end(), '\n'), static_cast<long>(o.cegis_trace.size() + 1));
  EXPECT_NE(t.rfind("none\n"), std::string::npos);
}

TEST(Trace, SITable) {
  Conjecture c = to_conjecture(load("max.sl"));
  SynthesisOutcome o = solve_si_syntax_guided(c);
  const std::string t = si_table(o);
  std::istringstream in(t);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0].rfind("Model", 0), 0u);
  EXPECT_NE(lines[1].find(" k1 "), std::string::npos);
  EXPECT_NE(lines[1].find("(not (and (>= k1 k1) (>= k1 k2)"), std::string::npos);
  EXPECT_NE(lines[2].find(" k2 "), std::string::npos);
  EXPECT_NE(lines[2].find("(not (and (>= k2 k1) (>= k2 k2)"), std::string::npos);
  EXPECT_EQ(lines[3].rfind("none", 0), 0u);
}

}  // namespace
