#include <gtest/gtest.h>

#include "support.hpp"
#include "sygus/simplify.hpp"
#include "sygus/term.hpp"
#include "sygus/term_io.hpp"

using namespace sygus;
using namespace sygus::testing;

namespace {

Term parse(const std::string& s, Scope scope = int_scope({"x", "y", "k1", "k2", "t1", "t2", "k"})) {
  return parse_term(s, scope);
}

TEST(Evaluate, MaxCandidateAtDistinguishingPoint) {
  Term t = parse("(ite (<= x y) y x)");
  EXPECT_EQ(evaluate(t, {{"x", 1}, {"y", 2}}), Value(2));
}

TEST(Evaluate, AdditiveIdentity) { EXPECT_EQ(evaluate(parse("(+ x y)"), {{"x", 0}, {"y", 0}}), Value(0)); }

TEST(Evaluate, SolutionGuardAgreesWithOracle) {
  Term guard = parse("(and (>= x x) (and (>= x y) (or (= x x) (= x y))))");
  Assignment a{{"x", 3}, {"y", 7}};
  EXPECT_EQ(oracle_eval(guard, to_env(a)), 0);
  EXPECT_EQ(evaluate(guard, a), Value(false));
}

TEST(Evaluate, UnboundVariable) {
  try {
    evaluate(parse("(+ x y)"), {{"x", 1}});
    FAIL() << "expected UnboundVariable";
  } catch (const UnboundVariable& e) {
    EXPECT_EQ(e.name(), "y");
  }
}

TEST(Evaluate, ArbitraryPrecision) {
  Integer big = Integer(1) << 100;
  Term t = make(SurfaceOp::Add, {Term::integer(big), X()});
  EXPECT_EQ(evaluate(t, {{"x", 1}}).as_int(), big + 1);
}

TEST(Evaluate, RandomTermsAgreeWithOracle) {
  TermGen gen(7, {"x", "y"});
  for (int i = 0; i < 300; ++i) {
    Term t = gen.bool_term(4);
    Assignment a = gen.assignment(-10, 10);
    ASSERT_EQ(as_ll(evaluate(t, a)), oracle_eval(t, to_env(a))) << to_string(t);
  }
}

TEST(Term, WellSortedness) {
  EXPECT_THROW(Term::app(Op::Add, {X(), Term::boolean(true)}), SortMismatch);
  EXPECT_THROW(Term::app(Op::Not, {X()}), SortMismatch);
  EXPECT_THROW(Term::app(Op::Ite, {Term::boolean(true), X(), Term::boolean(false)}), SortMismatch);
  EXPECT_THROW(Term::app(Op::Leq, {X()}), SortMismatch);
  EXPECT_EQ(Term::app(Op::Ite, {Term::boolean(true), Term::boolean(true), Term::boolean(false)}).sort(),
            Sort::boolean());
}

TEST(Substitute, SkolemInstantiation) {
  Scope s = int_scope({"g", "x", "k1"});
  Term t = parse_term("(>= g x)", s);
  Term r = substitute(t, {{"g", V("k1")}, {"x", V("k1")}});
  EXPECT_EQ(to_string(r), "(>= k1 k1)");
}

TEST(Substitute, EmptyIsIdentity) {
  Term t = parse("(+ x y)");
  EXPECT_EQ(substitute(t, {}), t);
}

TEST(Substitute, IteChainGuard) {
  // Q := \g k. g >= k, instantiated at t1 inside ite(Q(t1,k), t1, t2), then k := 5
  Term q_t1 = make(SurfaceOp::Geq, {V("t1"), V("k")});
  Term chain = make(SurfaceOp::Ite, {q_t1, V("t1"), V("t2")});
  Term r = substitute(chain, {{"k", N(5)}});
  // independent walker: rebuild the expected tree by hand
  Term expected = mk_ite(make(SurfaceOp::Geq, {V("t1"), N(5)}), V("t1"), V("t2"));
  EXPECT_EQ(r, expected);
  EXPECT_EQ(to_string(r), "(ite (>= t1 5) t1 t2)");
}

TEST(Substitute, SortMismatch) {
  EXPECT_THROW(substitute(parse("(+ x y)"), {{"x", Term::boolean(true)}}), SortMismatch);
}

TEST(Substitute, Simultaneous) {
  Term r = substitute(parse("(- x y)"), {{"x", Y()}, {"y", X()}});
  EXPECT_EQ(to_string(r), "(- y x)");
}

TEST(Substitute, CompositionProperty) {
  TermGen gen(11, {"x", "y"});
  TermGen rep(12, {"a", "b"});
  for (int i = 0; i < 200; ++i) {
    Term t = gen.bool_term(3);
    Substitution s1{{"x", rep.int_term(2)}};
    Substitution s2{{"a", N(gen.pick(-5, 5))}, {"y", N(gen.pick(-5, 5))}};
    // s1;s2 : apply s1 then s2, i.e. x -> s1(x)s2, plus s2 on the rest
    Substitution composed = s2;
    composed["x"] = substitute(s1["x"], s2);
    ASSERT_EQ(substitute(substitute(t, s1), s2), substitute(t, composed)) << to_string(t);
  }
}

TEST(Simplify, SingleInvocationSolution) {
  Term t = parse("(ite (and (>= k1 k1) (and (>= k1 k2) (or (= k1 k1) (= k1 k2)))) k1 k2)");
  EXPECT_EQ(to_string(simplify(t)), "(ite (>= k1 k2) k1 k2)");
}

TEST(Simplify, FixpointOnVariable) { EXPECT_EQ(simplify(X()), X()); }

TEST(Simplify, SyntaxGuidedSolution) {
  Term t = parse("(ite (and (>= x x) (and (>= x y) (or (= x x) (= x y)))) x y)");
  EXPECT_EQ(to_string(simplify(t)), "(ite (>= x y) x y)");
}

TEST(Simplify, Rules) {
  EXPECT_EQ(to_string(simplify(parse("(+ 1 2)"))), "3");
  EXPECT_EQ(to_string(simplify(parse("(+ x 0)"))), "x");
  EXPECT_EQ(to_string(simplify(parse("(- x x)"))), "0");
  EXPECT_EQ(to_string(simplify(parse("(not (not (<= x y)))"))), "(<= x y)");
  EXPECT_EQ(to_string(simplify(parse("(and true (<= x y))"))), "(<= x y)");
  EXPECT_EQ(to_string(simplify(parse("(or false (<= x y))"))), "(<= x y)");
  EXPECT_EQ(to_string(simplify(parse("(and false (<= x y))"))), "false");
  EXPECT_EQ(to_string(simplify(parse("(ite true x y)"))), "x");
  EXPECT_EQ(to_string(simplify(parse("(ite false x y)"))), "y");
  EXPECT_EQ(to_string(simplify(parse("(ite (<= x y) x x)"))), "x");
  EXPECT_EQ(to_string(simplify(parse("(< 1 2)"))), "true");
  EXPECT_EQ(to_string(simplify(parse("(and (<= x y) (<= x y))"))), "(<= x y)");
}

TEST(Simplify, FlattenAndSortIsCanonical) {
  Term a = simplify(parse("(and (<= x 1) (and (= y 2) (<= y x)))"));
  Term b = simplify(parse("(and (and (<= y x) (<= x 1)) (= y 2))"));
  EXPECT_EQ(a, b);
}

TEST(Simplify, PreservesSemanticsOnRandomTerms) {
  TermGen gen(2024, {"x", "y"});
  for (int i = 0; i < 400; ++i) {
    Term t = gen.pick(0, 1) ? gen.bool_term(4) : gen.int_term(4);
    Term s = simplify(t);
    for (int j = 0; j < 200; ++j) {
      Assignment a = gen.assignment(-10, 10);
      ASSERT_EQ(evaluate(s, a), evaluate(t, a)) << to_string(t) << " ~> " << to_string(s);
    }
  }
}

TEST(Simplify, Idempotent) {
  TermGen gen(99, {"x", "y"});
  for (int i = 0; i < 1000; ++i) {
    Term t = gen.pick(0, 1) ? gen.bool_term(4) : gen.int_term(4);
    Term s = simplify(t);
    ASSERT_EQ(simplify(s), s) << to_string(t) << " ~> " << to_string(s);
  }
}

TEST(TermIO, CanonicalTextRoundTrips) {
  for (const char* text : {"(ite (<= x y) y x)", "(>= x y)", "(< x 3)", "(> (+ x 1) y)", "(=> (<= x 0) (= y (- 2)))",
                           "(and (<= x y) (<= y 3) (not (= x y)))", "(or (< x y) (> x y))", "(- x (- 7))",
                           "(and (and (<= x y) (<= y x)) (= x 0))", "(ite true false (= x y))"}) {
    EXPECT_EQ(to_string(parse(text)), text);
  }
}

TEST(TermIO, ParsePrintRoundTripProperty) {
  TermGen gen(5, {"x", "y"});
  Scope s = int_scope({"x", "y"});
  for (int i = 0; i < 1000; ++i) {
    Term t = gen.pick(0, 1) ? gen.bool_term(4) : gen.int_term(4);
    const std::string text = to_string(t);
    Term back = parse_term(text, s);
    ASSERT_EQ(back, t) << text;
    ASSERT_EQ(to_string(back), text);
  }
}

TEST(TermIO, NormalizesComparisons) {
  Term geq = parse("(>= x y)");
  EXPECT_TRUE(geq.is_app(Op::Leq));
  EXPECT_EQ(geq[0], Y());
  Term lt = parse("(< x y)");
  EXPECT_TRUE(lt.is_app(Op::Not));
  EXPECT_TRUE(lt[0].is_app(Op::Leq));
}

TEST(TermIO, Errors) {
  EXPECT_THROW(parse("(+ x z)"), UnknownSymbol);
  EXPECT_THROW(parse("(+ x (<= x y))"), SortError);
  EXPECT_THROW(parse("(+ x y"), SyntaxError);
  EXPECT_THROW(parse("(frob x y)"), UnknownSymbol);
}

}  // namespace
