#include <gtest/gtest.h>

#include "wpo/formula.hpp"

using namespace wpo;

TEST(Formula, ConstantFolding) {
    Term a = bool_var("a");
    EXPECT_TRUE(is_true(t_and(t_true(), t_true())));
    EXPECT_TRUE(is_false(t_and(a, t_false())));
    EXPECT_EQ(t_and(a, t_true()), a);
    EXPECT_TRUE(is_true(t_or(a, t_true())));
    EXPECT_TRUE(is_true(implies(t_false(), a)));
    EXPECT_EQ(to_smt(t_and(t_and(a, bool_var("b")), bool_var("c"))), "(and a b c)");
    EXPECT_EQ(to_smt(add(int_var("x@0"), int_const(-2))), "(+ x@0 (- 2))");
}

TEST(Formula, Evaluation) {
    Valuation v;
    v.ints["x"] = 3;
    v.bools["b"] = true;
    EXPECT_EQ(eval_int(add(int_var("x"), int_const(4)), v), 7);
    EXPECT_EQ(eval_bool(t_and(bool_var("b"), lt(int_var("x"), int_const(4))), v), true);
    EXPECT_EQ(eval_bool(bool_var("missing"), v), std::nullopt);
    EXPECT_EQ(eval_int(ite(bool_var("b"), int_const(1), int_const(2)), v), 1);
}

TEST(Formula, SymbolsInFirstOccurrenceOrder) {
    std::vector<Symbol> out;
    std::set<std::string> seen;
    collect_symbols(t_and(lt(int_var("b"), int_var("a")), bool_var("s")), out, seen);
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out[0].name, "b");
    EXPECT_EQ(out[2].sort, Sort::Bool);
}

TEST(ClockConstraint, GuardsTrueGiveUnguardedLess) {
    Term c = clock_constraint({"a", "ghb.a", t_true()}, {"b", "ghb.b", t_true()});
    EXPECT_EQ(to_smt(c), "(< ghb.a ghb.b)");
}

TEST(ClockConstraint, FalseGuardIsVacuous) {
    EXPECT_TRUE(is_true(clock_constraint({"a", "ghb.a", t_false()}, {"b", "ghb.b", t_true()})));
}

TEST(ClockConstraint, GuardedImplication) {
    Term c = clock_constraint({"a", "ghb.a", bool_var("b1")}, {"b", "ghb.b", bool_var("b2")});
    EXPECT_EQ(to_smt(c), "(=> (and b1 b2) (< ghb.a ghb.b))");
}

TEST(ClockConstraint, SameEventRejected) {
    EXPECT_ANY_THROW(clock_constraint({"a", "ghb.a", t_true()}, {"a", "ghb.a", t_true()}));
}
