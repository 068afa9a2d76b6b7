#include <gtest/gtest.h>

#include "../common.hpp"
#include "wpo/ssa.hpp"

using namespace wpo;

namespace {

SsaResult ssa_of(const Program& p, int unwind = 2) { return build_ssa(unroll(p, unwind)); }

bool has_equation(const SsaResult& r, const std::string& smt) {
    for (const auto& e : r.formula.equations)
        if (to_smt(e) == smt) return true;
    return false;
}

bool has_dep(const Ses& s, EventId a, EventId b, DepKind k) {
    for (const auto& d : s.dp)
        if (d.from == a && d.to == b && d.kind == k) return true;
    return false;
}

}  // namespace

TEST(Unroll, FibonacciBodiesCopied) {
    Program p = unroll(test::load("programs/fib.mc"), 2);
    EXPECT_FALSE(p.has_loops());
    // 5 copies of 3 accesses per worker
    EXPECT_EQ(count_accesses(p.threads[1].body), 15);
    EXPECT_EQ(count_accesses(p.threads[2].body), 15);
}

TEST(Unroll, ZeroBoundRemovesBody) {
    Program p = parse_minic(
        "shared int x = 0;\nthread { int k = 0; while (k < 3) @unwind(0) { x = 1; } }\nassert(x == 0);\n");
    Program u = unroll(p, 2);
    EXPECT_EQ(count_accesses(u.threads[1].body), 0);
}

TEST(Unroll, StraightLineUnchanged) {
    Program p = test::load("litmus/sb.litmus");
    EXPECT_EQ(unroll(p, 3), p);
}

TEST(Ssa, IriwEquationsAndEvents) {
    SsaResult r = ssa_of(test::load("litmus/iriw.litmus"));
    const Ses& s = r.ses;
    ASSERT_EQ(s.events.size(), 8u);
    EXPECT_TRUE(has_equation(r, "(= x@0 0)"));
    EXPECT_TRUE(has_equation(r, "(= y@0 0)"));
    EXPECT_TRUE(has_equation(r, "(= x@1 1)"));
    EXPECT_TRUE(has_equation(r, "(= t2.r1@1 x@2)"));
    EXPECT_TRUE(has_equation(r, "(= t4.r4@1 x@3)"));
    // init writes po-ordered on thread 0
    EXPECT_EQ(s.po[0], (std::vector<EventId>{0, 1}));
    EXPECT_TRUE(s.po_before(0, 1));
    EXPECT_TRUE(s.dp.empty());
    std::set<std::string> values;
    for (const auto& e : s.events) values.insert(e.value);
    EXPECT_EQ(values.size(), s.events.size());
}

TEST(Ssa, FreshIndexPerSharedOccurrence) {
    SsaResult r = ssa_of(parse_minic("shared int x = 0;\nthread { x = x + 1; x = x + 1; }\nassert(x == 2);\n"));
    const Ses& s = r.ses;
    ASSERT_EQ(s.events.size(), 5u);
    // read x@1, write x@2, read x@3, write x@4: the second read is not tied to the first write
    EXPECT_EQ(s.at(1).value, "x@1");
    EXPECT_EQ(s.at(3).value, "x@3");
    EXPECT_FALSE(has_equation(r, "(= x@3 x@2)"));
}

TEST(Ssa, SingleStore) {
    SsaResult r = ssa_of(parse_minic("shared int x = 0;\nthread { x = 1; }\nassert(x == 1);\n"));
    ASSERT_EQ(r.ses.events.size(), 2u);
    EXPECT_TRUE(r.ses.at(1).is_write());
    EXPECT_TRUE(has_equation(r, "(= x@1 1)"));
}

TEST(Ssa, BranchWritesAreGuarded) {
    SsaResult r = ssa_of(test::load("minic/branch_write.mc"));
    std::vector<const SymbolicEvent*> wx;
    for (const auto& e : r.ses.events)
        if (e.tid == 1 && e.is_write() && e.address == "x") wx.push_back(&e);
    ASSERT_EQ(wx.size(), 2u);
    ASSERT_EQ(wx[0]->guard.size(), 1u);
    ASSERT_EQ(wx[1]->guard.size(), 1u);
    EXPECT_EQ(wx[0]->guard[0].var, wx[1]->guard[0].var);
    EXPECT_NE(wx[0]->guard[0].positive, wx[1]->guard[0].positive);
    // different branches are not related by po-br
    for (const auto& [a, b] : r.ses.po_br) EXPECT_FALSE(a == wx[0]->id && b == wx[1]->id);
}

TEST(Ssa, PoBrSkipsBranchesButKeepsJoin) {
    SsaResult r = ssa_of(test::load("minic/branch_write.mc"));
    const Ses& s = r.ses;
    const auto& po = s.po[1];
    ASSERT_EQ(po.size(), 3u);  // read y, write x (then), write x (else)
    EXPECT_TRUE(s.po_before(po[0], po[1]));
    EXPECT_TRUE(s.po_before(po[0], po[2]));
}

TEST(Deps, DataDependency) {
    Program p = parse_litmus("test d\ninit { x=0; y=0; }\nthread P0 { r1 = x; y = r1; }\nexists (y=1)\n");
    SsaResult r = ssa_of(p);
    EXPECT_TRUE(has_dep(r.ses, 2, 3, DepKind::Data));
}

TEST(Deps, ControlDependency) {
    Program p = parse_litmus("test c\ninit { x=0; y=0; }\nthread P0 { r1 = x; if (r1 == 1) { y = 1; } }\nexists (y=1)\n");
    SsaResult r = ssa_of(p);
    EXPECT_TRUE(has_dep(r.ses, 2, 3, DepKind::Control));
    EXPECT_FALSE(has_dep(r.ses, 2, 3, DepKind::Data));
}

TEST(Deps, ControlReachesCodeAfterTheBranch) {
    Program p = test::load("minic/guard_if.mc");
    SsaResult r = ssa_of(p);
    const auto& po = r.ses.po[1];  // read x, write y (guarded), write z
    ASSERT_EQ(po.size(), 3u);
    EXPECT_TRUE(has_dep(r.ses, po[0], po[1], DepKind::Control));
    EXPECT_TRUE(has_dep(r.ses, po[0], po[2], DepKind::Control));
    EXPECT_TRUE(r.ses.at(po[2]).guard.empty());
}

TEST(Deps, DependencyEndpointsWellFormed) {
    for (const auto& f : test::corpus_files("litmus")) {
        SsaResult r = ssa_of(load_program_file(f));
        for (const auto& d : r.ses.dp) {
            EXPECT_TRUE(r.ses.at(d.from).is_read()) << f;
            EXPECT_EQ(r.ses.at(d.from).tid, r.ses.at(d.to).tid) << f;
            EXPECT_TRUE(r.ses.po_before(d.from, d.to) || r.ses.at(d.from).po_index < r.ses.at(d.to).po_index) << f;
        }
    }
}
