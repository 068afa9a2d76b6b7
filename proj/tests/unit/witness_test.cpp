#include <gtest/gtest.h>

#include "../common.hpp"
#include "wpo/pipeline.hpp"

using namespace wpo;

namespace {

CheckResult run(const std::string& rel, ArchId id, int unwind = 2) {
    CheckOptions o;
    o.model = id;
    o.unwind = unwind;
    return check_program(test::load(rel), o);
}

std::set<std::pair<EventId, EventId>> as_set(const std::map<EventId, EventId>& rf) {
    std::set<std::pair<EventId, EventId>> s;
    for (const auto& [r, w] : rf) s.insert({w, r});
    return s;
}

}  // namespace

TEST(Witness, IriwPowerGraph) {
    CheckResult r = run("litmus/iriw.litmus", ArchId::Power);
    ASSERT_EQ(r.verdict, Verdict::Allowed);
    ASSERT_TRUE(r.witness);
    const ConcreteExecution& x = r.witness->exec;
    // reads of the new values come from the writer threads; the others from init
    EXPECT_EQ(as_set(x.rf), (std::set<std::pair<EventId, EventId>>{{2, 3}, {1, 4}, {5, 6}, {0, 7}}));
    auto fr = x.fr();
    std::set<std::pair<EventId, EventId>> s(fr.begin(), fr.end());
    EXPECT_EQ(s, (std::set<std::pair<EventId, EventId>>{{4, 5}, {7, 2}}));
}

TEST(Witness, SbTsoJson) {
    CheckResult r = run("litmus/sb.litmus", ArchId::TSO);
    ASSERT_TRUE(r.witness);
    nlohmann::json j = render_json(*r.witness);
    for (const char* k : {"test", "model", "verdict", "events", "rf", "ws", "fr", "final"})
        EXPECT_TRUE(j.contains(k)) << k;
    EXPECT_EQ(j["fr"].size(), 2u);
    EXPECT_EQ(j["final"]["P0:r1"], 0);
    nlohmann::json back = nlohmann::json::parse(j.dump());
    EXPECT_EQ(back, j);
    std::string text = render_text(*r.witness);
    EXPECT_NE(text.find("fr:"), std::string::npos);
}

TEST(Witness, EmptyExecutionStub) {
    Witness w;
    w.test = "t";
    w.model = "SC";
    EXPECT_NE(render_text(w).find("no events"), std::string::npos);
}

TEST(Witness, ForbiddenHasNoWitness) {
    CheckResult r = run("litmus/sb.litmus", ArchId::SC);
    EXPECT_EQ(r.verdict, Verdict::Forbidden);
    EXPECT_FALSE(r.witness);
}

TEST(Witness, OnlyInitWhenThreadsDoNothing) {
    Program p = parse_litmus(
        "test g\ninit { x=0; }\nthread P0 { r1 = x; if (r1 == 1) { x = 2; } }\nexists (P0:r1=0)\n");
    CheckOptions o;
    CheckResult r = check_program(p, o);
    ASSERT_TRUE(r.witness);
    for (const auto& e : r.witness->exec.events) EXPECT_FALSE(e.kind == EventKind::Write && e.tid != 0);
}

TEST(Witness, EachReadHasOneSource) {
    for (const char* f : {"litmus/wrc.litmus", "litmus/rwc.litmus", "minic/spin.mc"}) {
        CheckResult r = run(f, ArchId::Power);
        ASSERT_TRUE(r.witness) << f;
        const ConcreteExecution& x = r.witness->exec;
        for (const auto& e : x.events)
            if (e.kind == EventKind::Read) EXPECT_EQ(x.rf.count(e.id), 1u) << f;
        EXPECT_TRUE(check_axioms(x, arch(ArchId::Power)).ok);
    }
}
