#include <gtest/gtest.h>

#include <regex>

#include "../common.hpp"
#include "wpo/encoder.hpp"

using namespace wpo;

namespace {

struct Enc {
    SsaResult ssa;
    ConstraintSet cs;
};

Enc enc(const Program& p, ArchId id, int unwind = 2) {
    Enc e{build_ssa(unroll(p, unwind)), {}};
    e.cs = build_pord(e.ssa.ses, e.ssa.formula, arch(id));
    return e;
}

std::set<std::string> smt_set(const std::vector<Term>& v) {
    std::set<std::string> out;
    for (const auto& t : v) out.insert(to_smt(t));
    return out;
}

bool contains(const std::vector<Term>& v, const std::string& s) { return smt_set(v).count(s) > 0; }

}  // namespace

TEST(ReadFrom, IriwRfSomeAndValue) {
    Enc e = enc(test::load("litmus/iriw.litmus"), ArchId::SC);
    EXPECT_TRUE(contains(e.cs.wf, "(or rf.e0.e3 rf.e2.e3)"));
    EXPECT_TRUE(contains(e.cs.wf, "(or rf.e0.e7 rf.e2.e7)"));
    EXPECT_TRUE(contains(e.cs.wf, "(=> rf.e0.e3 (= x@2 x@0))"));
    EXPECT_EQ(e.cs.rf_selectors.size(), 8u);
    EXPECT_EQ(e.cs.grf.size(), 8u);
}

TEST(ReadFrom, PowerHasNoGrf) {
    Enc e = enc(test::load("litmus/iriw.litmus"), ArchId::Power);
    EXPECT_TRUE(e.cs.grf.empty());
}

TEST(ReadFrom, TsoInternalRfNotGlobal) {
    Enc e = enc(test::load("litmus/sb+rfi.litmus"), ArchId::TSO);
    for (const auto& t : e.cs.grf) EXPECT_EQ(to_smt(t).find("rf.e2.e3 "), std::string::npos);
}

TEST(WriteSerialisation, IriwInitWritesFirst) {
    Enc e = enc(test::load("litmus/iriw.litmus"), ArchId::SC);
    EXPECT_TRUE(contains(e.cs.ws, "(< ghb.e0 ghb.e2)"));
    EXPECT_TRUE(contains(e.cs.ws, "(< ghb.e1 ghb.e5)"));
    EXPECT_TRUE(e.cs.ws_selectors.empty());
}

TEST(WriteSerialisation, ThreeCrossThreadWrites) {
    Program p = parse_litmus(
        "test w3\ninit { x=0; }\nthread P0 { x = 1; }\nthread P1 { x = 2; }\nthread P2 { x = 3; }\nexists (x=1)\n");
    Enc e = enc(p, ArchId::SC);
    EXPECT_EQ(e.cs.ws_selectors.size(), 3u);
}

TEST(WriteSerialisation, SingleWriteNoConstraints) {
    Program p = parse_litmus("test one\ninit { x=0; }\nthread P0 { r1 = x; }\nexists (P0:r1=0)\n");
    Enc e = enc(p, ArchId::SC);
    EXPECT_TRUE(e.cs.ws.empty());
    EXPECT_TRUE(e.cs.fr.empty());
}

TEST(FromRead, IriwAddressX) {
    Enc e = enc(test::load("litmus/iriw.litmus"), ArchId::SC);
    EXPECT_TRUE(contains(e.cs.fr, "(=> rf.e0.e3 (< ghb.e3 ghb.e2))"));
    EXPECT_TRUE(contains(e.cs.fr, "(=> rf.e0.e7 (< ghb.e7 ghb.e2))"));
}

TEST(Ppo, IriwSc) {
    Enc e = enc(test::load("litmus/iriw.litmus"), ArchId::SC);
    EXPECT_EQ(smt_set(e.cs.ppo),
              (std::set<std::string>{"(< ghb.e0 ghb.e1)", "(< ghb.e3 ghb.e4)", "(< ghb.e6 ghb.e7)"}));
}

TEST(Ppo, IriwWeakModelsHaveNoReadRead) {
    for (ArchId id : {ArchId::RMO, ArchId::Power}) {
        Enc e = enc(test::load("litmus/iriw.litmus"), id);
        EXPECT_FALSE(contains(e.cs.ppo, "(< ghb.e3 ghb.e4)"));
        EXPECT_FALSE(contains(e.cs.ppo, "(< ghb.e6 ghb.e7)"));
    }
}

TEST(Ppo, StraightLineSkipsTransitivePair) {
    Program p = parse_litmus("test s\ninit { x=0; y=0; z=0; }\nthread P0 { x = 1; y = 1; z = 1; }\nexists (x=1)\n");
    Enc e = enc(p, ArchId::SC);
    std::set<std::string> s = smt_set(e.cs.ppo);
    EXPECT_TRUE(s.count("(< ghb.e3 ghb.e4)"));
    EXPECT_TRUE(s.count("(< ghb.e4 ghb.e5)"));
    EXPECT_FALSE(s.count("(< ghb.e3 ghb.e5)"));
}

TEST(Fences, IriwSyncOnPower) {
    Enc e = enc(test::load("litmus/iriw+syncs.litmus"), ArchId::Power);
    // P1: e3 read x, e4 sync, e5 read y
    EXPECT_TRUE(contains(e.cs.ab, "(< ghb.e3 ghb.e4)"));
    EXPECT_TRUE(contains(e.cs.ab, "(< ghb.e4 ghb.e5)"));
    EXPECT_TRUE(contains(e.cs.ab, "(=> rf.e0.e3 (< ghb.e0 ghb.e4))"));
    EXPECT_TRUE(contains(e.cs.ab, "(=> rf.e2.e3 (< ghb.e2 ghb.e4))"));
}

TEST(Fences, IriwLwsyncUsesSplitClocks) {
    Enc e = enc(test::load("litmus/iriw+lwsyncs.litmus"), ArchId::Power);
    EXPECT_TRUE(contains(e.cs.ab, "(< ghb.e3 ghb.e4.r)"));
    EXPECT_TRUE(contains(e.cs.ab, "(< ghb.e4.r ghb.e5)"));
    EXPECT_TRUE(contains(e.cs.ab, "(=> rf.e0.e3 (< ghb.e0 ghb.e4.w))"));
    EXPECT_TRUE(contains(e.cs.ab, "(=> rf.e2.e3 (< ghb.e2 ghb.e4.w))"));
    EXPECT_FALSE(contains(e.cs.ab, "(< ghb.e4.w ghb.e5)"));
}

TEST(Fences, NoCumulativityOnStoreAtomicModels) {
    Enc e = enc(test::load("litmus/iriw+syncs.litmus"), ArchId::TSO);
    for (const auto& t : e.cs.ab) EXPECT_EQ(to_smt(t).find("rf."), std::string::npos);
}

TEST(Fences, GuardedFenceIsVacuousWhenFalse) {
    Program p = parse_litmus(
        "test g\ninit { x=0; y=0; }\nthread P0 { r1 = x; if (r1 == 1) { fence(sync); } r2 = y; }\nexists (P0:r2=0)\n");
    Enc e = enc(p, ArchId::Power);
    ASSERT_FALSE(e.cs.ab.empty());
    Valuation v;
    v.bools["t1.b0"] = false;
    v.ints["ghb.e2"] = 5;
    v.ints["ghb.e3"] = 0;
    v.ints["ghb.e4"] = -5;
    for (const auto& t : e.cs.ab) {
        std::string s = to_smt(t);
        if (s.find("rf.") != std::string::npos) continue;
        EXPECT_EQ(eval_bool(t, v), true) << s;
    }
}

TEST(Uniproc, SameThreadWriteThenRead) {
    Program p = parse_litmus("test u\ninit { x=0; }\nthread P0 { x = 1; r1 = x; }\nexists (P0:r1=0)\n");
    Enc e = enc(p, ArchId::Power);
    EXPECT_TRUE(contains(e.cs.uniproc, "(< uni.e1 uni.e2)"));
}

TEST(Uniproc, NoPoLocInSbOrIriw) {
    for (const char* f : {"litmus/sb.litmus", "litmus/iriw.litmus"}) {
        Enc e = enc(test::load(f), ArchId::SC);
        EXPECT_TRUE(e.cs.uniproc.empty()) << f;
    }
}

TEST(Thin, DependenciesBecomeThinEdges) {
    Enc e = enc(test::load("litmus/lb+datas.litmus"), ArchId::Power);
    EXPECT_TRUE(contains(e.cs.thin, "(< thin.e2 thin.e3)"));
    Enc plain = enc(test::load("litmus/lb.litmus"), ArchId::Power);
    for (const auto& t : plain.cs.thin) EXPECT_NE(to_smt(t).find("rf."), std::string::npos);
}

TEST(Pord, EmptyProgram) {
    Program p = parse_minic("thread { int r; r = 1; }\nassert(1 == 1);\n", "empty");
    Enc e = enc(p, ArchId::SC);
    EXPECT_EQ(count_constraints(e.cs).total(), 0u);
}

TEST(Pord, FamiliesNeverMix) {
    std::regex clock(R"((ghb|uni|thin)\.e\d+)");
    for (const auto& f : test::corpus_files("litmus")) {
        for (ArchId id : all_archs()) {
            Enc e = enc(load_program_file(f), id);
            for (const auto& t : e.cs.all()) {
                std::string s = to_smt(t);
                std::set<std::string> fams;
                for (auto it = std::sregex_iterator(s.begin(), s.end(), clock); it != std::sregex_iterator(); ++it)
                    fams.insert((*it)[1]);
                EXPECT_LE(fams.size(), 1u) << f << " " << to_string(id) << ": " << s;
            }
        }
    }
}

TEST(Pord, PowerOmitsGrfAndReadReadPpoForIriw) {
    Enc sc = enc(test::load("litmus/iriw.litmus"), ArchId::SC);
    Enc pw = enc(test::load("litmus/iriw.litmus"), ArchId::Power);
    ConstraintCounts a = count_constraints(sc.cs), b = count_constraints(pw.cs);
    EXPECT_EQ(a.total() - b.total(), a.grf + a.ppo - b.ppo);
    EXPECT_EQ(b.grf, 0u);
}
