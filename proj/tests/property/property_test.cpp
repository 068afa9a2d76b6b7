// Randomised checks over generated litmus programs.
#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "wpo/frontend.hpp"
#include "wpo/oracle.hpp"
#include "wpo/pipeline.hpp"

using namespace wpo;

namespace {

struct GenOptions {
    bool fences = true;
    int max_items = 3;
};

class LitmusGen {
  public:
    explicit LitmusGen(std::uint32_t seed) : rng_(seed) {}

    std::string next(const GenOptions& g, int index) {
        int nthreads = pick(2, 3);
        int naddr = pick(2, 3);
        const char* addrs[] = {"x", "y", "z"};
        std::ostringstream out;
        out << "test gen" << index << "\ninit {";
        for (int a = 0; a < naddr; ++a) out << " " << addrs[a] << "=0;";
        out << " }\n";
        int value = 1, reg = 1;
        std::vector<std::pair<int, int>> regs;  // (thread, register)
        for (int t = 0; t < nthreads; ++t) {
            out << "thread P" << t << " {\n";
            int mine = -1;
            int items = pick(1, g.max_items);
            for (int i = 0; i < items; ++i) {
                const char* a = addrs[pick(0, naddr - 1)];
                int kind = pick(0, 9);
                if (kind <= 3) {
                    out << "  r" << reg << " = " << a << ";\n";
                    regs.push_back({t, reg});
                    mine = reg++;
                } else if (kind <= 6) {
                    out << "  " << a << " = " << value++ << ";\n";
                } else if (kind == 7 && mine > 0) {
                    out << "  " << a << " = r" << mine << ";\n";
                } else if (kind == 8 && mine > 0) {
                    out << "  if (r" << mine << " == 1) {\n    " << a << " = " << value++ << ";\n  }\n";
                } else if (g.fences) {
                    const char* f[] = {"mfence", "sync", "lwsync"};
                    out << "  fence(" << f[pick(0, 2)] << ");\n";
                } else {
                    out << "  " << a << " = " << value++ << ";\n";
                }
            }
            out << "}\n";
        }
        out << "exists (";
        int conds = pick(1, 3);
        std::set<std::string> used;
        for (int c = 0; c < conds; ++c) {
            std::string lhs;
            if (!regs.empty() && pick(0, 3) != 0) {
                auto [t, r] = regs[static_cast<std::size_t>(pick(0, static_cast<int>(regs.size()) - 1))];
                lhs = "P" + std::to_string(t) + ":r" + std::to_string(r);
            } else {
                lhs = addrs[pick(0, naddr - 1)];
            }
            if (!used.insert(lhs).second) continue;
            if (used.size() > 1) out << " /\\ ";
            out << lhs << "=" << pick(0, 2);
        }
        out << ")\n";
        return out.str();
    }

  private:
    int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    std::mt19937 rng_;
};

CheckOptions opts(ArchId m) {
    CheckOptions o;
    o.model = m;
    o.unwind = 1;
    return o;
}

TEST(Property, GeneratedProgramsRoundTrip) {
    LitmusGen gen(7);
    for (int i = 0; i < 100; ++i) {
        std::string src = gen.next({}, i);
        Program p = parse_litmus(src);
        EXPECT_EQ(parse_litmus(print_litmus(p)), p) << src;
    }
}

TEST(Property, EncoderMatchesOracleOnGeneratedPrograms) {
    LitmusGen gen(11);
    int seen[2] = {0, 0};
    for (int i = 0; i < 40; ++i) {
        std::string src = gen.next({}, i);
        Program p = parse_litmus(src);
        for (ArchId m : all_archs()) {
            CheckOptions o = opts(m);
            Verdict enc = check_program(p, o).verdict;
            Verdict orc = oracle_verdict(p, make_arch(o)).verdict;
            EXPECT_EQ(enc, orc) << to_string(m) << "\n" << src;
            ++seen[reachable(enc) ? 1 : 0];
        }
    }
    EXPECT_GT(seen[0], 10);
    EXPECT_GT(seen[1], 10);
}

TEST(Property, ReachabilityGrowsWithWeakerModels) {
    const std::pair<ArchId, ArchId> weaker[] = {
        {ArchId::SC, ArchId::TSO}, {ArchId::TSO, ArchId::PSO}, {ArchId::PSO, ArchId::RMO}, {ArchId::TSO, ArchId::Power}};
    LitmusGen gen(23);
    for (int i = 0; i < 40; ++i) {
        std::string src = gen.next({.fences = false, .max_items = 3}, i);
        Program p = parse_litmus(src);
        std::map<ArchId, bool> r;
        for (ArchId m : all_archs()) r[m] = reachable(check_program(p, opts(m)).verdict);
        for (auto [strong, weak] : weaker)
            EXPECT_TRUE(!r[strong] || r[weak]) << to_string(strong) << " vs " << to_string(weak) << "\n" << src;
    }
}

}  // namespace
