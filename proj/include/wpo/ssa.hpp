#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wpo/formula.hpp"
#include "wpo/program.hpp"

namespace wpo {

using EventId = int;

enum class EventKind { Read, Write, Fence };

struct Literal {
    int var = 0;
    bool positive = true;
    auto operator<=>(const Literal&) const = default;
};

// Conjunction of branch literals, sorted and duplicate free.
using Cube = std::vector<Literal>;

Cube cube_with(const Cube& c, Literal l);
Cube cube_union(const Cube& a, const Cube& b);
bool cube_consistent(const Cube& c);
bool cube_subset(const Cube& small, const Cube& big);

struct SymbolicEvent {
    EventId id = 0;
    int tid = 0;
    EventKind kind = EventKind::Read;
    std::string address;  // empty for fences
    std::string value;    // SSA symbol (Int); empty for fences
    FenceKind fence = FenceKind::MFence;
    Cube guard;
    int po_index = 0;

    bool is_init() const { return tid == 0; }
    bool is_read() const { return kind == EventKind::Read; }
    bool is_write() const { return kind == EventKind::Write; }
    bool is_fence() const { return kind == EventKind::Fence; }
};

enum class DepKind { Data, Control };

struct Dependency {
    EventId from = 0;
    EventId to = 0;
    DepKind kind = DepKind::Data;
    int branch_pos = -1;  // control only: po index of the first event after the earliest dependent branch
    bool operator==(const Dependency&) const = default;
};

struct Ses {
    std::vector<SymbolicEvent> events;
    std::vector<std::vector<EventId>> po;  // per thread, in program order
    std::vector<std::pair<EventId, EventId>> po_br;
    std::vector<Dependency> dp;
    std::map<int, int> spawn;  // tid -> number of main-thread events preceding the spawn
    std::vector<std::string> branch_vars;
    std::vector<std::string> addresses;

    const SymbolicEvent& at(EventId e) const { return events.at(static_cast<std::size_t>(e)); }
    Term guard_term(const Cube& c) const;
    Term guard(EventId e) const { return guard_term(at(e).guard); }
    bool po_before(EventId a, EventId b) const;
    std::vector<EventId> accesses(const std::string& addr, EventKind k) const;
    static std::string name(EventId e) { return "e" + std::to_string(e); }
};

struct SsaFormula {
    std::vector<Term> equations;
    Term property;  // exists: the condition; assert: its negation
    std::map<std::pair<int, std::string>, Term> final_regs;
    std::vector<std::string> final_shared;  // addresses whose final value the property reads
    int bitwidth = 32;

    static std::string final_symbol(const std::string& addr) { return addr + "@final"; }
};

struct SsaResult {
    Ses ses;
    SsaFormula formula;
};

// Replaces each loop by nested conditionals plus an unwinding assumption.
Program unroll(const Program& p, int default_bound);

// Requires a loop-free program; dp is filled by compute_deps.
SsaResult build_ssa(const Program& loop_free, int bitwidth = 32);

void compute_deps(Ses& s, const Program& loop_free);

Term expr_to_bool(const Expr& e, const std::map<std::string, Term>& regs);
Term expr_to_int(const Expr& e, const std::map<std::string, Term>& regs);

}  // namespace wpo
