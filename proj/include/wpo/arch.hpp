#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wpo/program.hpp"
#include "wpo/ssa.hpp"

namespace wpo {

enum class ArchId { SC, TSO, PSO, RMO, Power };

struct FenceSpec {
    bool orders_ww = true, orders_wr = true, orders_rw = true, orders_rr = true;
    bool cumulative = false;
    bool split_clock = false;  // separate read/write clocks (lwsync)
    bool in_ppo_only = false;  // isync: only acts through the ppo table

    bool orders(EventKind a, EventKind b) const;
};

enum class PpoRule { Relaxed, Kept, KeptWithIsync };

struct PairFacts {
    EventKind first = EventKind::Read;
    EventKind second = EventKind::Read;
    bool same_address = false;
    bool data_dep = false;
    bool control_dep = false;
};

struct Architecture {
    ArchId id = ArchId::SC;
    std::string name;
    bool keep_ww = true, keep_wr = true, keep_rw = true, keep_rr = true;
    bool deps_only = false;     // RMO/Power: only dependency-backed pairs survive
    bool isync_ctrl = false;    // control dependency + isync keeps read targets
    bool rfe_safe = true;
    bool rfi_safe = true;

    PpoRule ppo_rule(const PairFacts& f) const;
    FenceSpec fence(FenceKind k) const;

    bool lwsync_cumulative = true;
};

Architecture arch(ArchId id);
std::optional<ArchId> arch_from_string(std::string_view s);
std::string_view to_string(ArchId id);
const std::vector<ArchId>& all_archs();

// Condition under which (e1,e2) in po is preserved: FALSE when relaxed.
// Returns a disjunction of cubes (empty vector = FALSE).
std::vector<Cube> not_relax_cubes(const Architecture& a, const Ses& s, EventId e1, EventId e2);
Term not_relax(const Architecture& a, const Ses& s, EventId e1, EventId e2);

// Static facts about a po pair, shared by the encoder and the oracle.
PairFacts pair_facts(const Ses& s, EventId e1, EventId e2);
// isync fences able to back a control dependency from e1 to e2.
std::vector<EventId> isyncs_between(const Ses& s, EventId e1, EventId e2);

}  // namespace wpo
