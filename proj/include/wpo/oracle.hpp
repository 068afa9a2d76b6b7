#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpo/arch.hpp"
#include "wpo/program.hpp"
#include "wpo/ssa.hpp"

namespace wpo {

struct ConcreteEvent {
    EventId id = 0;
    int tid = 0;
    EventKind kind = EventKind::Read;
    std::string address;
    std::int64_t value = 0;
    FenceKind fence = FenceKind::MFence;
    int po_index = 0;
};

// Executed events only.
struct ConcreteExecution {
    std::vector<ConcreteEvent> events;
    std::map<EventId, EventId> rf;                   // read -> write
    std::map<std::string, std::vector<EventId>> ws;  // per address, coherence order
    std::vector<Dependency> dp;
    std::map<std::pair<int, std::string>, std::int64_t> final_regs;
    std::map<std::string, std::int64_t> final_shared;

    const ConcreteEvent* find(EventId e) const;
    std::vector<std::pair<EventId, EventId>> fr() const;
};

enum class Axiom { Uniproc, Thin, Consensus };
std::string_view to_string(Axiom a);

struct AxiomResult {
    bool ok = true;
    std::optional<Axiom> violated;
    std::vector<EventId> cycle;
};

AxiomResult check_axioms(const ConcreteExecution& e, const Architecture& a);

// Structural sanity: every read has one rf source at its address, ws covers exactly the
// executed writes with the init write first.
std::optional<std::string> well_formed(const ConcreteExecution& e);

struct OracleOptions {
    int event_cap = 14;
    int bitwidth = 32;
};

struct OracleResult {
    Verdict verdict = Verdict::Forbidden;
    std::optional<ConcreteExecution> witness;
    std::size_t executions = 0;  // axiom-valid executions examined
};

// Enumerates rf maps, guard outcomes and coherence orders of a loop-free program.
OracleResult oracle_verdict(const Program& loop_free, const Architecture& a, const OracleOptions& o = {});

// Explores every SC interleaving; the cap counts shared loads and stores outside main.
Verdict sc_interleave_verdict(const Program& loop_free, int access_cap = 10, int bitwidth = 32);

}  // namespace wpo
