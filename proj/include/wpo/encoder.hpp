#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "wpo/arch.hpp"
#include "wpo/smt.hpp"
#include "wpo/ssa.hpp"

namespace wpo {

enum class ClockFamily { Ghb, Uniproc, Thin };
enum class ClockSide { Single, Read, Write };

std::string clock_name(EventId e, ClockFamily f, ClockSide side = ClockSide::Single);

struct RfSelector {
    EventId write = 0;
    EventId read = 0;
    std::string name;
};

// true: `first` is coherence-before `second`.
struct WsSelector {
    EventId first = 0;
    EventId second = 0;
    std::string name;
};

struct ConstraintSet {
    std::vector<Term> wf, rf, grf, ws, fr, ppo, ab, uniproc, thin, final_values;
    std::vector<RfSelector> rf_selectors;
    std::vector<WsSelector> ws_selectors;

    const RfSelector* rf_selector(EventId w, EventId r) const;
    std::vector<const RfSelector*> candidates(EventId r) const;
    std::vector<Term> all() const;
};

struct ConstraintCounts {
    std::size_t rf_candidates = 0;
    std::size_t ws_selectors = 0;
    std::size_t wf = 0, rf = 0, grf = 0, ws = 0, fr = 0, ppo = 0, ab = 0, uniproc = 0, thin = 0, final_values = 0;

    std::size_t total() const { return wf + rf + grf + ws + fr + ppo + ab + uniproc + thin + final_values; }
    // Relation with the largest share; read-from groups wf, rf and grf.
    std::pair<std::string, std::size_t> most_costly() const;
};

ConstraintCounts count_constraints(const ConstraintSet& cs);

// Individual encoding steps. encode_rf must run before the steps that use rf selectors,
// encode_ws before encode_fr and encode_final_values.
void encode_rf(const Ses& s, const Architecture& a, ConstraintSet& cs);
void encode_ws(const Ses& s, const Architecture& a, ConstraintSet& cs);
void encode_fr(const Ses& s, const Architecture& a, ConstraintSet& cs);
void encode_ppo(const Ses& s, const Architecture& a, ConstraintSet& cs);
void encode_fences(const Ses& s, const Architecture& a, ConstraintSet& cs);
void encode_uniproc(const Ses& s, const Architecture& a, ConstraintSet& cs);
void encode_thin(const Ses& s, const Architecture& a, ConstraintSet& cs);
void encode_final_values(const Ses& s, const SsaFormula& f, ConstraintSet& cs);

ConstraintSet build_pord(const Ses& s, const SsaFormula& f, const Architecture& a);

// GHB clock constraint between two events of which at most one is a fence.
Term ghb_constraint(const Ses& s, EventId x, EventId y);
Term family_constraint(const Ses& s, EventId x, EventId y, ClockFamily fam);

// Coherence order literal: TRUE/FALSE for init and same-thread pairs, a selector otherwise.
Term ws_before(const Ses& s, const ConstraintSet& cs, EventId w1, EventId w2);

Query make_query(const SsaFormula& f, const ConstraintSet& cs);

}  // namespace wpo
