#include "wpo/arch.hpp"

#include <algorithm>

#include "wpo/error.hpp"

namespace wpo {

bool FenceSpec::orders(EventKind a, EventKind b) const {
    bool aw = a == EventKind::Write, bw = b == EventKind::Write;
    if (aw && bw) return orders_ww;
    if (aw) return orders_wr;
    if (bw) return orders_rw;
    return orders_rr;
}

PpoRule Architecture::ppo_rule(const PairFacts& f) const {
    bool w1 = f.first == EventKind::Write, w2 = f.second == EventKind::Write;
    // internal ws and fr are always safe
    if (f.same_address && w2) return PpoRule::Kept;
    if (!deps_only) {
        if (w1 && w2) return keep_ww ? PpoRule::Kept : PpoRule::Relaxed;
        if (w1) return keep_wr ? PpoRule::Kept : PpoRule::Relaxed;
        if (w2) return keep_rw ? PpoRule::Kept : PpoRule::Relaxed;
        return keep_rr ? PpoRule::Kept : PpoRule::Relaxed;
    }
    if (w1) return PpoRule::Relaxed;
    if (f.data_dep) return PpoRule::Kept;
    if (f.control_dep && w2) return PpoRule::Kept;
    if (f.control_dep && isync_ctrl) return PpoRule::KeptWithIsync;
    return PpoRule::Relaxed;
}

FenceSpec Architecture::fence(FenceKind k) const {
    FenceSpec f;
    switch (k) {
        case FenceKind::MFence:
        case FenceKind::Sync: f.cumulative = true; break;
        case FenceKind::LwSync:
            f.orders_wr = false;
            f.cumulative = lwsync_cumulative;
            f.split_clock = true;
            break;
        case FenceKind::ISync:
            f.orders_ww = f.orders_wr = f.orders_rw = f.orders_rr = false;
            f.in_ppo_only = true;
            break;
    }
    return f;
}

Architecture arch(ArchId id) {
    Architecture a;
    a.id = id;
    a.name = std::string(to_string(id));
    switch (id) {
        case ArchId::SC: break;
        case ArchId::TSO:
            a.keep_wr = false;
            a.rfi_safe = false;
            break;
        case ArchId::PSO:
            a.keep_wr = a.keep_ww = false;
            a.rfi_safe = false;
            break;
        case ArchId::RMO:
            a.keep_wr = a.keep_ww = a.keep_rw = a.keep_rr = false;
            a.deps_only = true;
            a.rfi_safe = false;
            break;
        case ArchId::Power:
            a.keep_wr = a.keep_ww = a.keep_rw = a.keep_rr = false;
            a.deps_only = true;
            a.isync_ctrl = true;
            a.rfi_safe = false;
            a.rfe_safe = false;
            break;
    }
    return a;
}

std::optional<ArchId> arch_from_string(std::string_view s) {
    std::string l(s);
    std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (l == "sc") return ArchId::SC;
    if (l == "tso" || l == "x86") return ArchId::TSO;
    if (l == "pso") return ArchId::PSO;
    if (l == "rmo") return ArchId::RMO;
    if (l == "power" || l == "ppc") return ArchId::Power;
    return std::nullopt;
}

std::string_view to_string(ArchId id) {
    switch (id) {
        case ArchId::SC: return "SC";
        case ArchId::TSO: return "TSO";
        case ArchId::PSO: return "PSO";
        case ArchId::RMO: return "RMO";
        case ArchId::Power: return "Power";
    }
    return "?";
}

const std::vector<ArchId>& all_archs() {
    static const std::vector<ArchId> v = {ArchId::SC, ArchId::TSO, ArchId::PSO, ArchId::RMO, ArchId::Power};
    return v;
}

PairFacts pair_facts(const Ses& s, EventId e1, EventId e2) {
    const auto& a = s.at(e1);
    const auto& b = s.at(e2);
    PairFacts f;
    f.first = a.kind;
    f.second = b.kind;
    f.same_address = a.address == b.address;
    for (const auto& d : s.dp) {
        if (d.from != e1 || d.to != e2) continue;
        if (d.kind == DepKind::Data) f.data_dep = true;
        else f.control_dep = true;
    }
    return f;
}

std::vector<EventId> isyncs_between(const Ses& s, EventId e1, EventId e2) {
    int branch = -1;
    for (const auto& d : s.dp)
        if (d.from == e1 && d.to == e2 && d.kind == DepKind::Control)
            branch = branch < 0 ? d.branch_pos : std::min(branch, d.branch_pos);
    std::vector<EventId> out;
    if (branch < 0) return out;
    const auto& b = s.at(e2);
    for (EventId f : s.po.at(static_cast<std::size_t>(b.tid))) {
        const auto& ev = s.at(f);
        if (ev.is_fence() && ev.fence == FenceKind::ISync && ev.po_index >= branch && ev.po_index < b.po_index)
            out.push_back(f);
    }
    return out;
}

std::vector<Cube> not_relax_cubes(const Architecture& a, const Ses& s, EventId e1, EventId e2) {
    const auto& x = s.at(e1);
    const auto& y = s.at(e2);
    if (x.is_fence() || y.is_fence()) throw Error("not_relax on a fence event");
    if (!s.po_before(e1, e2)) throw Error("not_relax on a pair outside program order");
    Cube both = cube_union(x.guard, y.guard);
    switch (a.ppo_rule(pair_facts(s, e1, e2))) {
        case PpoRule::Relaxed: return {};
        case PpoRule::Kept: return {both};
        case PpoRule::KeptWithIsync: {
            std::vector<Cube> out;
            for (EventId f : isyncs_between(s, e1, e2)) out.push_back(cube_union(both, s.at(f).guard));
            return out;
        }
    }
    return {};
}

Term not_relax(const Architecture& a, const Ses& s, EventId e1, EventId e2) {
    std::vector<Term> ds;
    for (const auto& c : not_relax_cubes(a, s, e1, e2)) ds.push_back(s.guard_term(c));
    return t_or(std::move(ds));
}

}  // namespace wpo
