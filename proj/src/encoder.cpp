#include "wpo/encoder.hpp"

#include <algorithm>
#include <set>

#include "wpo/error.hpp"

namespace wpo {

std::string clock_name(EventId e, ClockFamily f, ClockSide side) {
    std::string fam = f == ClockFamily::Ghb ? "ghb" : f == ClockFamily::Uniproc ? "uni" : "thin";
    std::string n = fam + "." + Ses::name(e);
    if (side == ClockSide::Read) n += ".r";
    if (side == ClockSide::Write) n += ".w";
    return n;
}

const RfSelector* ConstraintSet::rf_selector(EventId w, EventId r) const {
    for (const auto& s : rf_selectors)
        if (s.write == w && s.read == r) return &s;
    return nullptr;
}

std::vector<const RfSelector*> ConstraintSet::candidates(EventId r) const {
    std::vector<const RfSelector*> out;
    for (const auto& s : rf_selectors)
        if (s.read == r) out.push_back(&s);
    return out;
}

std::vector<Term> ConstraintSet::all() const {
    std::vector<Term> out;
    for (const auto* v : {&wf, &rf, &grf, &ws, &fr, &ppo, &ab, &uniproc, &thin, &final_values})
        out.insert(out.end(), v->begin(), v->end());
    return out;
}

std::pair<std::string, std::size_t> ConstraintCounts::most_costly() const {
    std::vector<std::pair<std::string, std::size_t>> v = {
        {"rf", wf + rf + grf}, {"ws", ws}, {"fr", fr}, {"ppo", ppo}, {"ab", ab}, {"uniproc", uniproc}, {"thin", thin}};
    auto it = std::max_element(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    return *it;
}

ConstraintCounts count_constraints(const ConstraintSet& cs) {
    ConstraintCounts c;
    c.rf_candidates = cs.rf_selectors.size();
    c.ws_selectors = cs.ws_selectors.size();
    c.wf = cs.wf.size();
    c.rf = cs.rf.size();
    c.grf = cs.grf.size();
    c.ws = cs.ws.size();
    c.fr = cs.fr.size();
    c.ppo = cs.ppo.size();
    c.ab = cs.ab.size();
    c.uniproc = cs.uniproc.size();
    c.thin = cs.thin.size();
    c.final_values = cs.final_values.size();
    return c;
}

namespace {

ClockEnd end(const Ses& s, EventId e, ClockFamily f, ClockSide side = ClockSide::Single) {
    return {Ses::name(e), clock_name(e, f, side), s.guard(e)};
}

bool split(const Ses& s, EventId e) {
    const auto& ev = s.at(e);
    return ev.is_fence() && ev.fence == FenceKind::LwSync;
}

std::vector<std::vector<EventId>> by_thread_non_fence(const Ses& s) {
    std::vector<std::vector<EventId>> out(s.po.size());
    for (std::size_t t = 0; t < s.po.size(); ++t)
        for (EventId e : s.po[t])
            if (!s.at(e).is_fence()) out[t].push_back(e);
    return out;
}

}  // namespace

Term family_constraint(const Ses& s, EventId x, EventId y, ClockFamily fam) {
    if (fam == ClockFamily::Ghb) return ghb_constraint(s, x, y);
    return clock_constraint(end(s, x, fam), end(s, y, fam));
}

Term ghb_constraint(const Ses& s, EventId x, EventId y) {
    const auto& ex = s.at(x);
    const auto& ey = s.at(y);
    if (ex.is_fence() && ey.is_fence()) throw Error("clock constraint between two fences");
    if (ey.is_fence() && split(s, y)) {
        ClockSide side = ex.is_write() ? ClockSide::Write : ClockSide::Read;
        return clock_constraint(end(s, x, ClockFamily::Ghb), end(s, y, ClockFamily::Ghb, side));
    }
    if (ex.is_fence() && split(s, x)) {
        Term r = clock_constraint(end(s, x, ClockFamily::Ghb, ClockSide::Read), end(s, y, ClockFamily::Ghb));
        if (ey.is_read()) return r;
        return t_and(clock_constraint(end(s, x, ClockFamily::Ghb, ClockSide::Write), end(s, y, ClockFamily::Ghb)), r);
    }
    return clock_constraint(end(s, x, ClockFamily::Ghb), end(s, y, ClockFamily::Ghb));
}

Term ws_before(const Ses& s, const ConstraintSet& cs, EventId w1, EventId w2) {
    const auto& a = s.at(w1);
    const auto& b = s.at(w2);
    if (w1 == w2) throw Error("ws_before on identical writes");
    if (a.is_init()) return t_true();
    if (b.is_init()) return t_false();
    if (a.tid == b.tid) return t_bool(a.po_index < b.po_index);
    EventId lo = std::min(w1, w2), hi = std::max(w1, w2);
    for (const auto& sel : cs.ws_selectors)
        if (sel.first == lo && sel.second == hi) return w1 == lo ? bool_var(sel.name) : t_not(bool_var(sel.name));
    throw Error("missing coherence selector for " + Ses::name(lo) + "," + Ses::name(hi));
}

// ---------------------------------------------------------------- rf / ws / fr

namespace {

// True when uniproc rules out rf(w, r) statically: some write w2 of r's thread sits
// between w and r, runs whenever r runs, and is ws-after w (init writes come first).
bool shadowed(const Ses& s, const std::vector<EventId>& writes, EventId w, EventId r) {
    const SymbolicEvent& re = s.at(r);
    for (EventId w2 : writes) {
        if (w2 == w) continue;
        const SymbolicEvent& e2 = s.at(w2);
        if (e2.tid != re.tid || !s.po_before(w2, r) || !cube_subset(e2.guard, re.guard)) continue;
        if (s.at(w).is_init() || (s.at(w).tid == re.tid && s.po_before(w, w2))) return true;
    }
    return false;
}

}  // namespace

void encode_rf(const Ses& s, const Architecture& a, ConstraintSet& cs) {
    for (const auto& addr : s.addresses) {
        auto writes = s.accesses(addr, EventKind::Write);
        for (EventId r : s.accesses(addr, EventKind::Read)) {
            std::vector<Term> some;
            for (EventId w : writes) {
                if (s.po_before(r, w) || shadowed(s, writes, w, r)) continue;
                RfSelector sel{w, r, "rf." + Ses::name(w) + "." + Ses::name(r)};
                Term b = bool_var(sel.name);
                cs.rf_selectors.push_back(sel);
                some.push_back(b);
                cs.wf.push_back(implies(b, t_and(s.guard(w), eq(int_var(s.at(r).value), int_var(s.at(w).value)))));
                cs.rf.push_back(implies(b, family_constraint(s, w, r, ClockFamily::Uniproc)));
                if (s.at(w).tid != s.at(r).tid && a.rfe_safe)
                    cs.grf.push_back(implies(b, family_constraint(s, w, r, ClockFamily::Ghb)));
            }
            cs.wf.push_back(implies(s.guard(r), t_or(std::move(some))));
        }
    }
}

void encode_ws(const Ses& s, const Architecture& /*a*/, ConstraintSet& cs) {
    for (const auto& addr : s.addresses) {
        auto writes = s.accesses(addr, EventKind::Write);
        for (std::size_t i = 0; i < writes.size(); ++i) {
            for (std::size_t j = i + 1; j < writes.size(); ++j) {
                EventId w1 = writes[i], w2 = writes[j];
                if (s.at(w1).tid == s.at(w2).tid) continue;
                if (s.at(w1).is_init() || s.at(w2).is_init()) {
                    EventId init = s.at(w1).is_init() ? w1 : w2;
                    EventId other = init == w1 ? w2 : w1;
                    cs.ws.push_back(family_constraint(s, init, other, ClockFamily::Ghb));
                    cs.ws.push_back(family_constraint(s, init, other, ClockFamily::Uniproc));
                    continue;
                }
                WsSelector sel{w1, w2, "ws." + Ses::name(w1) + "." + Ses::name(w2)};
                cs.ws_selectors.push_back(sel);
                Term b = bool_var(sel.name);
                cs.ws.push_back(implies(b, family_constraint(s, w1, w2, ClockFamily::Ghb)));
                cs.ws.push_back(implies(b, family_constraint(s, w1, w2, ClockFamily::Uniproc)));
                cs.ws.push_back(implies(t_not(b), family_constraint(s, w2, w1, ClockFamily::Ghb)));
                cs.ws.push_back(implies(t_not(b), family_constraint(s, w2, w1, ClockFamily::Uniproc)));
            }
        }
    }
}

void encode_fr(const Ses& s, const Architecture& /*a*/, ConstraintSet& cs) {
    for (const auto& addr : s.addresses) {
        auto writes = s.accesses(addr, EventKind::Write);
        for (EventId r : s.accesses(addr, EventKind::Read)) {
            for (const RfSelector* src : cs.candidates(r)) {
                for (EventId w : writes) {
                    if (w == src->write) continue;
                    bool same_thread = s.at(w).tid == s.at(r).tid;
                    if (same_thread && s.po_before(r, w)) continue;  // po-loc already orders r before w
                    Term before = ws_before(s, cs, src->write, w);
                    if (is_false(before)) continue;
                    Term premise = t_and({bool_var(src->name), before, s.guard(w)});
                    if (!same_thread) cs.fr.push_back(implies(premise, family_constraint(s, r, w, ClockFamily::Ghb)));
                    cs.fr.push_back(implies(premise, family_constraint(s, r, w, ClockFamily::Uniproc)));
                }
            }
        }
    }
}

// ---------------------------------------------------------------- ppo (chains with path conditions)

namespace {

struct PCube {
    Cube lits;
    std::vector<int> rhos;
};
using PathCond = std::vector<PCube>;

class PpoEncoder {
public:
    PpoEncoder(const Ses& s, const Architecture& a, ConstraintSet& cs) : s_(s), a_(a), cs_(cs) {}

    void thread(const std::vector<EventId>& evs) {
        if (evs.empty()) return;
        std::vector<std::pair<EventId, std::map<EventId, PathCond>>> chains;
        chains.push_back({evs[0], {}});
        for (std::size_t i = 1; i < evs.size(); ++i) {
            EventId e1 = evs[i];
            std::map<EventId, PathCond> t1;
            for (auto it = chains.rbegin(); it != chains.rend(); ++it) {
                EventId e2 = it->first;
                const auto& t2 = it->second;
                Cube premise = cube_union(s_.at(e1).guard, s_.at(e2).guard);
                auto known = t1.find(e2);
                if (known != t1.end() && implied(known->second, premise)) continue;
                PathCond rp;
                for (auto& c : not_relax_cubes(a_, s_, e2, e1))
                    if (cube_consistent(c)) rp.push_back({c, {}});
                if (rp.empty()) continue;
                std::vector<Term> ds;
                for (const auto& c : rp) ds.push_back(s_.guard_term(c.lits));
                cs_.ppo.push_back(implies(t_or(std::move(ds)), lt(int_var(clock_name(e2, ClockFamily::Ghb)),
                                                                   int_var(clock_name(e1, ClockFamily::Ghb)))));
                merge(t1, e2, rp);
                for (const auto& [e, r] : t2) {
                    PathCond rr = conj(rp, r);
                    if (!rr.empty()) merge(t1, e, rr);
                }
            }
            chains.push_back({e1, std::move(t1)});
        }
    }

private:
    static constexpr std::size_t kInlineCubes = 4;

    void merge(std::map<EventId, PathCond>& t, EventId e, const PathCond& r) {
        auto it = t.find(e);
        if (it == t.end()) {
            t[e] = r;
            return;
        }
        PathCond u = it->second;
        u.insert(u.end(), r.begin(), r.end());
        if (u.size() <= kInlineCubes) {
            it->second = std::move(u);
            return;
        }
        int rho = static_cast<int>(rho_defs_.size());
        rho_defs_.push_back(std::move(u));
        it->second = {PCube{{}, {rho}}};
    }

    PathCond conj(const PathCond& a, const PathCond& b) {
        PathCond out;
        for (const auto& x : a) {
            for (const auto& y : b) {
                PCube c;
                c.lits = cube_union(x.lits, y.lits);
                if (!cube_consistent(c.lits)) continue;
                c.rhos = x.rhos;
                for (int r : y.rhos)
                    if (std::find(c.rhos.begin(), c.rhos.end(), r) == c.rhos.end()) c.rhos.push_back(r);
                out.push_back(std::move(c));
            }
        }
        if (out.size() > kInlineCubes) {
            int rho = static_cast<int>(rho_defs_.size());
            rho_defs_.push_back(std::move(out));
            return {PCube{{}, {rho}}};
        }
        return out;
    }

    // Sound syntactic check of premise => r: some cube of r (with rho definitions unfolded) is a
    // subset of the premise literals.
    bool implied(const PathCond& r, const Cube& premise) {
        std::map<int, bool> memo;
        return implied(r, premise, memo);
    }

    bool implied(const PathCond& r, const Cube& premise, std::map<int, bool>& memo) {
        for (const auto& c : r) {
            if (!cube_subset(c.lits, premise)) continue;
            bool ok = true;
            for (int rho : c.rhos) {
                auto m = memo.find(rho);
                bool v;
                if (m != memo.end()) {
                    v = m->second;
                } else {
                    memo[rho] = false;
                    v = implied(rho_defs_[static_cast<std::size_t>(rho)], premise, memo);
                    memo[rho] = v;
                }
                if (!v) {
                    ok = false;
                    break;
                }
            }
            if (ok) return true;
        }
        return false;
    }

    const Ses& s_;
    const Architecture& a_;
    ConstraintSet& cs_;
    std::vector<PathCond> rho_defs_;
};

}  // namespace

void encode_ppo(const Ses& s, const Architecture& a, ConstraintSet& cs) {
    PpoEncoder enc(s, a, cs);
    for (const auto& evs : by_thread_non_fence(s)) enc.thread(evs);
}

// ---------------------------------------------------------------- fences

void encode_fences(const Ses& s, const Architecture& a, ConstraintSet& cs) {
    auto non_fence = by_thread_non_fence(s);
    for (std::size_t t = 0; t < s.po.size(); ++t) {
        for (EventId f : s.po[t]) {
            const auto& fe = s.at(f);
            if (!fe.is_fence()) continue;
            FenceSpec spec = a.fence(fe.fence);
            if (spec.in_ppo_only) continue;
            bool cumul = spec.cumulative && !a.rfe_safe;
            for (EventId e : non_fence[t]) {
                const auto& ev = s.at(e);
                if (s.po_before(e, f)) {
                    cs.ab.push_back(ghb_constraint(s, e, f));
                    if (cumul && ev.is_read()) {
                        for (const RfSelector* sel : cs.candidates(e)) {
                            if (s.at(sel->write).tid == ev.tid) continue;
                            cs.ab.push_back(
                                implies(t_and(s.guard(f), bool_var(sel->name)), ghb_constraint(s, sel->write, f)));
                        }
                    }
                } else {
                    cs.ab.push_back(ghb_constraint(s, f, e));
                    if (cumul && ev.is_write()) {
                        for (const auto& sel : cs.rf_selectors) {
                            if (sel.write != e || s.at(sel.read).tid == ev.tid) continue;
                            cs.ab.push_back(
                                implies(t_and(s.guard(f), bool_var(sel.name)), ghb_constraint(s, f, sel.read)));
                        }
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------- uniproc / thin / final values

void encode_uniproc(const Ses& s, const Architecture& /*a*/, ConstraintSet& cs) {
    for (const auto& evs : by_thread_non_fence(s))
        for (std::size_t i = 0; i < evs.size(); ++i)
            for (std::size_t j = i + 1; j < evs.size(); ++j)
                if (s.at(evs[i]).address == s.at(evs[j]).address)
                    cs.uniproc.push_back(family_constraint(s, evs[i], evs[j], ClockFamily::Uniproc));
}

void encode_thin(const Ses& s, const Architecture& /*a*/, ConstraintSet& cs) {
    for (const auto& sel : cs.rf_selectors)
        cs.thin.push_back(implies(bool_var(sel.name), family_constraint(s, sel.write, sel.read, ClockFamily::Thin)));
    std::set<std::pair<EventId, EventId>> seen;
    for (const auto& d : s.dp) {
        if (s.at(d.to).is_fence() || !seen.insert({d.from, d.to}).second) continue;
        cs.thin.push_back(family_constraint(s, d.from, d.to, ClockFamily::Thin));
    }
}

void encode_final_values(const Ses& s, const SsaFormula& f, ConstraintSet& cs) {
    for (const auto& addr : f.final_shared) {
        auto writes = s.accesses(addr, EventKind::Write);
        Term fin = int_var(SsaFormula::final_symbol(addr));
        for (EventId w : writes) {
            std::vector<Term> last{s.guard(w)};
            for (EventId w2 : writes)
                if (w2 != w) last.push_back(t_or(t_not(s.guard(w2)), ws_before(s, cs, w2, w)));
            cs.final_values.push_back(implies(t_and(std::move(last)), eq(fin, int_var(s.at(w).value))));
        }
    }
}

ConstraintSet build_pord(const Ses& s, const SsaFormula& f, const Architecture& a) {
    ConstraintSet cs;
    encode_rf(s, a, cs);
    encode_ws(s, a, cs);
    encode_fr(s, a, cs);
    encode_ppo(s, a, cs);
    encode_fences(s, a, cs);
    encode_uniproc(s, a, cs);
    encode_thin(s, a, cs);
    encode_final_values(s, f, cs);
    // vacuous entries (all guards false, or folded away) are not constraints
    for (auto* v : {&cs.wf, &cs.rf, &cs.grf, &cs.ws, &cs.fr, &cs.ppo, &cs.ab, &cs.uniproc, &cs.thin, &cs.final_values})
        std::erase_if(*v, [](const Term& t) { return is_true(t); });
    return cs;
}

Query make_query(const SsaFormula& f, const ConstraintSet& cs) {
    Query q;
    q.add_all(f.equations);
    q.add_all(cs.all());
    q.add(f.property);
    return q;
}

}  // namespace wpo
