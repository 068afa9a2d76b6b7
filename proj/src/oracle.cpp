#include "wpo/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "wpo/error.hpp"

namespace wpo {

std::string_view to_string(Axiom a) {
    switch (a) {
        case Axiom::Uniproc: return "uniproc";
        case Axiom::Thin: return "thin";
        case Axiom::Consensus: return "consensus";
    }
    return "?";
}

const ConcreteEvent* ConcreteExecution::find(EventId e) const {
    for (const auto& x : events)
        if (x.id == e) return &x;
    return nullptr;
}

std::vector<std::pair<EventId, EventId>> ConcreteExecution::fr() const {
    std::vector<std::pair<EventId, EventId>> out;
    for (const auto& [r, w] : rf) {
        const ConcreteEvent* re = find(r);
        if (!re) continue;
        auto it = ws.find(re->address);
        if (it == ws.end()) continue;
        const auto& order = it->second;
        auto pos = std::find(order.begin(), order.end(), w);
        if (pos == order.end()) continue;
        for (auto q = pos + 1; q != order.end(); ++q) out.push_back({r, *q});
    }
    return out;
}

// ---------------------------------------------------------------- axioms

namespace {

using Edges = std::vector<std::pair<EventId, EventId>>;

std::vector<EventId> find_cycle(const Edges& edges) {
    std::map<EventId, std::vector<EventId>> adj;
    for (const auto& [a, b] : edges) adj[a].push_back(b);
    std::map<EventId, int> color;
    std::vector<EventId> stack;
    std::vector<EventId> cycle;
    std::function<bool(EventId)> dfs = [&](EventId u) {
        color[u] = 1;
        stack.push_back(u);
        for (EventId v : adj[u]) {
            if (color[v] == 1) {
                auto it = std::find(stack.begin(), stack.end(), v);
                cycle.assign(it, stack.end());
                return true;
            }
            if (color[v] == 0 && dfs(v)) return true;
        }
        stack.pop_back();
        color[u] = 2;
        return false;
    };
    for (const auto& [u, _] : adj)
        if (color[u] == 0 && dfs(u)) return cycle;
    return {};
}

bool has_dep(const ConcreteExecution& x, EventId a, EventId b, DepKind k) {
    for (const auto& d : x.dp)
        if (d.from == a && d.to == b && d.kind == k) return true;
    return false;
}

bool ppo_kept(const ConcreteExecution& x, const Architecture& a, const ConcreteEvent& e1, const ConcreteEvent& e2) {
    PairFacts f;
    f.first = e1.kind;
    f.second = e2.kind;
    f.same_address = e1.address == e2.address;
    f.data_dep = has_dep(x, e1.id, e2.id, DepKind::Data);
    f.control_dep = has_dep(x, e1.id, e2.id, DepKind::Control);
    switch (a.ppo_rule(f)) {
        case PpoRule::Relaxed: return false;
        case PpoRule::Kept: return true;
        case PpoRule::KeptWithIsync: {
            int branch = -1;
            for (const auto& d : x.dp)
                if (d.from == e1.id && d.to == e2.id && d.kind == DepKind::Control)
                    branch = branch < 0 ? d.branch_pos : std::min(branch, d.branch_pos);
            for (const auto& s : x.events)
                if (s.kind == EventKind::Fence && s.fence == FenceKind::ISync && s.tid == e2.tid &&
                    s.po_index >= branch && s.po_index < e2.po_index)
                    return true;
            return false;
        }
    }
    return false;
}

}  // namespace

AxiomResult check_axioms(const ConcreteExecution& x, const Architecture& a) {
    Edges ws_edges, rf_edges, fr_edges = x.fr(), poloc, dp_edges, grf, ppo, ab;
    for (const auto& [addr, order] : x.ws)
        for (std::size_t i = 0; i + 1 < order.size(); ++i) ws_edges.push_back({order[i], order[i + 1]});
    for (const auto& [r, w] : x.rf) rf_edges.push_back({w, r});

    std::map<int, std::vector<const ConcreteEvent*>> threads;
    for (const auto& e : x.events) threads[e.tid].push_back(&e);
    for (auto& [t, evs] : threads)
        std::sort(evs.begin(), evs.end(), [](auto* p, auto* q) { return p->po_index < q->po_index; });

    for (const auto& [t, evs] : threads) {
        for (std::size_t i = 0; i < evs.size(); ++i) {
            for (std::size_t j = i + 1; j < evs.size(); ++j) {
                const auto& e1 = *evs[i];
                const auto& e2 = *evs[j];
                if (e1.kind == EventKind::Fence || e2.kind == EventKind::Fence) continue;
                if (e1.address == e2.address) poloc.push_back({e1.id, e2.id});
                if (ppo_kept(x, a, e1, e2)) ppo.push_back({e1.id, e2.id});
            }
        }
    }
    for (const auto& d : x.dp) {
        const ConcreteEvent* t = x.find(d.to);
        if (t && t->kind != EventKind::Fence && x.find(d.from)) dp_edges.push_back({d.from, d.to});
    }
    for (const auto& [r, w] : x.rf) {
        bool external = x.find(r)->tid != x.find(w)->tid;
        if (external ? a.rfe_safe : a.rfi_safe) grf.push_back({w, r});
    }

    // fences: everything before (plus A-cumulative sources) is ordered with everything after
    // (plus B-cumulative targets), filtered by the fence's direction pairs
    for (const auto& s : x.events) {
        if (s.kind != EventKind::Fence) continue;
        FenceSpec spec = a.fence(s.fence);
        if (spec.in_ppo_only) continue;
        bool cumul = spec.cumulative && !a.rfe_safe;
        std::set<EventId> pre, post;
        for (const auto* e : threads[s.tid]) {
            if (e->kind == EventKind::Fence) continue;
            if (e->po_index < s.po_index) pre.insert(e->id);
            else post.insert(e->id);
        }
        if (cumul) {
            for (const auto& [r, w] : x.rf) {
                const ConcreteEvent* re = x.find(r);
                const ConcreteEvent* we = x.find(w);
                if (re->tid == we->tid) continue;
                if (pre.count(r)) pre.insert(w);
            }
            std::set<EventId> extra;
            for (const auto& [r, w] : x.rf) {
                if (x.find(r)->tid == x.find(w)->tid) continue;
                if (post.count(w) && x.find(w)->tid == s.tid) extra.insert(r);
            }
            post.insert(extra.begin(), extra.end());
        }
        for (EventId p : pre)
            for (EventId q : post)
                if (p != q && spec.orders(x.find(p)->kind, x.find(q)->kind)) ab.push_back({p, q});
    }

    AxiomResult res;
    auto check = [&](Axiom ax, std::initializer_list<const Edges*> parts) {
        Edges all;
        for (const auto* p : parts) all.insert(all.end(), p->begin(), p->end());
        auto c = find_cycle(all);
        if (!c.empty() && res.ok) {
            res.ok = false;
            res.violated = ax;
            res.cycle = c;
        }
    };
    check(Axiom::Uniproc, {&ws_edges, &rf_edges, &fr_edges, &poloc});
    check(Axiom::Thin, {&rf_edges, &dp_edges});
    check(Axiom::Consensus, {&ws_edges, &grf, &fr_edges, &ppo, &ab});
    return res;
}

std::optional<std::string> well_formed(const ConcreteExecution& x) {
    std::map<std::string, std::vector<EventId>> writes;
    for (const auto& e : x.events) {
        if (e.kind == EventKind::Write) writes[e.address].push_back(e.id);
        if (e.kind != EventKind::Read) continue;
        auto it = x.rf.find(e.id);
        if (it == x.rf.end()) return "read " + Ses::name(e.id) + " has no rf source";
        const ConcreteEvent* w = x.find(it->second);
        if (!w || w->kind != EventKind::Write || w->address != e.address)
            return "read " + Ses::name(e.id) + " reads from a non-matching event";
        if (w->value != e.value) return "read " + Ses::name(e.id) + " value differs from its source";
    }
    for (const auto& [r, w] : x.rf) {
        const ConcreteEvent* re = x.find(r);
        if (!re || re->kind != EventKind::Read) return "rf target " + Ses::name(r) + " is not an executed read";
    }
    for (auto& [addr, ws] : writes) {
        auto it = x.ws.find(addr);
        if (it == x.ws.end()) return "no coherence order for " + addr;
        auto a = ws, b = it->second;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return "coherence order for " + addr + " does not cover the executed writes";
        if (x.find(it->second.front())->tid != 0) return "coherence order for " + addr + " does not start at init";
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- enumeration oracle

namespace {

using OptInt = std::optional<std::int64_t>;

OptInt eval3(const Expr& e, const std::map<std::string, OptInt>& regs) {
    auto A = [&](int k) { return eval3(e.args[static_cast<std::size_t>(k)], regs); };
    switch (e.op) {
        case ExprOp::Lit: return e.value;
        case ExprOp::Reg: {
            auto it = regs.find(e.name);
            return it == regs.end() ? OptInt{0} : it->second;
        }
        case ExprOp::Neg: {
            auto a = A(0);
            if (!a) return std::nullopt;
            return -*a;
        }
        case ExprOp::Not: {
            auto a = A(0);
            if (!a) return std::nullopt;
            return *a == 0 ? 1 : 0;
        }
        default: break;
    }
    auto a = A(0), b = A(1);
    if (!a || !b) return std::nullopt;
    switch (e.op) {
        case ExprOp::Add: return *a + *b;
        case ExprOp::Sub: return *a - *b;
        case ExprOp::Mul: return *a * *b;
        case ExprOp::Eq: return *a == *b;
        case ExprOp::Ne: return *a != *b;
        case ExprOp::Lt: return *a < *b;
        case ExprOp::Le: return *a <= *b;
        case ExprOp::Gt: return *a > *b;
        case ExprOp::Ge: return *a >= *b;
        case ExprOp::And: return (*a != 0) && (*b != 0);
        case ExprOp::Or: return (*a != 0) || (*b != 0);
        default: throw Error("internal: unexpected operator in thread expression");
    }
}

struct Range {
    std::int64_t lo, hi;
    bool on;
    explicit Range(int bits) : lo(0), hi(0), on(bits > 0 && bits <= 62) {
        if (on) {
            hi = (std::int64_t{1} << (bits - 1)) - 1;
            lo = -(std::int64_t{1} << (bits - 1));
        }
    }
    bool ok(std::int64_t v) const { return !on || (v >= lo && v <= hi); }
};

enum class Mode { Exec, Skip, Unknown };
enum Status : signed char { kUnknown = -1, kNo = 0, kYes = 1 };

struct RunState {
    std::vector<signed char> status;
    std::vector<OptInt> value;  // writes: stored value; reads: loaded value
    std::map<std::pair<int, std::string>, OptInt> final_regs;
    bool blocked = false;
    bool unknown_block = false;
    bool overflow = false;
    bool bad_source = false;
};

class Interp {
public:
    Interp(const Program& p, const Ses& s, const std::vector<EventId>& rf, Range range)
        : p_(p), s_(s), rf_(rf), range_(range) {}

    RunState run(const RunState& prev) {
        RunState st;
        st.status.assign(s_.events.size(), kUnknown);
        st.value.assign(s_.events.size(), std::nullopt);
        prev_ = &prev;
        cur_ = &st;
        for (const auto& th : p_.threads) {
            tid_ = th.tid;
            pos_ = 0;
            std::map<std::string, OptInt> regs;
            for (const auto& r : th.registers) regs[r] = 0;
            walk(th.body, Mode::Exec, regs);
            for (const auto& [r, v] : regs) st.final_regs[{tid_, r}] = v;
        }
        return st;
    }

private:
    EventId next() { return s_.po[static_cast<std::size_t>(tid_)][static_cast<std::size_t>(pos_++)]; }

    void mark(EventId e, Mode m) { cur_->status[static_cast<std::size_t>(e)] = m == Mode::Exec ? kYes : m == Mode::Skip ? kNo : kUnknown; }

    void walk(const Block& b, Mode m, std::map<std::string, OptInt>& regs) {
        for (const auto& stmt : b) {
            if (auto* a = std::get_if<Assign>(&stmt.node)) {
                if (m == Mode::Skip) continue;
                OptInt v = m == Mode::Exec ? eval3(a->value, regs) : std::nullopt;
                if (v && !range_.ok(*v)) cur_->overflow = true;
                regs[a->reg] = v;
            } else if (auto* l = std::get_if<Load>(&stmt.node)) {
                EventId e = next();
                mark(e, m);
                if (m == Mode::Skip) continue;
                OptInt v;
                if (m == Mode::Exec) {
                    EventId w = rf_[static_cast<std::size_t>(e)];
                    signed char ws = prev_->status[static_cast<std::size_t>(w)];
                    if (ws == kNo) cur_->bad_source = true;
                    if (ws == kYes) v = prev_->value[static_cast<std::size_t>(w)];
                }
                cur_->value[static_cast<std::size_t>(e)] = v;
                regs[l->reg] = v;
            } else if (auto* w = std::get_if<Store>(&stmt.node)) {
                EventId e = next();
                mark(e, m);
                if (m != Mode::Exec) continue;
                OptInt v = eval3(w->value, regs);
                if (v && !range_.ok(*v)) cur_->overflow = true;
                cur_->value[static_cast<std::size_t>(e)] = v;
            } else if (std::holds_alternative<Fence>(stmt.node)) {
                mark(next(), m);
            } else if (auto* as = std::get_if<Assume>(&stmt.node)) {
                if (m == Mode::Skip) continue;
                OptInt c = m == Mode::Exec ? eval3(as->cond, regs) : std::nullopt;
                if (!c) cur_->unknown_block = true;
                else if (*c == 0) cur_->blocked = true;
            } else if (auto* i = std::get_if<If>(&stmt.node)) {
                if (m == Mode::Skip) {
                    walk(i->then_body, Mode::Skip, regs);
                    walk(i->else_body, Mode::Skip, regs);
                    continue;
                }
                OptInt c = m == Mode::Exec ? eval3(i->cond, regs) : std::nullopt;
                if (c) {
                    auto other = regs;
                    if (*c != 0) {
                        walk(i->then_body, Mode::Exec, regs);
                        walk(i->else_body, Mode::Skip, other);
                    } else {
                        walk(i->then_body, Mode::Skip, other);
                        walk(i->else_body, Mode::Exec, regs);
                    }
                } else {
                    auto th = regs, el = regs;
                    walk(i->then_body, Mode::Unknown, th);
                    walk(i->else_body, Mode::Unknown, el);
                    for (auto& [r, v] : regs) {
                        auto a = th[r], b2 = el[r];
                        v = (a && b2 && *a == *b2) ? a : std::nullopt;
                    }
                }
            }
        }
    }

    const Program& p_;
    const Ses& s_;
    const std::vector<EventId>& rf_;
    Range range_;
    const RunState* prev_ = nullptr;
    RunState* cur_ = nullptr;
    int tid_ = 0;
    int pos_ = 0;
};

OptInt eval_property(const Expr& e, const std::map<std::pair<int, std::string>, OptInt>& regs,
                     const std::map<std::string, std::int64_t>& shared) {
    auto A = [&](int k) { return eval_property(e.args[static_cast<std::size_t>(k)], regs, shared); };
    switch (e.op) {
        case ExprOp::Lit: return e.value;
        case ExprOp::RegAt: {
            auto it = regs.find({e.tid, e.name});
            return it == regs.end() ? OptInt{0} : it->second;
        }
        case ExprOp::Shared: {
            auto it = shared.find(e.name);
            if (it == shared.end()) throw Error("internal: unknown shared variable " + e.name);
            return it->second;
        }
        case ExprOp::Reg: throw Error("register without thread in property");
        default: break;
    }
    if (e.op == ExprOp::Neg || e.op == ExprOp::Not) {
        auto a = A(0);
        if (!a) return std::nullopt;
        return e.op == ExprOp::Neg ? -*a : (*a == 0 ? 1 : 0);
    }
    Expr shallow = e;
    std::map<std::string, OptInt> tmp;
    auto a = A(0), b = A(1);
    if (!a || !b) return std::nullopt;
    shallow.args = {Expr::reg("a"), Expr::reg("b")};
    tmp["a"] = a;
    tmp["b"] = b;
    return eval3(shallow, tmp);
}

}  // namespace

OracleResult oracle_verdict(const Program& p, const Architecture& a, const OracleOptions& o) {
    if (p.has_loops()) throw Error("oracle requires a loop-free program");
    SsaResult ssa = build_ssa(p, o.bitwidth);
    const Ses& s = ssa.ses;
    if (static_cast<int>(s.events.size()) > o.event_cap)
        throw CapExceeded("oracle enumeration cap exceeded: " + std::to_string(s.events.size()) + " events > " +
                          std::to_string(o.event_cap));

    std::vector<EventId> reads;
    std::vector<std::vector<EventId>> cands;
    for (const auto& e : s.events) {
        if (!e.is_read()) continue;
        reads.push_back(e.id);
        std::vector<EventId> c;
        for (const auto& w : s.events)
            if (w.is_write() && w.address == e.address && !s.po_before(e.id, w.id)) c.push_back(w.id);
        cands.push_back(std::move(c));
    }

    Range range(o.bitwidth);
    OracleResult res;
    bool want = p.property.mode == PropertyMode::Exists;
    std::vector<EventId> rf(s.events.size(), -1);
    std::vector<std::size_t> choice(reads.size(), 0);

    for (;;) {
        for (std::size_t i = 0; i < reads.size(); ++i) rf[static_cast<std::size_t>(reads[i])] = cands[i][choice[i]];

        Interp in(p, s, rf, range);
        RunState st;
        st.status.assign(s.events.size(), kUnknown);
        st.value.assign(s.events.size(), std::nullopt);
        for (std::size_t it = 0; it <= s.events.size() + 1; ++it) {
            RunState nx = in.run(st);
            bool same = nx.status == st.status && nx.value == st.value;
            st = std::move(nx);
            if (same) break;
        }

        bool ok = !st.blocked && !st.unknown_block && !st.overflow && !st.bad_source;
        for (std::size_t i = 0; ok && i < reads.size(); ++i) {
            signed char sr = st.status[static_cast<std::size_t>(reads[i])];
            if (sr == kNo && choice[i] != 0) ok = false;  // one canonical rf choice for skipped reads
        }
        for (const auto& e : s.events) {
            if (!ok) break;
            auto k = st.status[static_cast<std::size_t>(e.id)];
            if (k == kUnknown) ok = false;
            if (k == kYes && !e.is_fence() && !st.value[static_cast<std::size_t>(e.id)]) ok = false;
        }

        if (ok) {
            ConcreteExecution x;
            for (const auto& e : s.events) {
                if (st.status[static_cast<std::size_t>(e.id)] != kYes) continue;
                ConcreteEvent c{e.id, e.tid, e.kind, e.address, 0, e.fence, e.po_index};
                if (!e.is_fence()) c.value = *st.value[static_cast<std::size_t>(e.id)];
                x.events.push_back(c);
                if (e.is_read()) x.rf[e.id] = rf[static_cast<std::size_t>(e.id)];
            }
            for (const auto& d : s.dp)
                if (x.find(d.from) && x.find(d.to)) x.dp.push_back(d);
            bool regs_known = true;
            for (const auto& [k, v] : st.final_regs) {
                if (v) x.final_regs[k] = *v;
                else regs_known = false;
            }

            // coherence orders: init first, same-thread writes in program order
            std::vector<std::string> addrs = s.addresses;
            std::vector<std::vector<EventId>> perms(addrs.size());
            for (std::size_t i = 0; i < addrs.size(); ++i)
                for (const auto& c : x.events)
                    if (c.kind == EventKind::Write && c.address == addrs[i]) perms[i].push_back(c.id);

            std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
                if (k == addrs.size()) {
                    if (!check_axioms(x, a).ok) return false;
                    ++res.executions;
                    for (const auto& addr : addrs) x.final_shared[addr] = x.find(x.ws[addr].back())->value;
                    std::map<std::pair<int, std::string>, OptInt> regs;
                    for (const auto& [key, v] : st.final_regs) regs[key] = v;
                    OptInt pv = eval_property(p.property.expr, regs, x.final_shared);
                    if (!pv) return false;
                    if ((*pv != 0) == want) {
                        res.witness = x;
                        return true;
                    }
                    return false;
                }
                std::vector<EventId> rest(perms[k].begin() + 1, perms[k].end());
                std::sort(rest.begin(), rest.end());
                do {
                    bool po_ok = true;
                    for (std::size_t i = 0; po_ok && i < rest.size(); ++i)
                        for (std::size_t j = i + 1; po_ok && j < rest.size(); ++j)
                            if (s.po_before(rest[j], rest[i])) po_ok = false;
                    if (!po_ok) continue;
                    std::vector<EventId> order{perms[k][0]};
                    order.insert(order.end(), rest.begin(), rest.end());
                    x.ws[addrs[k]] = order;
                    if (rec(k + 1)) return true;
                } while (std::next_permutation(rest.begin(), rest.end()));
                return false;
            };
            (void)regs_known;
            if (rec(0)) {
                res.verdict = verdict_for(p.property.mode, true);
                return res;
            }
        }

        std::size_t i = 0;
        for (; i < reads.size(); ++i) {
            if (++choice[i] < cands[i].size()) break;
            choice[i] = 0;
        }
        if (i == reads.size()) break;
    }
    res.verdict = verdict_for(p.property.mode, false);
    return res;
}

// ---------------------------------------------------------------- SC interleavings

namespace {

struct Instr {
    enum Kind { Assign, Load, Store, Assume, JumpIfFalse, Jump } kind;
    std::string reg, addr;
    Expr expr;
    int target = 0;
};

void compile(const Block& b, std::vector<Instr>& out) {
    for (const auto& st : b) {
        if (auto* a = std::get_if<wpo::Assign>(&st.node)) {
            out.push_back({Instr::Assign, a->reg, "", a->value});
        } else if (auto* l = std::get_if<wpo::Load>(&st.node)) {
            out.push_back({Instr::Load, l->reg, l->addr, {}});
        } else if (auto* w = std::get_if<wpo::Store>(&st.node)) {
            out.push_back({Instr::Store, "", w->addr, w->value});
        } else if (auto* as = std::get_if<wpo::Assume>(&st.node)) {
            out.push_back({Instr::Assume, "", "", as->cond});
        } else if (auto* i = std::get_if<If>(&st.node)) {
            std::size_t jf = out.size();
            out.push_back({Instr::JumpIfFalse, "", "", i->cond});
            compile(i->then_body, out);
            std::size_t j = out.size();
            out.push_back({Instr::Jump, "", "", {}});
            out[jf].target = static_cast<int>(out.size());
            compile(i->else_body, out);
            out[j].target = static_cast<int>(out.size());
        }
        // fences have no effect under SC
    }
}

struct ScState {
    std::vector<int> pc;
    std::vector<std::map<std::string, std::int64_t>> regs;
    std::map<std::string, std::int64_t> mem;
};

}  // namespace

Verdict sc_interleave_verdict(const Program& p, int access_cap, int bitwidth) {
    if (p.has_loops()) throw Error("interleaving oracle requires a loop-free program");
    int accesses = 0;
    std::function<void(const Block&)> count = [&](const Block& b) {
        for (const auto& st : b) {
            if (std::holds_alternative<wpo::Load>(st.node) || std::holds_alternative<wpo::Store>(st.node)) ++accesses;
            if (auto* i = std::get_if<If>(&st.node)) {
                count(i->then_body);
                count(i->else_body);
            }
        }
    };
    for (std::size_t t = 1; t < p.threads.size(); ++t) count(p.threads[t].body);
    if (accesses > access_cap)
        throw CapExceeded("interleaving cap exceeded: " + std::to_string(accesses) + " shared accesses > " +
                          std::to_string(access_cap));

    Range range(bitwidth);
    std::vector<std::vector<Instr>> code(p.threads.size());
    for (std::size_t t = 1; t < p.threads.size(); ++t) compile(p.threads[t].body, code[t]);

    ScState init;
    init.pc.assign(p.threads.size(), 0);
    init.regs.resize(p.threads.size());
    for (std::size_t t = 0; t < p.threads.size(); ++t)
        for (const auto& r : p.threads[t].registers) init.regs[t][r] = 0;
    for (const auto& d : p.shared) init.mem[d.name] = d.init;
    init.pc[0] = 0;

    bool want = p.property.mode == PropertyMode::Exists;

    auto to_opt = [](const std::map<std::string, std::int64_t>& m) {
        std::map<std::string, OptInt> o;
        for (const auto& [k, v] : m) o[k] = v;
        return o;
    };

    // runs local instructions of thread t; false when the path is infeasible
    auto settle = [&](ScState& s, std::size_t t) -> bool {
        auto& c = code[t];
        for (;;) {
            auto pc = static_cast<std::size_t>(s.pc[t]);
            if (pc >= c.size()) return true;
            const Instr& in = c[pc];
            switch (in.kind) {
                case Instr::Assign: {
                    auto v = *eval3(in.expr, to_opt(s.regs[t]));
                    if (!range.ok(v)) return false;
                    s.regs[t][in.reg] = v;
                    ++s.pc[t];
                    break;
                }
                case Instr::Assume:
                    if (*eval3(in.expr, to_opt(s.regs[t])) == 0) return false;
                    ++s.pc[t];
                    break;
                case Instr::JumpIfFalse:
                    if (*eval3(in.expr, to_opt(s.regs[t])) == 0) s.pc[t] = in.target;
                    else ++s.pc[t];
                    break;
                case Instr::Jump: s.pc[t] = in.target; break;
                default: return true;
            }
        }
    };

    std::function<bool(ScState)> explore = [&](ScState s) -> bool {
        for (std::size_t t = 1; t < code.size(); ++t)
            if (!settle(s, t)) return false;
        bool any = false;
        for (std::size_t t = 1; t < code.size(); ++t) {
            auto pc = static_cast<std::size_t>(s.pc[t]);
            if (pc >= code[t].size()) continue;
            any = true;
            ScState n = s;
            const Instr& in = code[t][pc];
            if (in.kind == Instr::Load) {
                n.regs[t][in.reg] = n.mem[in.addr];
            } else {
                auto v = *eval3(in.expr, to_opt(n.regs[t]));
                if (!range.ok(v)) continue;
                n.mem[in.addr] = v;
            }
            ++n.pc[t];
            if (explore(std::move(n))) return true;
        }
        if (any) return false;
        std::map<std::pair<int, std::string>, OptInt> regs;
        for (std::size_t t = 0; t < s.regs.size(); ++t)
            for (const auto& [r, v] : s.regs[t]) regs[{static_cast<int>(t), r}] = v;
        OptInt pv = eval_property(p.property.expr, regs, s.mem);
        return (*pv != 0) == want;
    };

    return verdict_for(p.property.mode, explore(init));
}

}  // namespace wpo
