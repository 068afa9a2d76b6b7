#include "wpo/witness.hpp"

#include <algorithm>
#include <sstream>

#include "wpo/error.hpp"

namespace wpo {

namespace {

bool truth(const Term& t, const Valuation& v, const std::string& what) {
    auto b = eval_bool(t, v);
    if (!b) throw Error("valuation missing a symbol needed for " + what);
    return *b;
}

std::int64_t number(const Term& t, const Valuation& v, const std::string& what) {
    auto i = eval_int(t, v);
    if (!i) throw Error("valuation missing a symbol needed for " + what);
    return *i;
}

std::string kind_text(EventKind k) { return k == EventKind::Read ? "R" : k == EventKind::Write ? "W" : "F"; }

}  // namespace

ConcreteExecution concretise(const Valuation& v, const Ses& s, const SsaFormula& f, const ConstraintSet& cs) {
    ConcreteExecution x;
    std::vector<bool> executed(s.events.size(), false);
    for (const auto& e : s.events) {
        if (!truth(s.guard(e.id), v, "the guard of " + Ses::name(e.id))) continue;
        executed[static_cast<std::size_t>(e.id)] = true;
        ConcreteEvent c{e.id, e.tid, e.kind, e.address, 0, e.fence, e.po_index};
        if (!e.is_fence()) c.value = number(int_var(e.value), v, "the value of " + Ses::name(e.id));
        x.events.push_back(c);
    }
    for (const auto& e : s.events) {
        if (!e.is_read() || !executed[static_cast<std::size_t>(e.id)]) continue;
        std::vector<EventId> src;
        for (const RfSelector* sel : cs.candidates(e.id))
            if (truth(bool_var(sel->name), v, sel->name) && executed[static_cast<std::size_t>(sel->write)])
                src.push_back(sel->write);
        if (src.size() != 1)
            throw Error("read " + Ses::name(e.id) + " has " + std::to_string(src.size()) + " rf sources in the model");
        x.rf[e.id] = src[0];
    }
    for (const auto& addr : s.addresses) {
        std::vector<EventId> ws;
        for (EventId w : s.accesses(addr, EventKind::Write))
            if (executed[static_cast<std::size_t>(w)]) ws.push_back(w);
        std::sort(ws.begin(), ws.end(), [&](EventId a, EventId b) {
            return a != b && truth(ws_before(s, cs, a, b), v, "coherence order");
        });
        x.ws[addr] = ws;
        if (!ws.empty()) x.final_shared[addr] = x.find(ws.back())->value;
    }
    for (const auto& d : s.dp)
        if (executed[static_cast<std::size_t>(d.from)] && executed[static_cast<std::size_t>(d.to)]) x.dp.push_back(d);
    for (const auto& [key, t] : f.final_regs) {
        auto i = eval_int(t, v);
        if (i) x.final_regs[key] = *i;
    }
    return x;
}

std::map<EventId, std::int64_t> ghb_clocks(const Valuation& v, const Ses& s) {
    std::map<EventId, std::int64_t> out;
    for (const auto& e : s.events) {
        for (ClockSide side : {ClockSide::Single, ClockSide::Read}) {
            auto it = v.ints.find(clock_name(e.id, ClockFamily::Ghb, side));
            if (it != v.ints.end()) {
                out[e.id] = it->second;
                break;
            }
        }
    }
    return out;
}

namespace {

std::string thread_label(const Witness& w, int tid) {
    if (tid >= 0 && tid < static_cast<int>(w.thread_names.size())) return w.thread_names[static_cast<std::size_t>(tid)];
    return "T" + std::to_string(tid);
}

std::vector<const ConcreteEvent*> ordered(const Witness& w) {
    std::vector<const ConcreteEvent*> evs;
    for (const auto& e : w.exec.events) evs.push_back(&e);
    std::stable_sort(evs.begin(), evs.end(), [&](auto* a, auto* b) {
        auto ia = w.ghb_clock.find(a->id), ib = w.ghb_clock.find(b->id);
        std::int64_t ca = ia == w.ghb_clock.end() ? 0 : ia->second;
        std::int64_t cb = ib == w.ghb_clock.end() ? 0 : ib->second;
        if (ca != cb) return ca < cb;
        return a->id < b->id;
    });
    return evs;
}

}  // namespace

std::string render_text(const Witness& w) {
    std::ostringstream os;
    os << "witness: " << w.test << " under " << w.model << " is " << to_string(w.verdict) << "\n";
    if (w.exec.events.empty()) {
        os << "no events\n";
        return os.str();
    }
    os << "events in GHB clock order (the clocks give a partial order; ties are unordered):\n";
    for (const auto* e : ordered(w)) {
        os << "  " << Ses::name(e->id) << "  " << thread_label(w, e->tid) << "  " << kind_text(e->kind) << " ";
        if (e->kind == EventKind::Fence)
            os << to_string(e->fence);
        else
            os << e->address << " = " << e->value;
        auto it = w.ghb_clock.find(e->id);
        if (it != w.ghb_clock.end()) os << "  (clk " << it->second << ")";
        os << "\n";
    }
    os << "rf:";
    for (const auto& [r, src] : w.exec.rf) os << " " << Ses::name(src) << "->" << Ses::name(r);
    os << "\nws:";
    for (const auto& [addr, order] : w.exec.ws) {
        os << " " << addr << ":";
        for (std::size_t i = 0; i < order.size(); ++i) os << (i ? "<" : "") << Ses::name(order[i]);
    }
    os << "\nfr:";
    for (const auto& [r, wr] : w.exec.fr()) os << " " << Ses::name(r) << "->" << Ses::name(wr);
    os << "\nfinal:";
    for (const auto& [key, v] : w.exec.final_regs) os << " " << thread_label(w, key.first) << ":" << key.second << "=" << v;
    for (const auto& [addr, v] : w.exec.final_shared) os << " " << addr << "=" << v;
    os << "\n";
    return os.str();
}

nlohmann::json render_json(const Witness& w) {
    using nlohmann::json;
    json j;
    j["test"] = w.test;
    j["model"] = w.model;
    j["verdict"] = std::string(to_string(w.verdict));
    j["note"] = "clock values induce a partial order only";
    json evs = json::array();
    for (const auto* e : ordered(w)) {
        json je;
        je["id"] = Ses::name(e->id);
        je["thread"] = thread_label(w, e->tid);
        je["kind"] = kind_text(e->kind);
        if (e->kind == EventKind::Fence) {
            je["fence"] = std::string(to_string(e->fence));
        } else {
            je["address"] = e->address;
            je["value"] = e->value;
        }
        auto it = w.ghb_clock.find(e->id);
        if (it != w.ghb_clock.end()) je["clock"] = it->second;
        evs.push_back(je);
    }
    j["events"] = evs;
    json rf = json::array();
    for (const auto& [r, src] : w.exec.rf) rf.push_back({Ses::name(src), Ses::name(r)});
    j["rf"] = rf;
    json ws = json::object();
    for (const auto& [addr, order] : w.exec.ws) {
        json o = json::array();
        for (EventId e : order) o.push_back(Ses::name(e));
        ws[addr] = o;
    }
    j["ws"] = ws;
    json fr = json::array();
    for (const auto& [r, wr] : w.exec.fr()) fr.push_back({Ses::name(r), Ses::name(wr)});
    j["fr"] = fr;
    json fin = json::object();
    for (const auto& [key, v] : w.exec.final_regs) fin[thread_label(w, key.first) + ":" + key.second] = v;
    for (const auto& [addr, v] : w.exec.final_shared) fin[addr] = v;
    j["final"] = fin;
    return j;
}

}  // namespace wpo
