#include "wpo/ssa.hpp"

#include <algorithm>
#include <set>

#include "wpo/error.hpp"

namespace wpo {

Cube cube_with(const Cube& c, Literal l) {
    Cube out = c;
    auto it = std::lower_bound(out.begin(), out.end(), l);
    if (it == out.end() || *it != l) out.insert(it, l);
    return out;
}

Cube cube_union(const Cube& a, const Cube& b) {
    Cube out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool cube_consistent(const Cube& c) {
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i].var == c[i - 1].var) return false;
    return true;
}

bool cube_subset(const Cube& small, const Cube& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Term Ses::guard_term(const Cube& c) const {
    std::vector<Term> lits;
    for (const auto& l : c) {
        Term v = bool_var(branch_vars.at(static_cast<std::size_t>(l.var)));
        lits.push_back(l.positive ? v : t_not(v));
    }
    return t_and(std::move(lits));
}

bool Ses::po_before(EventId a, EventId b) const {
    const auto& x = at(a);
    const auto& y = at(b);
    return x.tid == y.tid && x.po_index < y.po_index;
}

std::vector<EventId> Ses::accesses(const std::string& addr, EventKind k) const {
    std::vector<EventId> out;
    for (const auto& e : events)
        if (e.kind == k && e.address == addr) out.push_back(e.id);
    return out;
}

// ---------------------------------------------------------------- unroll

namespace {

Block unroll_block(const Block& b, int default_bound);

Block unroll_loop(const While& w, const Block& body, int k) {
    if (k == 0) return {Stmt{Assume{Expr::unary(ExprOp::Not, w.cond)}}};
    If i;
    i.cond = w.cond;
    i.then_body = body;
    Block rest = unroll_loop(w, body, k - 1);
    i.then_body.insert(i.then_body.end(), rest.begin(), rest.end());
    return {Stmt{std::move(i)}};
}

Block unroll_block(const Block& b, int default_bound) {
    Block out;
    for (const auto& s : b) {
        if (auto* w = std::get_if<While>(&s.node)) {
            int k = w->bound.value_or(default_bound);
            if (k < 0) throw Error("negative unwind bound");
            Block body = unroll_block(w->body, default_bound);
            Block u = unroll_loop(*w, body, k);
            out.insert(out.end(), u.begin(), u.end());
        } else if (auto* i = std::get_if<If>(&s.node)) {
            If c;
            c.cond = i->cond;
            c.then_body = unroll_block(i->then_body, default_bound);
            c.else_body = unroll_block(i->else_body, default_bound);
            out.push_back(Stmt{std::move(c)});
        } else {
            out.push_back(s);
        }
    }
    return out;
}

}  // namespace

Program unroll(const Program& p, int default_bound) {
    Program out = p;
    for (auto& t : out.threads) t.body = unroll_block(t.body, default_bound);
    return out;
}

// ---------------------------------------------------------------- expressions

Term expr_to_int(const Expr& e, const std::map<std::string, Term>& regs) {
    switch (e.op) {
        case ExprOp::Lit: return int_const(e.value);
        case ExprOp::Reg: {
            auto it = regs.find(e.name);
            return it == regs.end() ? int_const(0) : it->second;
        }
        case ExprOp::Neg: return neg(expr_to_int(e.args[0], regs));
        case ExprOp::Add: return add(expr_to_int(e.args[0], regs), expr_to_int(e.args[1], regs));
        case ExprOp::Sub: return sub(expr_to_int(e.args[0], regs), expr_to_int(e.args[1], regs));
        case ExprOp::Mul: return mul(expr_to_int(e.args[0], regs), expr_to_int(e.args[1], regs));
        case ExprOp::Shared:
        case ExprOp::RegAt: throw Error("internal: unresolved reference '" + e.name + "' in expression");
        default: return ite(expr_to_bool(e, regs), int_const(1), int_const(0));
    }
}

Term expr_to_bool(const Expr& e, const std::map<std::string, Term>& regs) {
    auto I = [&](int k) { return expr_to_int(e.args[static_cast<std::size_t>(k)], regs); };
    auto B = [&](int k) { return expr_to_bool(e.args[static_cast<std::size_t>(k)], regs); };
    switch (e.op) {
        case ExprOp::Not: return t_not(B(0));
        case ExprOp::And: return t_and(B(0), B(1));
        case ExprOp::Or: return t_or(B(0), B(1));
        case ExprOp::Eq: return eq(I(0), I(1));
        case ExprOp::Ne: return t_not(eq(I(0), I(1)));
        case ExprOp::Lt: return lt(I(0), I(1));
        case ExprOp::Le: return le(I(0), I(1));
        case ExprOp::Gt: return lt(I(1), I(0));
        case ExprOp::Ge: return le(I(1), I(0));
        default: return t_not(eq(expr_to_int(e, regs), int_const(0)));
    }
}

// ---------------------------------------------------------------- build_ssa

namespace {

class Builder {
public:
    Builder(const Program& p, int bitwidth) : p_(p) {
        out_.formula.bitwidth = bitwidth;
        for (const auto& d : p.shared) out_.ses.addresses.push_back(d.name);
        out_.ses.po.resize(p.threads.size());
    }

    SsaResult run() {
        for (const auto& th : p_.threads) {
            tid_ = th.tid;
            if (tid_ != static_cast<int>(&th - p_.threads.data())) throw Error("thread ids must be dense");
            Ctx c;
            if (tid_ > 0) out_.ses.spawn[tid_] = static_cast<int>(out_.ses.po[0].size());
            for (const auto& r : th.registers) c.regs[r] = int_const(0);
            walk(th.body, c);
            for (const auto& [r, t] : c.regs) out_.formula.final_regs[{tid_, r}] = t;
        }
        property();
        return std::move(out_);
    }

private:
    struct Ctx {
        Cube guard;
        std::map<std::string, Term> regs;
        std::vector<EventId> frontier;
    };

    std::string fresh_reg(const std::string& r) {
        int k = reg_counter_[{tid_, r}]++;
        return "t" + std::to_string(tid_) + "." + r + "@" + std::to_string(k + 1);
    }

    std::string fresh_shared(const std::string& a) {
        int k = shared_counter_[a]++;
        return a + "@" + std::to_string(k);
    }

    void range(const Cube& g, const std::string& sym) {
        int w = out_.formula.bitwidth;
        if (w <= 0 || w > 62) return;
        std::int64_t hi = (std::int64_t{1} << (w - 1)) - 1;
        std::int64_t lo = -(std::int64_t{1} << (w - 1));
        Term v = int_var(sym);
        out_.formula.equations.push_back(
            implies(out_.ses.guard_term(g), t_and(le(int_const(lo), v), le(v, int_const(hi)))));
    }

    // Constants inside the value range are propagated instead of named.
    bool in_range(const Term& v) const {
        if (v->op != Op::IntConst) return false;
        int w = out_.formula.bitwidth;
        if (w <= 0 || w > 62) return true;
        return v->value >= -(std::int64_t{1} << (w - 1)) && v->value < (std::int64_t{1} << (w - 1));
    }

    void define(const Cube& g, const std::string& sym, const Term& rhs) {
        out_.formula.equations.push_back(implies(out_.ses.guard_term(g), eq(int_var(sym), rhs)));
        range(g, sym);
    }

    EventId event(Ctx& c, EventKind k, const std::string& addr, FenceKind f = FenceKind::MFence) {
        Ses& s = out_.ses;
        SymbolicEvent e;
        e.id = static_cast<EventId>(s.events.size());
        e.tid = tid_;
        e.kind = k;
        e.address = addr;
        e.fence = f;
        e.guard = c.guard;
        e.po_index = static_cast<int>(s.po[static_cast<std::size_t>(tid_)].size());
        if (k != EventKind::Fence) e.value = fresh_shared(addr);
        s.events.push_back(e);
        s.po[static_cast<std::size_t>(tid_)].push_back(e.id);
        for (EventId f0 : c.frontier) s.po_br.push_back({f0, e.id});
        c.frontier = {e.id};
        return e.id;
    }

    void walk(const Block& b, Ctx& c) {
        for (const auto& st : b) {
            if (auto* a = std::get_if<Assign>(&st.node)) {
                Term v = expr_to_int(a->value, c.regs);
                if (in_range(v)) {
                    c.regs[a->reg] = v;
                    continue;
                }
                std::string s = fresh_reg(a->reg);
                define(c.guard, s, v);
                c.regs[a->reg] = int_var(s);
            } else if (auto* l = std::get_if<Load>(&st.node)) {
                EventId e = event(c, EventKind::Read, l->addr);
                const std::string& sym = out_.ses.at(e).value;
                range(c.guard, sym);
                std::string s = fresh_reg(l->reg);
                out_.formula.equations.push_back(implies(out_.ses.guard_term(c.guard), eq(int_var(s), int_var(sym))));
                c.regs[l->reg] = int_var(s);
            } else if (auto* w = std::get_if<Store>(&st.node)) {
                Term v = expr_to_int(w->value, c.regs);
                EventId e = event(c, EventKind::Write, w->addr);
                define(c.guard, out_.ses.at(e).value, v);
            } else if (auto* f = std::get_if<Fence>(&st.node)) {
                event(c, EventKind::Fence, "", f->kind);
            } else if (auto* as = std::get_if<Assume>(&st.node)) {
                Term t = implies(out_.ses.guard_term(c.guard), expr_to_bool(as->cond, c.regs));
                if (!is_true(t)) out_.formula.equations.push_back(t);
            } else if (auto* i = std::get_if<If>(&st.node)) {
                Term cond = expr_to_bool(i->cond, c.regs);
                if (is_true(cond) || is_false(cond)) {
                    walk(is_true(cond) ? i->then_body : i->else_body, c);
                    continue;
                }
                int var = static_cast<int>(out_.ses.branch_vars.size());
                std::string bname = "t" + std::to_string(tid_) + ".b" + std::to_string(var);
                out_.ses.branch_vars.push_back(bname);
                Term bv = bool_var(bname);
                out_.formula.equations.push_back(implies(out_.ses.guard_term(c.guard), iff(bv, cond)));
                Ctx th = c, el = c;
                th.guard = cube_with(c.guard, {var, true});
                el.guard = cube_with(c.guard, {var, false});
                walk(i->then_body, th);
                walk(i->else_body, el);
                for (auto& [r, t] : c.regs) {
                    const Term& a = th.regs.at(r);
                    const Term& b2 = el.regs.at(r);
                    if (a == b2) {
                        t = a;
                        continue;
                    }
                    std::string s = fresh_reg(r);
                    out_.formula.equations.push_back(
                        implies(out_.ses.guard_term(c.guard), eq(int_var(s), ite(bv, a, b2))));
                    t = int_var(s);
                }
                c.frontier = th.frontier;
                for (EventId e : el.frontier)
                    if (std::find(c.frontier.begin(), c.frontier.end(), e) == c.frontier.end())
                        c.frontier.push_back(e);
            } else {
                throw Error("build_ssa requires a loop-free program (call unroll first)");
            }
        }
    }

    Term prop_int(const Expr& e) {
        switch (e.op) {
            case ExprOp::Lit: return int_const(e.value);
            case ExprOp::Shared: {
                auto& fs = out_.formula.final_shared;
                if (std::find(fs.begin(), fs.end(), e.name) == fs.end()) fs.push_back(e.name);
                return int_var(SsaFormula::final_symbol(e.name));
            }
            case ExprOp::RegAt: {
                auto it = out_.formula.final_regs.find({e.tid, e.name});
                return it == out_.formula.final_regs.end() ? int_const(0) : it->second;
            }
            case ExprOp::Neg: return neg(prop_int(e.args[0]));
            case ExprOp::Add: return add(prop_int(e.args[0]), prop_int(e.args[1]));
            case ExprOp::Sub: return sub(prop_int(e.args[0]), prop_int(e.args[1]));
            case ExprOp::Mul: return mul(prop_int(e.args[0]), prop_int(e.args[1]));
            case ExprOp::Reg: throw Error("register '" + e.name + "' in a property without a thread");
            default: return ite(prop_bool(e), int_const(1), int_const(0));
        }
    }

    Term prop_bool(const Expr& e) {
        auto I = [&](int k) { return prop_int(e.args[static_cast<std::size_t>(k)]); };
        auto B = [&](int k) { return prop_bool(e.args[static_cast<std::size_t>(k)]); };
        switch (e.op) {
            case ExprOp::Not: return t_not(B(0));
            case ExprOp::And: return t_and(B(0), B(1));
            case ExprOp::Or: return t_or(B(0), B(1));
            case ExprOp::Eq: return eq(I(0), I(1));
            case ExprOp::Ne: return t_not(eq(I(0), I(1)));
            case ExprOp::Lt: return lt(I(0), I(1));
            case ExprOp::Le: return le(I(0), I(1));
            case ExprOp::Gt: return lt(I(1), I(0));
            case ExprOp::Ge: return le(I(1), I(0));
            default: return t_not(eq(prop_int(e), int_const(0)));
        }
    }

    void property() {
        Term c = prop_bool(p_.property.expr);
        out_.formula.property = p_.property.mode == PropertyMode::Exists ? c : t_not(c);
    }

    const Program& p_;
    SsaResult out_;
    int tid_ = 0;
    std::map<std::pair<int, std::string>, int> reg_counter_;
    std::map<std::string, int> shared_counter_;
};

}  // namespace

SsaResult build_ssa(const Program& loop_free, int bitwidth) {
    SsaResult r = Builder(loop_free, bitwidth).run();
    compute_deps(r.ses, loop_free);
    return r;
}

// ---------------------------------------------------------------- compute_deps

namespace {

using Taint = std::set<EventId>;

struct DepState {
    std::map<std::string, Taint> regs;
    std::map<EventId, int> ctrl;  // read -> earliest dependent branch position
};

Taint taint_of(const Expr& e, const DepState& st) {
    Taint t;
    if (e.op == ExprOp::Reg) {
        auto it = st.regs.find(e.name);
        if (it != st.regs.end()) t = it->second;
    }
    for (const auto& a : e.args) {
        Taint x = taint_of(a, st);
        t.insert(x.begin(), x.end());
    }
    return t;
}

class DepWalker {
public:
    DepWalker(Ses& s, int tid) : s_(s), tid_(tid) {}

    void walk(const Block& b, DepState& st) {
        for (const auto& stmt : b) {
            if (auto* a = std::get_if<Assign>(&stmt.node)) {
                st.regs[a->reg] = taint_of(a->value, st);
            } else if (auto* l = std::get_if<Load>(&stmt.node)) {
                EventId e = next();
                control(e, st);
                st.regs[l->reg] = {e};
            } else if (auto* w = std::get_if<Store>(&stmt.node)) {
                EventId e = next();
                for (EventId r : taint_of(w->value, st)) add({r, e, DepKind::Data, -1});
                control(e, st);
            } else if (std::holds_alternative<Fence>(stmt.node)) {
                next();
            } else if (std::holds_alternative<Assume>(stmt.node)) {
                // unwinding assumptions carry no dependency
            } else if (auto* i = std::get_if<If>(&stmt.node)) {
                DepState in = st;
                for (EventId r : taint_of(i->cond, st)) in.ctrl.emplace(r, pos_);
                DepState th = in, el = in;
                walk(i->then_body, th);
                walk(i->else_body, el);
                st = th;
                for (const auto& [r, t] : el.regs) st.regs[r].insert(t.begin(), t.end());
                for (const auto& [r, p] : el.ctrl) {
                    auto it = st.ctrl.find(r);
                    if (it == st.ctrl.end() || p < it->second) st.ctrl[r] = p;
                }
            }
        }
    }

private:
    EventId next() {
        const auto& po = s_.po.at(static_cast<std::size_t>(tid_));
        if (pos_ >= static_cast<int>(po.size())) throw Error("internal: event numbering mismatch");
        return po[static_cast<std::size_t>(pos_++)];
    }

    void control(EventId e, const DepState& st) {
        for (const auto& [r, p] : st.ctrl) add({r, e, DepKind::Control, p});
    }

    void add(const Dependency& d) {
        for (const auto& x : s_.dp)
            if (x == d) return;
        s_.dp.push_back(d);
    }

    Ses& s_;
    int tid_;
    int pos_ = 0;
};

}  // namespace

void compute_deps(Ses& s, const Program& loop_free) {
    s.dp.clear();
    for (const auto& th : loop_free.threads) {
        DepWalker w(s, th.tid);
        DepState st;
        w.walk(th.body, st);
    }
}

}  // namespace wpo
