#include "wpo/program.hpp"

namespace wpo {

std::string_view to_string(FenceKind k) {
    switch (k) {
        case FenceKind::MFence: return "mfence";
        case FenceKind::Sync: return "sync";
        case FenceKind::LwSync: return "lwsync";
        case FenceKind::ISync: return "isync";
    }
    return "?";
}

std::optional<FenceKind> fence_from_string(std::string_view s) {
    if (s == "mfence") return FenceKind::MFence;
    if (s == "sync") return FenceKind::Sync;
    if (s == "lwsync") return FenceKind::LwSync;
    if (s == "isync") return FenceKind::ISync;
    return std::nullopt;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Allowed: return "Allowed";
        case Verdict::Forbidden: return "Forbidden";
        case Verdict::Violated: return "Violated";
        case Verdict::Holds: return "Holds";
    }
    return "?";
}

std::optional<Verdict> verdict_from_string(std::string_view s) {
    if (s == "Allowed") return Verdict::Allowed;
    if (s == "Forbidden") return Verdict::Forbidden;
    if (s == "Violated") return Verdict::Violated;
    if (s == "Holds") return Verdict::Holds;
    return std::nullopt;
}

bool reachable(Verdict v) { return v == Verdict::Allowed || v == Verdict::Violated; }

Verdict verdict_for(PropertyMode m, bool r) {
    if (m == PropertyMode::Exists) return r ? Verdict::Allowed : Verdict::Forbidden;
    return r ? Verdict::Violated : Verdict::Holds;
}

Expr Expr::lit(std::int64_t v) {
    Expr e;
    e.op = ExprOp::Lit;
    e.value = v;
    return e;
}

Expr Expr::reg(std::string n) {
    Expr e;
    e.op = ExprOp::Reg;
    e.name = std::move(n);
    return e;
}

Expr Expr::shared(std::string n) {
    Expr e;
    e.op = ExprOp::Shared;
    e.name = std::move(n);
    return e;
}

Expr Expr::reg_at(int tid, std::string n) {
    Expr e;
    e.op = ExprOp::RegAt;
    e.tid = tid;
    e.name = std::move(n);
    return e;
}

Expr Expr::unary(ExprOp op, Expr a) {
    Expr e;
    e.op = op;
    e.args.push_back(std::move(a));
    return e;
}

Expr Expr::binary(ExprOp op, Expr a, Expr b) {
    Expr e;
    e.op = op;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
}

bool Expr::is_boolean() const {
    switch (op) {
        case ExprOp::Not:
        case ExprOp::Eq:
        case ExprOp::Ne:
        case ExprOp::Lt:
        case ExprOp::Le:
        case ExprOp::Gt:
        case ExprOp::Ge:
        case ExprOp::And:
        case ExprOp::Or: return true;
        default: return false;
    }
}

bool operator==(const If& a, const If& b) {
    return a.cond == b.cond && a.then_body == b.then_body && a.else_body == b.else_body;
}

bool operator==(const While& a, const While& b) {
    return a.cond == b.cond && a.bound == b.bound && a.body == b.body;
}

const SharedDecl* Program::find_shared(std::string_view n) const {
    for (const auto& d : shared)
        if (d.name == n) return &d;
    return nullptr;
}

static bool block_has_loops(const Block& b) {
    for (const auto& s : b) {
        if (std::holds_alternative<While>(s.node)) return true;
        if (auto* i = std::get_if<If>(&s.node))
            if (block_has_loops(i->then_body) || block_has_loops(i->else_body)) return true;
    }
    return false;
}

bool Program::has_loops() const {
    for (const auto& t : threads)
        if (block_has_loops(t.body)) return true;
    return false;
}

int count_accesses(const Block& b) {
    int n = 0;
    for (const auto& s : b) {
        if (std::holds_alternative<Load>(s.node) || std::holds_alternative<Store>(s.node) ||
            std::holds_alternative<Fence>(s.node))
            ++n;
        else if (auto* i = std::get_if<If>(&s.node))
            n += count_accesses(i->then_body) + count_accesses(i->else_body);
        else if (auto* w = std::get_if<While>(&s.node))
            n += count_accesses(w->body);
    }
    return n;
}

}  // namespace wpo
