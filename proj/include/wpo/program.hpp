#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace wpo {

enum class FenceKind { MFence, Sync, LwSync, ISync };

std::string_view to_string(FenceKind k);
std::optional<FenceKind> fence_from_string(std::string_view s);

enum class ExprOp {
    Lit,
    Reg,     // thread-local register
    Shared,  // final value of a shared address (properties only)
    RegAt,   // final value of a register of thread `tid` (properties only)
    Neg,
    Not,
    Add,
    Sub,
    Mul,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    And,
    Or,
};

struct Expr {
    ExprOp op = ExprOp::Lit;
    std::int64_t value = 0;
    std::string name;
    int tid = -1;
    std::vector<Expr> args;

    bool operator==(const Expr&) const = default;

    static Expr lit(std::int64_t v);
    static Expr reg(std::string n);
    static Expr shared(std::string n);
    static Expr reg_at(int tid, std::string n);
    static Expr unary(ExprOp op, Expr a);
    static Expr binary(ExprOp op, Expr a, Expr b);

    bool is_boolean() const;
};

struct Stmt;
using Block = std::vector<Stmt>;

struct Assign {
    std::string reg;
    Expr value;
    bool operator==(const Assign&) const = default;
};
struct Load {
    std::string reg;
    std::string addr;
    bool operator==(const Load&) const = default;
};
struct Store {
    std::string addr;
    Expr value;
    bool operator==(const Store&) const = default;
};
struct Fence {
    FenceKind kind = FenceKind::MFence;
    bool operator==(const Fence&) const = default;
};
struct Assume {
    Expr cond;
    bool operator==(const Assume&) const = default;
};
struct If {
    Expr cond;
    Block then_body;
    Block else_body;
    friend bool operator==(const If&, const If&);
};
struct While {
    Expr cond;
    std::optional<int> bound;
    Block body;
    friend bool operator==(const While&, const While&);
};

struct Stmt {
    std::variant<Assign, Load, Store, Fence, Assume, If, While> node;
    bool operator==(const Stmt&) const = default;
};

struct Thread {
    int tid = 0;
    std::string name;
    std::vector<std::string> registers;
    Block body;
    bool operator==(const Thread&) const = default;
};

struct SharedDecl {
    std::string name;
    std::int64_t init = 0;
    bool operator==(const SharedDecl&) const = default;
};

enum class PropertyMode { Exists, Assert };

struct Property {
    PropertyMode mode = PropertyMode::Exists;
    Expr expr = Expr::lit(1);
    bool operator==(const Property&) const = default;
};

// threads[0] is the main thread holding one initialisation store per shared address.
struct Program {
    std::string name;
    std::vector<SharedDecl> shared;
    std::vector<Thread> threads;
    Property property;
    bool operator==(const Program&) const = default;

    const SharedDecl* find_shared(std::string_view n) const;
    bool has_loops() const;
};

enum class Verdict { Allowed, Forbidden, Violated, Holds };

std::string_view to_string(Verdict v);
std::optional<Verdict> verdict_from_string(std::string_view s);
// Allowed and Violated are the "property reachable" outcomes.
bool reachable(Verdict v);
Verdict verdict_for(PropertyMode m, bool reachable);

// Number of Load/Store/Fence statements in a loop-free block, both branches counted.
int count_accesses(const Block& b);

}  // namespace wpo
