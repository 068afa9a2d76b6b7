#include "wpo/formula.hpp"

#include <functional>

#include "wpo/error.hpp"

namespace wpo {

namespace {

Term make(Op op, Sort sort, std::vector<Term> args = {}, std::string name = {}, std::int64_t value = 0) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->sort = sort;
    n->args = std::move(args);
    n->name = std::move(name);
    n->value = value;
    return n;
}

bool is_int_const(const Term& t) { return t->op == Op::IntConst; }

}  // namespace

Term t_true() {
    static const Term t = make(Op::True, Sort::Bool);
    return t;
}

Term t_false() {
    static const Term t = make(Op::False, Sort::Bool);
    return t;
}

Term t_bool(bool b) { return b ? t_true() : t_false(); }

Term bool_var(const std::string& name) { return make(Op::BoolVar, Sort::Bool, {}, name); }
Term int_var(const std::string& name) { return make(Op::IntVar, Sort::Int, {}, name); }
Term int_const(std::int64_t v) { return make(Op::IntConst, Sort::Int, {}, {}, v); }

bool is_true(const Term& t) { return t->op == Op::True; }
bool is_false(const Term& t) { return t->op == Op::False; }

Term t_not(const Term& a) {
    if (is_true(a)) return t_false();
    if (is_false(a)) return t_true();
    if (a->op == Op::Not) return a->args[0];
    return make(Op::Not, Sort::Bool, {a});
}

Term t_and(std::vector<Term> xs) {
    std::vector<Term> flat;
    for (auto& x : xs) {
        if (is_false(x)) return t_false();
        if (is_true(x)) continue;
        if (x->op == Op::And)
            flat.insert(flat.end(), x->args.begin(), x->args.end());
        else
            flat.push_back(x);
    }
    if (flat.empty()) return t_true();
    if (flat.size() == 1) return flat[0];
    return make(Op::And, Sort::Bool, std::move(flat));
}

Term t_and(const Term& a, const Term& b) { return t_and(std::vector<Term>{a, b}); }

Term t_or(std::vector<Term> xs) {
    std::vector<Term> flat;
    for (auto& x : xs) {
        if (is_true(x)) return t_true();
        if (is_false(x)) continue;
        if (x->op == Op::Or)
            flat.insert(flat.end(), x->args.begin(), x->args.end());
        else
            flat.push_back(x);
    }
    if (flat.empty()) return t_false();
    if (flat.size() == 1) return flat[0];
    return make(Op::Or, Sort::Bool, std::move(flat));
}

Term t_or(const Term& a, const Term& b) { return t_or(std::vector<Term>{a, b}); }

Term implies(const Term& a, const Term& b) {
    if (is_false(a) || is_true(b)) return t_true();
    if (is_true(a)) return b;
    if (is_false(b)) return t_not(a);
    return make(Op::Implies, Sort::Bool, {a, b});
}

Term iff(const Term& a, const Term& b) {
    if (is_true(a)) return b;
    if (is_true(b)) return a;
    if (is_false(a)) return t_not(b);
    if (is_false(b)) return t_not(a);
    return make(Op::Iff, Sort::Bool, {a, b});
}

Term ite(const Term& c, const Term& a, const Term& b) {
    if (is_true(c)) return a;
    if (is_false(c)) return b;
    if (a == b) return a;
    return make(Op::Ite, a->sort, {c, a, b});
}

Term add(const Term& a, const Term& b) {
    if (is_int_const(a) && is_int_const(b)) return int_const(a->value + b->value);
    if (is_int_const(a) && a->value == 0) return b;
    if (is_int_const(b) && b->value == 0) return a;
    return make(Op::Add, Sort::Int, {a, b});
}

Term sub(const Term& a, const Term& b) {
    if (is_int_const(a) && is_int_const(b)) return int_const(a->value - b->value);
    if (is_int_const(b) && b->value == 0) return a;
    return make(Op::Sub, Sort::Int, {a, b});
}

Term mul(const Term& a, const Term& b) {
    if (is_int_const(a) && is_int_const(b)) return int_const(a->value * b->value);
    if ((is_int_const(a) && a->value == 0) || (is_int_const(b) && b->value == 0)) return int_const(0);
    if (is_int_const(a) && a->value == 1) return b;
    if (is_int_const(b) && b->value == 1) return a;
    if (!is_int_const(a) && !is_int_const(b)) throw UnsupportedError("non-linear multiplication");
    return make(Op::Mul, Sort::Int, {a, b});
}

Term neg(const Term& a) {
    if (is_int_const(a)) return int_const(-a->value);
    return make(Op::Neg, Sort::Int, {a});
}

Term eq(const Term& a, const Term& b) {
    if (is_int_const(a) && is_int_const(b)) return t_bool(a->value == b->value);
    if (a == b) return t_true();
    if (a->sort == Sort::Bool) return iff(a, b);
    return make(Op::Eq, Sort::Bool, {a, b});
}

Term lt(const Term& a, const Term& b) {
    if (is_int_const(a) && is_int_const(b)) return t_bool(a->value < b->value);
    return make(Op::Lt, Sort::Bool, {a, b});
}

Term le(const Term& a, const Term& b) {
    if (is_int_const(a) && is_int_const(b)) return t_bool(a->value <= b->value);
    return make(Op::Le, Sort::Bool, {a, b});
}

namespace {

const char* smt_op(Op op) {
    switch (op) {
        case Op::Not: return "not";
        case Op::And: return "and";
        case Op::Or: return "or";
        case Op::Implies: return "=>";
        case Op::Iff: return "=";
        case Op::Ite: return "ite";
        case Op::Add: return "+";
        case Op::Sub: return "-";
        case Op::Mul: return "*";
        case Op::Neg: return "-";
        case Op::Eq: return "=";
        case Op::Lt: return "<";
        case Op::Le: return "<=";
        default: return "?";
    }
}

void write_smt(const Term& t, std::string& out) {
    switch (t->op) {
        case Op::True: out += "true"; return;
        case Op::False: out += "false"; return;
        case Op::BoolVar:
        case Op::IntVar: out += t->name; return;
        case Op::IntConst:
            if (t->value < 0)
                out += "(- " + std::to_string(-t->value) + ")";
            else
                out += std::to_string(t->value);
            return;
        default:
            out += "(";
            out += smt_op(t->op);
            for (const auto& a : t->args) {
                out += " ";
                write_smt(a, out);
            }
            out += ")";
    }
}

}  // namespace

std::string to_smt(const Term& t) {
    std::string s;
    write_smt(t, s);
    return s;
}

void collect_symbols(const Term& t, std::vector<Symbol>& out, std::set<std::string>& seen) {
    if (t->op == Op::BoolVar || t->op == Op::IntVar) {
        if (seen.insert(t->name).second) out.push_back({t->name, t->sort});
        return;
    }
    for (const auto& a : t->args) collect_symbols(a, out, seen);
}

namespace {

struct Evaluator {
    const Valuation& v;

    std::optional<bool> b(const Term& t) {
        switch (t->op) {
            case Op::True: return true;
            case Op::False: return false;
            case Op::BoolVar: {
                auto it = v.bools.find(t->name);
                if (it == v.bools.end()) return std::nullopt;
                return it->second;
            }
            case Op::Not: {
                auto a = b(t->args[0]);
                if (!a) return std::nullopt;
                return !*a;
            }
            case Op::And: {
                for (const auto& a : t->args) {
                    auto x = b(a);
                    if (!x) return std::nullopt;
                    if (!*x) return false;
                }
                return true;
            }
            case Op::Or: {
                for (const auto& a : t->args) {
                    auto x = b(a);
                    if (!x) return std::nullopt;
                    if (*x) return true;
                }
                return false;
            }
            case Op::Implies: {
                auto x = b(t->args[0]), y = b(t->args[1]);
                if (!x || !y) return std::nullopt;
                return !*x || *y;
            }
            case Op::Iff: {
                auto x = b(t->args[0]), y = b(t->args[1]);
                if (!x || !y) return std::nullopt;
                return *x == *y;
            }
            case Op::Ite: {
                auto c = b(t->args[0]);
                if (!c) return std::nullopt;
                return b(*c ? t->args[1] : t->args[2]);
            }
            case Op::Eq:
            case Op::Lt:
            case Op::Le: {
                auto x = i(t->args[0]), y = i(t->args[1]);
                if (!x || !y) return std::nullopt;
                if (t->op == Op::Eq) return *x == *y;
                if (t->op == Op::Lt) return *x < *y;
                return *x <= *y;
            }
            default: return std::nullopt;
        }
    }

    std::optional<std::int64_t> i(const Term& t) {
        switch (t->op) {
            case Op::IntConst: return t->value;
            case Op::IntVar: {
                auto it = v.ints.find(t->name);
                if (it == v.ints.end()) return std::nullopt;
                return it->second;
            }
            case Op::Ite: {
                auto c = b(t->args[0]);
                if (!c) return std::nullopt;
                return i(*c ? t->args[1] : t->args[2]);
            }
            case Op::Neg: {
                auto a = i(t->args[0]);
                if (!a) return std::nullopt;
                return -*a;
            }
            case Op::Add:
            case Op::Sub:
            case Op::Mul: {
                auto x = i(t->args[0]), y = i(t->args[1]);
                if (!x || !y) return std::nullopt;
                if (t->op == Op::Add) return *x + *y;
                if (t->op == Op::Sub) return *x - *y;
                return *x * *y;
            }
            default: return std::nullopt;
        }
    }
};

}  // namespace

std::optional<bool> eval_bool(const Term& t, const Valuation& v) { return Evaluator{v}.b(t); }
std::optional<std::int64_t> eval_int(const Term& t, const Valuation& v) { return Evaluator{v}.i(t); }

Term clock_constraint(const ClockEnd& x, const ClockEnd& y) {
    if (x.event == y.event) throw Error("clock constraint between event " + x.event + " and itself");
    return implies(t_and(x.guard, y.guard), lt(int_var(x.clock), int_var(y.clock)));
}

}  // namespace wpo
