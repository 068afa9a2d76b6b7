#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace wpo {

enum class Sort { Bool, Int };

enum class Op { True, False, BoolVar, IntConst, IntVar, Not, And, Or, Implies, Iff, Ite, Add, Sub, Mul, Neg, Eq, Lt, Le };

struct Node;
using Term = std::shared_ptr<const Node>;

struct Node {
    Op op;
    Sort sort;
    std::string name;
    std::int64_t value = 0;
    std::vector<Term> args;
};

// Constructors fold constants and flatten nested conjunctions/disjunctions.
Term t_true();
Term t_false();
Term t_bool(bool b);
Term bool_var(const std::string& name);
Term int_var(const std::string& name);
Term int_const(std::int64_t v);
Term t_not(const Term& a);
Term t_and(std::vector<Term> xs);
Term t_and(const Term& a, const Term& b);
Term t_or(std::vector<Term> xs);
Term t_or(const Term& a, const Term& b);
Term implies(const Term& a, const Term& b);
Term iff(const Term& a, const Term& b);
Term ite(const Term& c, const Term& a, const Term& b);
Term add(const Term& a, const Term& b);
Term sub(const Term& a, const Term& b);
Term mul(const Term& a, const Term& b);
Term neg(const Term& a);
Term eq(const Term& a, const Term& b);
Term lt(const Term& a, const Term& b);
Term le(const Term& a, const Term& b);

bool is_true(const Term& t);
bool is_false(const Term& t);

std::string to_smt(const Term& t);

struct Symbol {
    std::string name;
    Sort sort;
};

// Appends symbols of `t` not already in `seen`, in first-occurrence order.
void collect_symbols(const Term& t, std::vector<Symbol>& out, std::set<std::string>& seen);

struct Valuation {
    std::map<std::string, bool> bools;
    std::map<std::string, std::int64_t> ints;
};

std::optional<bool> eval_bool(const Term& t, const Valuation& v);
std::optional<std::int64_t> eval_int(const Term& t, const Valuation& v);

// One endpoint of a clock constraint.
struct ClockEnd {
    std::string event;
    std::string clock;
    Term guard;
};

// (g(x) /\ g(y)) => clk_x < clk_y
Term clock_constraint(const ClockEnd& x, const ClockEnd& y);

}  // namespace wpo
