#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wpo/formula.hpp"

namespace wpo {

struct Query {
    std::vector<Term> assertions;

    void add(const Term& t) { assertions.push_back(t); }
    void add_all(const std::vector<Term>& ts) { assertions.insert(assertions.end(), ts.begin(), ts.end()); }
};

// QF_LIA script: declarations in first-occurrence order, one assert per top-level conjunct.
std::string emit_smtlib(const Query& q);

struct SolverConfig {
    std::string path;  // empty: WPO_SOLVER, then "z3"
    double timeout_s = 300;
    bool keep_temps = false;
    std::string work_dir;  // empty: a fresh directory under the system temp dir
    std::string tag = "query";
};

enum class SolveStatus { Sat, Unsat };

struct SolveResult {
    SolveStatus status = SolveStatus::Unsat;
    Valuation model;
    std::string script_path;  // only meaningful with keep_temps
    double seconds = 0;
};

std::string default_solver_path();

SolveResult solve(const Query& q, const SolverConfig& cfg);
SolveResult solve_script(const std::string& script, const SolverConfig& cfg);

// Parses the define-fun bindings printed by (get-model).
Valuation parse_model(std::string_view text);

}  // namespace wpo
