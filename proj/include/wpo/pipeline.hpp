#pragma once

#include <optional>
#include <string>

#include "wpo/encoder.hpp"
#include "wpo/program.hpp"
#include "wpo/smt.hpp"
#include "wpo/witness.hpp"

namespace wpo {

struct CheckOptions {
    ArchId model = ArchId::SC;
    int unwind = 2;
    int bitwidth = 32;
    bool lwsync_cumulative = true;
    SolverConfig solver;
};

struct Encoded {
    Program loop_free;
    SsaResult ssa;
    Architecture arch;
    ConstraintSet pord;
    Query query;
};

Encoded encode_program(const Program& p, const CheckOptions& o);

struct CheckResult {
    Verdict verdict = Verdict::Forbidden;
    std::optional<Witness> witness;
    ConstraintCounts counts;
    double encode_seconds = 0;
    double solve_seconds = 0;
};

// Throws wpo::Error if a satisfying model does not concretise to an axiom-valid execution.
CheckResult check_program(const Program& p, const CheckOptions& o);

Architecture make_arch(const CheckOptions& o);

}  // namespace wpo
