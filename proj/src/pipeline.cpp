#include "wpo/pipeline.hpp"

#include <chrono>

#include "wpo/error.hpp"

namespace wpo {

Architecture make_arch(const CheckOptions& o) {
    Architecture a = arch(o.model);
    a.lwsync_cumulative = o.lwsync_cumulative;
    return a;
}

Encoded encode_program(const Program& p, const CheckOptions& o) {
    Encoded e;
    e.loop_free = unroll(p, o.unwind);
    e.ssa = build_ssa(e.loop_free, o.bitwidth);
    e.arch = make_arch(o);
    e.pord = build_pord(e.ssa.ses, e.ssa.formula, e.arch);
    e.query = make_query(e.ssa.formula, e.pord);
    return e;
}

CheckResult check_program(const Program& p, const CheckOptions& o) {
    using clock = std::chrono::steady_clock;
    auto t0 = clock::now();
    Encoded e = encode_program(p, o);
    CheckResult r;
    r.counts = count_constraints(e.pord);
    r.encode_seconds = std::chrono::duration<double>(clock::now() - t0).count();

    SolverConfig sc = o.solver;
    if (sc.tag == "query") sc.tag = p.name + "-" + std::string(to_string(o.model));
    SolveResult sr = solve(e.query, sc);
    r.solve_seconds = sr.seconds;
    r.verdict = verdict_for(p.property.mode, sr.status == SolveStatus::Sat);
    if (sr.status != SolveStatus::Sat) return r;

    Witness w;
    w.test = p.name;
    w.model = std::string(to_string(o.model));
    w.verdict = r.verdict;
    w.exec = concretise(sr.model, e.ssa.ses, e.ssa.formula, e.pord);
    w.ghb_clock = ghb_clocks(sr.model, e.ssa.ses);
    for (const auto& t : p.threads) w.thread_names.push_back(t.name);
    if (auto bad = well_formed(w.exec)) throw Error("internal: witness is malformed: " + *bad);
    AxiomResult ax = check_axioms(w.exec, e.arch);
    if (!ax.ok) throw Error("internal: witness violates " + std::string(to_string(*ax.violated)));
    r.witness = std::move(w);
    return r;
}

}  // namespace wpo
