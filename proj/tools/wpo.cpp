// wpo: bounded model checking of concurrent programs under weak memory models.
#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "wpo/error.hpp"
#include "wpo/frontend.hpp"
#include "wpo/oracle.hpp"
#include "wpo/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace wpo;

namespace {

struct Common {
    std::string model = "sc";
    int unwind = 2;
    std::string solver;
    double timeout = 300;
    bool keep_temps = false;
    int bitwidth = 32;
    bool lwsync_noncumulative = false;
};

void add_common(CLI::App* c, Common& o, bool with_model = true) {
    if (with_model) c->add_option("--model,-m", o.model, "sc, tso, pso, rmo or power")->capture_default_str();
    c->add_option("--unwind,-u", o.unwind, "default loop unwinding bound")->capture_default_str();
    c->add_option("--solver", o.solver, "SMT solver executable (default: $WPO_SOLVER or z3)");
    c->add_option("--timeout", o.timeout, "solver timeout in seconds")->capture_default_str();
    c->add_flag("--keep-temps", o.keep_temps, "keep generated SMT-LIB files");
    c->add_option("--bitwidth", o.bitwidth, "value range in bits, 0 for unbounded")->capture_default_str();
    c->add_flag("--lwsync-noncumulative", o.lwsync_noncumulative, "treat lwsync as non-cumulative");
}

ArchId parse_model(const std::string& m) {
    auto a = arch_from_string(m);
    if (!a) throw UsageError("unknown model '" + m + "'");
    return *a;
}

CheckOptions options(const Common& c, ArchId model) {
    CheckOptions o;
    o.model = model;
    o.unwind = c.unwind;
    o.bitwidth = c.bitwidth;
    o.lwsync_cumulative = !c.lwsync_noncumulative;
    o.solver.path = c.solver;
    o.solver.timeout_s = c.timeout;
    o.solver.keep_temps = c.keep_temps;
    return o;
}

int exit_for(Verdict v) { return reachable(v) ? 1 : 0; }

// ---------------------------------------------------------------- check

int cmd_check(const std::string& file, const Common& c, bool as_json, bool use_oracle, int cap) {
    Program p = load_program_file(file);
    CheckOptions o = options(c, parse_model(c.model));
    if (use_oracle) {
        Program lf = unroll(p, o.unwind);
        OracleOptions oo;
        oo.event_cap = cap;
        oo.bitwidth = o.bitwidth;
        OracleResult r = oracle_verdict(lf, make_arch(o), oo);
        if (as_json) {
            json j{{"test", p.name}, {"model", std::string(to_string(o.model))}, {"verdict", std::string(to_string(r.verdict))},
                   {"engine", "oracle"}, {"executions", r.executions}};
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << p.name << " " << to_string(o.model) << " " << to_string(r.verdict) << " (oracle, "
                      << r.executions << " valid executions examined)\n";
        }
        return exit_for(r.verdict);
    }
    CheckResult r = check_program(p, o);
    if (as_json) {
        json j{{"test", p.name}, {"model", std::string(to_string(o.model))}, {"verdict", std::string(to_string(r.verdict))},
               {"engine", "smt"}, {"encode_seconds", r.encode_seconds}, {"solve_seconds", r.solve_seconds}};
        if (r.witness) j["witness"] = render_json(*r.witness);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << p.name << " " << to_string(o.model) << " " << to_string(r.verdict) << std::fixed
                  << std::setprecision(3) << " (encode " << r.encode_seconds << " s, solve " << r.solve_seconds
                  << " s)\n";
        if (r.witness) std::cout << render_text(*r.witness);
    }
    return exit_for(r.verdict);
}

// ---------------------------------------------------------------- litmus suite

struct Expectation {
    std::string test, model;
    Verdict verdict;
    std::string provenance;
};

struct ExpectationFile {
    std::optional<int> unwind;
    std::vector<Expectation> rows;
};

ExpectationFile read_expectations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open expectations file " + path);
    ExpectationFile f;
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        auto strip = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t\r"));
            s.erase(s.find_last_not_of(" \t\r") + 1);
            return s;
        };
        line = strip(line);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = strip(line.substr(1));
            if (body.rfind("unwind:", 0) == 0) f.unwind = std::stoi(strip(body.substr(7)));
            continue;
        }
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) cols.push_back(strip(col));
        if (cols.size() != 4) throw Error(path + ":" + std::to_string(n) + ": expected 4 columns");
        if (cols[0] == "test") continue;
        auto v = verdict_from_string(cols[2]);
        if (!v) throw Error(path + ":" + std::to_string(n) + ": unknown verdict '" + cols[2] + "'");
        auto m = arch_from_string(cols[1]);
        if (!m) throw Error(path + ":" + std::to_string(n) + ": unknown model '" + cols[1] + "'");
        f.rows.push_back({cols[0], std::string(to_string(*m)), *v, cols[3]});
    }
    if (!f.unwind) throw Error(path + ": missing '# unwind: N' line");
    return f;
}

std::vector<std::string> split_models(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string m;
    while (std::getline(ss, m, ',')) out.push_back(std::string(to_string(parse_model(m))));
    return out;
}

struct Row {
    std::string test, file, model;
    std::string verdict, expected, oracle, status;
    double seconds = 0;
};

int cmd_litmus(const std::string& dir, Common c, const std::string& models_s, std::string exp_path, bool cross,
               int jobs, bool as_json, const std::string& write_exp, bool oracle_only, int cap) {
    std::vector<std::string> files;
    for (const auto& ent : fs::directory_iterator(dir)) {
        auto ext = ent.path().extension().string();
        if (ext == ".litmus" || ext == ".mc") files.push_back(ent.path().string());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw UsageError("no .litmus or .mc files in " + dir);

    if (exp_path.empty() && fs::exists(fs::path(dir) / "expectations.csv") && write_exp.empty())
        exp_path = (fs::path(dir) / "expectations.csv").string();
    std::map<std::pair<std::string, std::string>, Expectation> expect;
    if (!exp_path.empty()) {
        ExpectationFile ef = read_expectations(exp_path);
        c.unwind = *ef.unwind;
        for (const auto& r : ef.rows) expect[{r.test, r.model}] = r;
    }
    std::vector<std::string> models = split_models(models_s);

    std::vector<Program> progs;
    for (const auto& f : files) progs.push_back(load_program_file(f));

    std::vector<Row> rows;
    for (std::size_t i = 0; i < files.size(); ++i)
        for (const auto& m : models) rows.push_back({progs[i].name, files[i], m, "", "", "", "", 0});

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t k = next++;
            if (k >= rows.size()) return;
            Row& r = rows[k];
            const Program& p = progs[static_cast<std::size_t>(
                std::find(files.begin(), files.end(), r.file) - files.begin())];
            CheckOptions o = options(c, parse_model(r.model));
            o.solver.tag = r.test + "-" + r.model;
            auto t0 = std::chrono::steady_clock::now();
            try {
                if (!oracle_only) r.verdict = std::string(to_string(check_program(p, o).verdict));
                if (cross || oracle_only) {
                    OracleOptions oo;
                    oo.event_cap = cap;
                    oo.bitwidth = o.bitwidth;
                    r.oracle = std::string(to_string(oracle_verdict(unroll(p, o.unwind), make_arch(o), oo).verdict));
                    if (oracle_only) r.verdict = r.oracle;
                }
            } catch (const CapExceeded& e) {
                if (r.verdict.empty()) r.verdict = "error";
                r.oracle = "cap";
            } catch (const std::exception& e) {
                r.verdict = "error";
                r.status = e.what();
            }
            r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    std::vector<std::thread> pool;
    for (int j = 0; j < std::max(1, jobs); ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int failures = 0;
    for (auto& r : rows) {
        auto it = expect.find({r.test, r.model});
        if (it != expect.end()) r.expected = std::string(to_string(it->second.verdict));
        if (r.verdict == "error") {
            r.status = "ERROR " + r.status;
        } else if (cross && r.oracle != "cap" && r.oracle != r.verdict) {
            r.status = "DISAGREE";
        } else if (!exp_path.empty() && r.expected.empty()) {
            r.status = "NO-EXPECTATION";
        } else if (!r.expected.empty() && r.expected != r.verdict) {
            r.status = "MISMATCH";
        } else {
            r.status = "ok";
        }
        if (r.status != "ok") ++failures;
    }

    if (!write_exp.empty()) {
        std::ofstream o(write_exp);
        o << "# unwind: " << c.unwind << "\ntest,model,verdict,provenance\n";
        for (const auto& r : rows) o << r.test << "," << r.model << "," << r.verdict << "," << (oracle_only ? "oracle" : "encoder") << "\n";
    }

    if (as_json) {
        json j = json::array();
        for (const auto& r : rows)
            j.push_back({{"test", r.test}, {"model", r.model}, {"verdict", r.verdict}, {"expected", r.expected},
                         {"oracle", r.oracle}, {"status", r.status}, {"seconds", r.seconds}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << std::left << std::setw(24) << "test" << std::setw(7) << "model" << std::setw(11) << "verdict"
                  << std::setw(11) << "expected";
        if (cross) std::cout << std::setw(11) << "oracle";
        std::cout << std::setw(9) << "time" << "status\n";
        for (const auto& r : rows) {
            std::cout << std::left << std::setw(24) << r.test << std::setw(7) << r.model << std::setw(11) << r.verdict
                      << std::setw(11) << (r.expected.empty() ? "-" : r.expected);
            if (cross) std::cout << std::setw(11) << r.oracle;
            std::ostringstream t;
            t << std::fixed << std::setprecision(2) << r.seconds << "s";
            std::cout << std::setw(9) << t.str() << r.status << "\n";
        }
        std::cout << rows.size() - static_cast<std::size_t>(failures) << "/" << rows.size() << " ok\n";
    }
    return failures == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- stats / emit

int count_loc(const std::string& file) {
    std::ifstream in(file);
    std::string line;
    int n = 0;
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) ++n;
    return n;
}

int max_bound(const Block& b, int dflt) {
    int m = 0;
    for (const auto& s : b) {
        if (auto* w = std::get_if<While>(&s.node)) m = std::max({m, w->bound.value_or(dflt), max_bound(w->body, dflt)});
        if (auto* i = std::get_if<If>(&s.node)) m = std::max({m, max_bound(i->then_body, dflt), max_bound(i->else_body, dflt)});
    }
    return m;
}

int cmd_stats(const std::string& file, const Common& c, bool solve_too, bool as_json) {
    Program p = load_program_file(file);
    CheckOptions o = options(c, parse_model(c.model));
    auto t0 = std::chrono::steady_clock::now();
    Encoded e = encode_program(p, o);
    double enc = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ConstraintCounts k = count_constraints(e.pord);
    const Ses& s = e.ssa.ses;
    int shared = 0;
    std::map<std::string, int> per_addr;
    for (const auto& ev : s.events)
        if (!ev.is_fence()) {
            ++shared;
            ++per_addr[ev.address];
        }
    int same = 0;
    for (const auto& [a, n] : per_addr) same = std::max(same, n);
    int ub = 0;
    for (const auto& t : p.threads) ub = std::max(ub, max_bound(t.body, o.unwind));
    std::string unroll = p.has_loops() ? std::to_string(ub) : "none";
    auto costly = k.most_costly();
    std::string verdict = "-";
    double solve_s = 0;
    if (solve_too) {
        CheckResult r = check_program(p, o);
        verdict = std::string(to_string(r.verdict));
        solve_s = r.solve_seconds;
    }
    if (as_json) {
        json j{{"test", p.name}, {"model", std::string(to_string(o.model))}, {"loc", count_loc(file)}, {"unroll", unroll},
               {"tot_addr", p.shared.size()}, {"tot_shared", shared}, {"same_addr", same}, {"all_constr", k.total()},
               {"most_costly", costly.first}, {"most_costly_count", costly.second}, {"rf_candidates", k.rf_candidates},
               {"wf", k.wf}, {"rf", k.rf}, {"grf", k.grf}, {"ws", k.ws}, {"fr", k.fr}, {"ppo", k.ppo}, {"ab", k.ab},
               {"uniproc", k.uniproc}, {"thin", k.thin}, {"final", k.final_values}, {"encode_seconds", enc},
               {"verdict", verdict}, {"solve_seconds", solve_s}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "test        " << p.name << "\nmodel       " << to_string(o.model) << "\nLOC         " << count_loc(file)
              << "\nunroll      " << unroll << "\ntot.addr    " << p.shared.size() << "\ntot.shared  " << shared
              << "\nsame addr   " << same << "\nall constr  " << k.total() << "\nmost costly " << costly.first << " ("
              << costly.second << ")\n";
    std::cout << "breakdown   rf-cand " << k.rf_candidates << ", wf " << k.wf << ", rf " << k.rf << ", grf " << k.grf
              << ", ws " << k.ws << ", fr " << k.fr << ", ppo " << k.ppo << ", ab " << k.ab << ", uniproc "
              << k.uniproc << ", thin " << k.thin << ", final " << k.final_values << "\n";
    std::cout << std::fixed << std::setprecision(3) << "encode      " << enc << " s\n";
    if (solve_too) std::cout << "verdict     " << verdict << "\nsolve       " << solve_s << " s\n";
    return 0;
}

std::string kind_name(EventKind k) { return k == EventKind::Read ? "R" : k == EventKind::Write ? "W" : "F"; }

int cmd_emit(const std::string& file, const std::string& stage, const Common& c, bool as_json) {
    Program p = load_program_file(file);
    CheckOptions o = options(c, parse_model(c.model));
    if (stage == "program") {
        std::cout << print_program(unroll(p, o.unwind));
        return 0;
    }
    Encoded e = encode_program(p, o);
    const Ses& s = e.ssa.ses;
    if (stage == "ssa") {
        for (const auto& eq : e.ssa.formula.equations) std::cout << to_smt(eq) << "\n";
        std::cout << "property: " << to_smt(e.ssa.formula.property) << "\n";
    } else if (stage == "ses") {
        if (as_json) {
            json j;
            json evs = json::array();
            for (const auto& ev : s.events)
                evs.push_back({{"id", Ses::name(ev.id)}, {"tid", ev.tid}, {"kind", kind_name(ev.kind)},
                               {"address", ev.address}, {"value", ev.value},
                               {"fence", ev.is_fence() ? std::string(to_string(ev.fence)) : ""},
                               {"guard", to_smt(s.guard(ev.id))}, {"po_index", ev.po_index}});
            j["events"] = evs;
            json pobr = json::array();
            for (const auto& [a, b] : s.po_br) pobr.push_back({Ses::name(a), Ses::name(b)});
            j["po_br"] = pobr;
            json dp = json::array();
            for (const auto& d : s.dp)
                dp.push_back({{"from", Ses::name(d.from)}, {"to", Ses::name(d.to)},
                              {"kind", d.kind == DepKind::Data ? "data" : "control"}});
            j["dp"] = dp;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        std::cout << "id    tid kind addr value      guard\n";
        for (const auto& ev : s.events) {
            std::cout << std::left << std::setw(6) << Ses::name(ev.id) << std::setw(4) << ev.tid << std::setw(5)
                      << kind_name(ev.kind) << std::setw(5) << (ev.is_fence() ? std::string(to_string(ev.fence)) : ev.address)
                      << std::setw(11) << ev.value << to_smt(s.guard(ev.id)) << "\n";
        }
        std::cout << "po-br:";
        for (const auto& [a, b] : s.po_br) std::cout << " " << Ses::name(a) << "->" << Ses::name(b);
        std::cout << "\ndp:";
        for (const auto& d : s.dp)
            std::cout << " " << Ses::name(d.from) << "->" << Ses::name(d.to) << (d.kind == DepKind::Data ? "(data)" : "(ctrl)");
        std::cout << "\nspawn:";
        for (const auto& [t, at] : s.spawn) std::cout << " T" << t << "@" << at;
        std::cout << "\n";
    } else if (stage == "model") {
        const Architecture& a = e.arch;
        std::cout << "model " << a.name << "\n";
        std::cout << "ppo: WW " << (a.deps_only ? "deps" : a.keep_ww ? "kept" : "relaxed") << ", WR "
                  << (a.deps_only ? "relaxed" : a.keep_wr ? "kept" : "relaxed") << ", RW "
                  << (a.deps_only ? "data/ctrl" : a.keep_rw ? "kept" : "relaxed") << ", RR "
                  << (a.deps_only ? (a.isync_ctrl ? "data, ctrl+isync" : "data") : a.keep_rr ? "kept" : "relaxed")
                  << "; same-address WW/RW always kept\n";
        std::cout << "grf: rfe " << (a.rfe_safe ? "safe" : "relaxed") << ", rfi " << (a.rfi_safe ? "safe" : "relaxed")
                  << "\n";
        for (FenceKind k : {FenceKind::MFence, FenceKind::Sync, FenceKind::LwSync, FenceKind::ISync}) {
            FenceSpec f = a.fence(k);
            std::cout << "fence " << to_string(k) << ": ";
            if (f.in_ppo_only) {
                std::cout << "ppo only\n";
                continue;
            }
            std::cout << (f.orders_ww ? "WW " : "") << (f.orders_wr ? "WR " : "") << (f.orders_rw ? "RW " : "")
                      << (f.orders_rr ? "RR " : "") << (f.cumulative && !a.rfe_safe ? "cumulative" : "") << "\n";
        }
    } else if (stage == "constraints") {
        const ConstraintSet& cs = e.pord;
        auto dump = [](const char* name, const std::vector<Term>& v) {
            std::cout << ";; " << name << " (" << v.size() << ")\n";
            for (const auto& t : v) std::cout << to_smt(t) << "\n";
        };
        dump("wf", cs.wf);
        dump("rf", cs.rf);
        dump("grf", cs.grf);
        dump("ws", cs.ws);
        dump("fr", cs.fr);
        dump("ppo", cs.ppo);
        dump("ab", cs.ab);
        dump("uniproc", cs.uniproc);
        dump("thin", cs.thin);
        dump("final", cs.final_values);
    } else if (stage == "smt") {
        std::cout << emit_smtlib(e.query);
    } else {
        throw UsageError("unknown stage '" + stage + "' (program, ssa, ses, model, constraints, smt)");
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"wpo: bounded model checking under weak memory models"};
    app.require_subcommand(1);

    Common common;
    std::string file, dir, stage = "smt", models = "sc,tso,pso,rmo,power", exp_path, write_exp;
    bool as_json = false, use_oracle = false, cross = false, solve_too = false;
    int jobs = 1, cap = 14;

    auto* check = app.add_subcommand("check", "verify one program under one model");
    check->add_option("file", file, "program (.litmus or .mc)")->required();
    add_common(check, common);
    check->add_flag("--json", as_json, "machine-readable output");
    check->add_flag("--oracle", use_oracle, "use the enumeration oracle instead of the solver");
    check->add_option("--event-cap", cap, "oracle enumeration cap")->capture_default_str();

    auto* litmus = app.add_subcommand("litmus", "run a directory of tests against expected verdicts");
    litmus->add_option("dir", dir, "directory with .litmus/.mc files")->required();
    add_common(litmus, common, false);
    litmus->add_option("--models", models, "comma-separated models")->capture_default_str();
    litmus->add_option("--expectations", exp_path, "CSV test,model,verdict,provenance (default: dir/expectations.csv)");
    litmus->add_flag("--cross-check", cross, "also run the enumeration oracle and flag disagreements");
    litmus->add_flag("--oracle", use_oracle, "use only the enumeration oracle");
    litmus->add_option("--jobs,-j", jobs, "parallel jobs")->capture_default_str();
    litmus->add_option("--event-cap", cap, "oracle enumeration cap")->capture_default_str();
    litmus->add_option("--write-expectations", write_exp, "write the obtained verdicts as an expectations file");
    litmus->add_flag("--json", as_json, "machine-readable output");

    auto* stats = app.add_subcommand("stats", "encoding statistics");
    stats->add_option("file", file, "program")->required();
    add_common(stats, common);
    stats->add_flag("--solve", solve_too, "also solve and report the verdict");
    stats->add_flag("--json", as_json, "machine-readable output");

    auto* emit = app.add_subcommand("emit", "print an intermediate stage");
    emit->add_option("file", file, "program")->required();
    emit->add_option("--stage", stage, "program, ssa, ses, model, constraints or smt")->capture_default_str();
    add_common(emit, common);
    emit->add_flag("--json", as_json, "JSON output (ses stage)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (check->parsed()) return cmd_check(file, common, as_json, use_oracle, cap);
        if (litmus->parsed())
            return cmd_litmus(dir, common, models, exp_path, cross, jobs, as_json, write_exp, use_oracle, cap);
        if (stats->parsed()) return cmd_stats(file, common, solve_too, as_json);
        if (emit->parsed()) return cmd_emit(file, stage, common, as_json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
