#include "wpo/smt.hpp"

#include <atomic>
#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <thread>
#include <unistd.h>

#include "wpo/error.hpp"

namespace fs = std::filesystem;

namespace wpo {

std::string emit_smtlib(const Query& q) {
    std::vector<Term> conjuncts;
    for (const auto& a : q.assertions) {
        if (is_true(a)) continue;
        if (a->op == Op::And)
            conjuncts.insert(conjuncts.end(), a->args.begin(), a->args.end());
        else
            conjuncts.push_back(a);
    }
    std::vector<Symbol> syms;
    std::set<std::string> seen;
    for (const auto& c : conjuncts) collect_symbols(c, syms, seen);

    std::string out;
    out += "(set-option :produce-models true)\n";
    out += "(set-logic QF_LIA)\n";
    for (const auto& s : syms)
        out += "(declare-fun " + s.name + " () " + (s.sort == Sort::Bool ? "Bool" : "Int") + ")\n";
    for (const auto& c : conjuncts) out += "(assert " + to_smt(c) + ")\n";
    out += "(check-sat)\n(get-model)\n";
    return out;
}

std::string default_solver_path() {
    if (const char* env = std::getenv("WPO_SOLVER"); env && *env) return env;
    return "z3";
}

namespace {

bool resolve_executable(const std::string& name, std::string& resolved) {
    if (name.find('/') != std::string::npos) {
        resolved = name;
        return ::access(name.c_str(), X_OK) == 0;
    }
    const char* path = std::getenv("PATH");
    std::stringstream ss(path ? path : "");
    std::string dir;
    while (std::getline(ss, dir, ':')) {
        if (dir.empty()) continue;
        std::string cand = dir + "/" + name;
        if (::access(cand.c_str(), X_OK) == 0) {
            resolved = cand;
            return true;
        }
    }
    resolved = name;
    return false;
}

std::atomic<unsigned> g_counter{0};

fs::path make_work_dir(const SolverConfig& cfg, unsigned id) {
    if (!cfg.work_dir.empty()) {
        fs::create_directories(cfg.work_dir);
        return cfg.work_dir;
    }
    fs::path d = fs::temp_directory_path() / ("wpo-" + std::to_string(::getpid()) + "-" + std::to_string(id));
    fs::create_directories(d);
    return d;
}

std::string sanitize(const std::string& s) {
    std::string o;
    for (char c : s) o += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return o;
}

// --- s-expressions for model parsing
struct SExpr {
    bool atom = true;
    std::string text;
    std::vector<SExpr> list;
};

struct SReader {
    std::string_view s;
    std::size_t i = 0;

    void ws() {
        while (i < s.size()) {
            if (std::isspace(static_cast<unsigned char>(s[i]))) {
                ++i;
            } else if (s[i] == ';') {
                while (i < s.size() && s[i] != '\n') ++i;
            } else {
                break;
            }
        }
    }

    bool done() {
        ws();
        return i >= s.size();
    }

    SExpr read() {
        ws();
        if (i >= s.size()) throw SolverError(SolverError::Kind::BadOutput, "unexpected end of solver output");
        SExpr e;
        if (s[i] == '(') {
            ++i;
            e.atom = false;
            for (;;) {
                ws();
                if (i >= s.size()) throw SolverError(SolverError::Kind::BadOutput, "unbalanced solver output");
                if (s[i] == ')') {
                    ++i;
                    break;
                }
                e.list.push_back(read());
            }
            return e;
        }
        if (s[i] == ')') throw SolverError(SolverError::Kind::BadOutput, "unbalanced solver output");
        if (s[i] == '|') {
            std::size_t b = i;
            ++i;
            while (i < s.size() && s[i] != '|') ++i;
            e.text = std::string(s.substr(b + 1, i - b - 1));  // |a| and a name the same symbol
            ++i;
            return e;
        }
        if (s[i] == '"') {
            std::size_t b = i;
            ++i;
            while (i < s.size() && s[i] != '"') ++i;
            ++i;
            e.text = std::string(s.substr(b, i - b));
            return e;
        }
        std::size_t b = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i])) && s[i] != '(' && s[i] != ')') ++i;
        e.text = std::string(s.substr(b, i - b));
        return e;
    }
};

std::int64_t int_value(const SExpr& e) {
    if (e.atom) {
        try {
            std::size_t pos = 0;
            long long v = std::stoll(e.text, &pos);
            if (pos != e.text.size()) throw std::invalid_argument(e.text);
            return v;
        } catch (const std::exception&) {
            throw SolverError(SolverError::Kind::BadOutput, "unparseable integer in model: " + e.text);
        }
    }
    if (e.list.size() == 2 && e.list[0].atom && e.list[0].text == "-") return -int_value(e.list[1]);
    throw SolverError(SolverError::Kind::BadOutput, "unsupported value form in model");
}

void bind(const SExpr& d, Valuation& v) {
    if (d.atom || d.list.size() != 5 || !d.list[0].atom || d.list[0].text != "define-fun") return;
    if (!d.list[2].atom && !d.list[2].list.empty()) return;  // function with arguments
    const std::string& name = d.list[1].text;
    const SExpr& sort = d.list[3];
    const SExpr& val = d.list[4];
    if (sort.atom && sort.text == "Bool") {
        if (!val.atom || (val.text != "true" && val.text != "false"))
            throw SolverError(SolverError::Kind::BadOutput, "unsupported Bool value for " + name);
        v.bools[name] = val.text == "true";
    } else if (sort.atom && sort.text == "Int") {
        v.ints[name] = int_value(val);
    }
}

}  // namespace

Valuation parse_model(std::string_view text) {
    Valuation v;
    SReader r{text};
    while (!r.done()) {
        SExpr e = r.read();
        if (e.atom) continue;
        for (const auto& d : e.list) bind(d, v);
        if (!e.list.empty() && e.list[0].atom && e.list[0].text == "define-fun") bind(e, v);
    }
    return v;
}

SolveResult solve(const Query& q, const SolverConfig& cfg) { return solve_script(emit_smtlib(q), cfg); }

SolveResult solve_script(const std::string& script, const SolverConfig& cfg) {
    std::string solver = cfg.path.empty() ? default_solver_path() : cfg.path;
    std::string exe;
    if (!resolve_executable(solver, exe))
        throw SolverError(SolverError::Kind::NotFound, "solver not found: " + exe);

    unsigned id = g_counter++;
    fs::path dir = make_work_dir(cfg, id);
    std::string stem = sanitize(cfg.tag) + "-" + std::to_string(id);
    fs::path in_path = dir / (stem + ".smt2");
    fs::path out_path = dir / (stem + ".out");
    {
        std::ofstream o(in_path);
        if (!o) throw Error("cannot write " + in_path.string());
        o << script;
    }

    auto t0 = std::chrono::steady_clock::now();
    pid_t pid = ::fork();
    if (pid < 0) throw SolverError(SolverError::Kind::Crashed, std::string("fork failed: ") + std::strerror(errno));
    if (pid == 0) {
        int fd = ::open(out_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        if (fd >= 0) {
            ::dup2(fd, 1);
            ::dup2(fd, 2);
            ::close(fd);
        }
        std::string in = in_path.string();
        char* argv[] = {const_cast<char*>(exe.c_str()), const_cast<char*>(in.c_str()), nullptr};
        ::execv(exe.c_str(), argv);
        ::_exit(127);
    }

    int status = 0;
    bool timed_out = false;
    for (;;) {
        pid_t r = ::waitpid(pid, &status, WNOHANG);
        if (r == pid) break;
        if (r < 0 && errno != EINTR) break;
        double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (cfg.timeout_s > 0 && el > cfg.timeout_s) {
            ::kill(pid, SIGKILL);
            ::waitpid(pid, &status, 0);
            timed_out = true;
            break;
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(el < 0.05 ? 1 : 10));
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::string output;
    {
        std::ifstream i(out_path);
        std::stringstream ss;
        ss << i.rdbuf();
        output = ss.str();
    }
    auto cleanup = [&] {
        if (cfg.keep_temps) return;
        std::error_code ec;
        fs::remove(in_path, ec);
        fs::remove(out_path, ec);
        if (cfg.work_dir.empty()) fs::remove(dir, ec);
    };

    if (timed_out) {
        cleanup();
        throw SolverError(SolverError::Kind::Timeout,
                          "solver timed out after " + std::to_string(static_cast<int>(cfg.timeout_s)) + " s");
    }
    if (WIFSIGNALED(status)) {
        cleanup();
        throw SolverError(SolverError::Kind::Crashed, "solver killed by signal " + std::to_string(WTERMSIG(status)));
    }
    if (WIFEXITED(status) && WEXITSTATUS(status) == 127 && output.empty()) {
        cleanup();
        throw SolverError(SolverError::Kind::NotFound, "solver not found: " + exe);
    }

    std::size_t p = output.find_first_not_of(" \t\r\n");
    std::size_t e = output.find_first_of(" \t\r\n(", p == std::string::npos ? 0 : p);
    std::string first = p == std::string::npos ? "" : output.substr(p, e == std::string::npos ? e : e - p);

    SolveResult res;
    res.seconds = secs;
    res.script_path = in_path.string();
    if (first == "sat") {
        res.status = SolveStatus::Sat;
        res.model = parse_model(std::string_view(output).substr(e == std::string::npos ? output.size() : e));
    } else if (first == "unsat") {
        res.status = SolveStatus::Unsat;
    } else if (first == "unknown") {
        cleanup();
        throw SolverError(SolverError::Kind::Unknown, "solver returned unknown");
    } else {
        std::string head = output.substr(0, 400);
        cleanup();
        if (WIFEXITED(status) && WEXITSTATUS(status) != 0)
            throw SolverError(SolverError::Kind::Crashed,
                              "solver exited with status " + std::to_string(WEXITSTATUS(status)) + ": " + head);
        throw SolverError(SolverError::Kind::BadOutput, "unexpected solver output: " + head);
    }
    cleanup();
    return res;
}

}  // namespace wpo
