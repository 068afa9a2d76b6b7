#include "wpo/frontend.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "wpo/error.hpp"

namespace wpo {

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::int64_t value = 0;
    int line = 1;
    int col = 1;
};

const char* const kPuncts[] = {"/\\", "\\/", "&&", "||", "==", "!=", "<=", ">=", "<", ">", "=", "+", "-",
                               "*",   "!",   "~",  "(",  ")",  "{",  "}",  ";",  ":", ",", "@", "[", "]",
                               "&",   "|",   "/",  "%"};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    const Token& peek() {
        if (!cached_) {
            tok_ = scan();
            cached_ = true;
        }
        return tok_;
    }

    Token next() {
        peek();
        cached_ = false;
        return tok_;
    }

    // Next whitespace-delimited word (used for test names like "iriw+lwsync").
    Token read_word() {
        if (cached_) throw ParseError(tok_.line, tok_.col, "internal: read_word after peek");
        skip_space();
        Token t;
        t.kind = Tok::Ident;
        t.line = line_;
        t.col = col_;
        std::size_t b = pos_;
        while (pos_ < src_.size() && !std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
        t.text = std::string(src_.substr(b, pos_ - b));
        return t;
    }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        for (;;) {
            while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
            if (src_.substr(pos_, 2) == "//") {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
                continue;
            }
            if (src_.substr(pos_, 2) == "/*") {
                int l = line_, c = col_;
                advance();
                advance();
                while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") advance();
                if (pos_ >= src_.size()) throw ParseError(l, c, "unterminated comment");
                advance();
                advance();
                continue;
            }
            break;
        }
    }

    Token scan() {
        skip_space();
        Token t;
        t.line = line_;
        t.col = col_;
        if (pos_ >= src_.size()) {
            t.kind = Tok::End;
            t.text = "<end of input>";
            return t;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t b = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                advance();
            t.kind = Tok::Ident;
            t.text = std::string(src_.substr(b, pos_ - b));
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t b = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
            t.kind = Tok::Int;
            t.text = std::string(src_.substr(b, pos_ - b));
            try {
                t.value = std::stoll(t.text);
            } catch (const std::exception&) {
                throw ParseError(t.line, t.col, "integer literal out of range: " + t.text);
            }
            return t;
        }
        for (const char* p : kPuncts) {
            std::string_view pv(p);
            if (src_.substr(pos_, pv.size()) == pv) {
                for (std::size_t i = 0; i < pv.size(); ++i) advance();
                t.kind = Tok::Punct;
                t.text = std::string(pv);
                return t;
            }
        }
        throw ParseError(t.line, t.col, std::string("unexpected character '") + c + "'");
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
    bool cached_ = false;
};

bool is_const(const Expr& e) {
    if (e.op == ExprOp::Lit) return true;
    if (e.op == ExprOp::Reg || e.op == ExprOp::Shared || e.op == ExprOp::RegAt) return false;
    for (const auto& a : e.args)
        if (!is_const(a)) return false;
    return true;
}

using Resolver = std::function<Expr(const Token&)>;

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

protected:
    [[noreturn]] void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.col, msg); }

    [[noreturn]] void unsupported(const Token& t, const std::string& what) {
        throw UnsupportedError(std::to_string(t.line) + ":" + std::to_string(t.col) +
                               ": unsupported construct: " + what);
    }

    bool at(std::string_view punct) {
        const Token& t = lex_.peek();
        return t.kind == Tok::Punct && t.text == punct;
    }

    bool at_kw(std::string_view kw) {
        const Token& t = lex_.peek();
        return t.kind == Tok::Ident && t.text == kw;
    }

    bool accept(std::string_view punct) {
        if (!at(punct)) return false;
        lex_.next();
        return true;
    }

    Token expect(std::string_view punct) {
        Token t = lex_.next();
        if (t.kind != Tok::Punct || t.text != punct)
            fail(t, "expected '" + std::string(punct) + "' but found '" + t.text + "'");
        return t;
    }

    Token expect_kw(std::string_view kw) {
        Token t = lex_.next();
        if (t.kind != Tok::Ident || t.text != kw)
            fail(t, "expected '" + std::string(kw) + "' but found '" + t.text + "'");
        return t;
    }

    Token expect_ident() {
        Token t = lex_.next();
        if (t.kind != Tok::Ident) fail(t, "expected identifier but found '" + t.text + "'");
        return t;
    }

    std::int64_t expect_int() {
        bool neg = accept("-");
        Token t = lex_.next();
        if (t.kind != Tok::Int) fail(t, "expected integer but found '" + t.text + "'");
        return neg ? -t.value : t.value;
    }

    // C-like expression grammar.
    Expr parse_expr(const Resolver& r) { return parse_or(r); }

    Expr parse_or(const Resolver& r) {
        Expr e = parse_and(r);
        while (accept("||")) e = Expr::binary(ExprOp::Or, std::move(e), parse_and(r));
        return e;
    }

    Expr parse_and(const Resolver& r) {
        Expr e = parse_eq(r);
        while (accept("&&")) e = Expr::binary(ExprOp::And, std::move(e), parse_eq(r));
        return e;
    }

    Expr parse_eq(const Resolver& r) {
        Expr e = parse_rel(r);
        for (;;) {
            if (accept("=="))
                e = Expr::binary(ExprOp::Eq, std::move(e), parse_rel(r));
            else if (accept("!="))
                e = Expr::binary(ExprOp::Ne, std::move(e), parse_rel(r));
            else
                return e;
        }
    }

    Expr parse_rel(const Resolver& r) {
        Expr e = parse_add(r);
        for (;;) {
            ExprOp op;
            if (accept("<="))
                op = ExprOp::Le;
            else if (accept(">="))
                op = ExprOp::Ge;
            else if (accept("<"))
                op = ExprOp::Lt;
            else if (accept(">"))
                op = ExprOp::Gt;
            else
                return e;
            e = Expr::binary(op, std::move(e), parse_add(r));
        }
    }

    Expr parse_add(const Resolver& r) {
        Expr e = parse_mul(r);
        for (;;) {
            if (accept("+"))
                e = Expr::binary(ExprOp::Add, std::move(e), parse_mul(r));
            else if (accept("-"))
                e = Expr::binary(ExprOp::Sub, std::move(e), parse_mul(r));
            else
                return e;
        }
    }

    Expr parse_mul(const Resolver& r) {
        Expr e = parse_unary(r);
        for (;;) {
            const Token& t = lex_.peek();
            if (t.kind == Tok::Punct && (t.text == "/" || t.text == "%")) unsupported(t, "division");
            if (!at("*")) return e;
            Token star = lex_.next();
            Expr rhs = parse_unary(r);
            if (!is_const(e) && !is_const(rhs)) unsupported(star, "non-linear multiplication");
            e = Expr::binary(ExprOp::Mul, std::move(e), std::move(rhs));
        }
    }

    Expr parse_unary(const Resolver& r) {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Punct) {
            if (t.text == "!") {
                lex_.next();
                return Expr::unary(ExprOp::Not, parse_unary(r));
            }
            if (t.text == "-") {
                lex_.next();
                if (lex_.peek().kind == Tok::Int) return Expr::lit(-lex_.next().value);
                return Expr::unary(ExprOp::Neg, parse_unary(r));
            }
            if (t.text == "&" || t.text == "*") unsupported(t, "pointers");
        }
        return parse_primary(r);
    }

    Expr parse_primary(const Resolver& r) {
        Token t = lex_.next();
        if (t.kind == Tok::Int) return Expr::lit(t.value);
        if (t.kind == Tok::Punct && t.text == "(") {
            Expr e = parse_expr(r);
            expect(")");
            return e;
        }
        if (t.kind == Tok::Ident) {
            if (at("(")) unsupported(t, "function call '" + t.text + "'");
            if (at("[")) unsupported(t, "dynamic indexing");
            return r(t);
        }
        fail(t, "expected expression but found '" + t.text + "'");
    }

    Lexer lex_;
};

// ---------------------------------------------------------------- litmus

bool is_litmus_register(const std::string& s) {
    if (s.size() < 2 || s[0] != 'r') return false;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

void note_register(Thread& th, const std::string& r) {
    for (const auto& x : th.registers)
        if (x == r) return;
    th.registers.push_back(r);
}

void collect_regs(const Expr& e, Thread& th) {
    if (e.op == ExprOp::Reg) note_register(th, e.name);
    for (const auto& a : e.args) collect_regs(a, th);
}

class LitmusParser : public Parser {
public:
    using Parser::Parser;

    Program run() {
        Program p;
        expect_kw("test");
        Token name = lex_.read_word();
        if (name.text.empty()) fail(name, "missing test name");
        p.name = name.text;

        expect_kw("init");
        expect("{");
        while (!accept("}")) {
            Token a = expect_ident();
            if (is_litmus_register(a.text)) fail(a, "register '" + a.text + "' in init block");
            if (p.find_shared(a.text)) fail(a, "duplicate address '" + a.text + "'");
            expect("=");
            std::int64_t v = expect_int();
            accept(";");
            p.shared.push_back({a.text, v});
        }

        Thread main;
        main.tid = 0;
        main.name = "main";
        for (const auto& d : p.shared) main.body.push_back(Stmt{Store{d.name, Expr::lit(d.init)}});
        p.threads.push_back(std::move(main));

        while (at_kw("thread")) {
            lex_.next();
            Token tn = expect_ident();
            int k = thread_index(tn);
            if (k != static_cast<int>(p.threads.size()) - 1)
                fail(tn, "threads must be declared in order P0, P1, ...; found " + tn.text);
            Thread th;
            th.tid = k + 1;
            th.name = tn.text;
            expect("{");
            th.body = parse_block(p, th);
            p.threads.push_back(std::move(th));
        }
        if (p.threads.size() < 2) fail(lex_.peek(), "litmus test without threads");

        Token ex = lex_.next();
        if (ex.kind != Tok::Ident || ex.text != "exists") fail(ex, "expected 'exists'");
        p.property.mode = PropertyMode::Exists;
        std::set<std::pair<int, std::string>> seen;
        p.property.expr = parse_cond(p, seen);
        Token end = lex_.next();
        if (end.kind != Tok::End) fail(end, "trailing input after final condition: '" + end.text + "'");
        return p;
    }

private:
    int thread_index(const Token& t) {
        if (t.text.size() < 2 || t.text[0] != 'P') fail(t, "thread names must be P<k>, found " + t.text);
        for (std::size_t i = 1; i < t.text.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t.text[i])))
                fail(t, "thread names must be P<k>, found " + t.text);
        return std::stoi(t.text.substr(1));
    }

    Resolver value_resolver(const Program& p, Thread& th) {
        return [&p, &th, this](const Token& t) -> Expr {
            if (is_litmus_register(t.text)) {
                note_register(th, t.text);
                return Expr::reg(t.text);
            }
            if (p.find_shared(t.text)) fail(t, "shared address '" + t.text + "' used inside an expression");
            fail(t, "undeclared address '" + t.text + "'");
        };
    }

    Block parse_block(const Program& p, Thread& th) {
        Block out;
        while (!accept("}")) {
            if (lex_.peek().kind == Tok::End) fail(lex_.peek(), "unterminated thread body");
            out.push_back(parse_stmt(p, th));
        }
        return out;
    }

    Stmt parse_stmt(const Program& p, Thread& th) {
        Token t = expect_ident();
        if (t.text == "fence") {
            expect("(");
            Token k = expect_ident();
            auto fk = fence_from_string(k.text);
            if (!fk) fail(k, "unknown fence kind '" + k.text + "'");
            expect(")");
            expect(";");
            return Stmt{Fence{*fk}};
        }
        if (t.text == "if") {
            expect("(");
            If s;
            s.cond = parse_expr(value_resolver(p, th));
            expect(")");
            expect("{");
            s.then_body = parse_block(p, th);
            if (at_kw("else")) {
                lex_.next();
                expect("{");
                s.else_body = parse_block(p, th);
            }
            return Stmt{std::move(s)};
        }
        if (t.text == "while" || t.text == "for") unsupported(t, "loops in litmus tests");
        expect("=");
        if (is_litmus_register(t.text)) {
            note_register(th, t.text);
            const Token& rhs = lex_.peek();
            if (rhs.kind == Tok::Ident && p.find_shared(rhs.text)) {
                Token a = lex_.next();
                expect(";");
                return Stmt{Load{t.text, a.text}};
            }
            Expr v = parse_expr(value_resolver(p, th));
            expect(";");
            return Stmt{Assign{t.text, std::move(v)}};
        }
        if (p.find_shared(t.text)) {
            Expr v = parse_expr(value_resolver(p, th));
            expect(";");
            return Stmt{Store{t.text, std::move(v)}};
        }
        fail(t, "undeclared address '" + t.text + "'");
    }

    Expr parse_cond(const Program& p, std::set<std::pair<int, std::string>>& seen) {
        Expr e = parse_conj(p, seen);
        while (accept("\\/")) e = Expr::binary(ExprOp::Or, std::move(e), parse_conj(p, seen));
        return e;
    }

    Expr parse_conj(const Program& p, std::set<std::pair<int, std::string>>& seen) {
        Expr e = parse_catom(p, seen);
        while (accept("/\\")) e = Expr::binary(ExprOp::And, std::move(e), parse_catom(p, seen));
        return e;
    }

    Expr parse_catom(const Program& p, std::set<std::pair<int, std::string>>& seen) {
        if (accept("~")) return Expr::unary(ExprOp::Not, parse_catom(p, seen));
        if (accept("(")) {
            Expr e = parse_cond(p, seen);
            expect(")");
            return e;
        }
        Token t = expect_ident();
        if (t.text == "true") return Expr::lit(1);
        if (t.text == "false") return Expr::lit(0);
        if (accept(":")) {
            int k = thread_index(t);
            if (k + 1 >= static_cast<int>(p.threads.size())) fail(t, "unknown thread " + t.text);
            Token r = expect_ident();
            if (!is_litmus_register(r.text)) fail(r, "expected register after " + t.text + ":");
            if (!seen.insert({k + 1, r.text}).second)
                fail(r, "duplicate register definition " + t.text + ":" + r.text + " in final condition");
            expect("=");
            return Expr::binary(ExprOp::Eq, Expr::reg_at(k + 1, r.text), Expr::lit(expect_int()));
        }
        if (!p.find_shared(t.text)) fail(t, "undeclared address '" + t.text + "'");
        expect("=");
        return Expr::binary(ExprOp::Eq, Expr::shared(t.text), Expr::lit(expect_int()));
    }
};

// ---------------------------------------------------------------- MiniC

const std::set<std::string> kUnsupportedKeywords = {"for", "do", "return", "goto", "switch", "struct",
                                                    "break", "continue", "malloc", "pthread_create"};

class MiniCParser : public Parser {
public:
    using Parser::Parser;

    Program run(std::string name) {
        Program p;
        p.name = std::move(name);
        Thread main;
        main.tid = 0;
        main.name = "main";
        p.threads.push_back(std::move(main));
        bool have_assert = false;

        while (lex_.peek().kind != Tok::End) {
            Token t = expect_ident();
            if (have_assert) fail(t, "the assertion must be the last item of the program");
            if (t.text == "shared") {
                expect_kw("int");
                Token n = expect_ident();
                if (p.find_shared(n.text)) fail(n, "duplicate shared variable '" + n.text + "'");
                std::int64_t v = 0;
                if (accept("=")) v = expect_int();
                expect(";");
                p.shared.push_back({n.text, v});
                p.threads[0].body.push_back(Stmt{Store{n.text, Expr::lit(v)}});
            } else if (t.text == "thread") {
                Thread th;
                th.tid = static_cast<int>(p.threads.size());
                th.name = "T" + std::to_string(th.tid);
                if (lex_.peek().kind == Tok::Ident) th.name = lex_.next().text;
                expect("{");
                th.body = parse_block(p, th);
                p.threads.push_back(std::move(th));
            } else if (t.text == "assert") {
                expect("(");
                p.property.mode = PropertyMode::Assert;
                p.property.expr = parse_expr([&p, this](const Token& id) -> Expr {
                    if (p.find_shared(id.text)) return Expr::shared(id.text);
                    fail(id, "assertion may only mention shared variables; '" + id.text + "' is not one");
                });
                expect(")");
                expect(";");
                have_assert = true;
            } else if (t.text == "int" || t.text == "void") {
                unsupported(t, "function definitions (recursion and calls are not supported)");
            } else {
                fail(t, "expected 'shared', 'thread' or 'assert' but found '" + t.text + "'");
            }
        }
        if (!have_assert) fail(lex_.peek(), "missing trailing assert(...)");
        if (p.threads.size() < 2) fail(lex_.peek(), "program without threads");
        return p;
    }

private:
    static bool declared(const Thread& th, const std::string& r) {
        for (const auto& x : th.registers)
            if (x == r) return true;
        return false;
    }

    Resolver resolver(const Program& p, const Thread& th) {
        return [&p, &th, this](const Token& t) -> Expr {
            if (declared(th, t.text)) return Expr::reg(t.text);
            if (p.find_shared(t.text)) return Expr::shared(t.text);
            fail(t, "undeclared identifier '" + t.text + "'");
        };
    }

    std::string fresh_temp(Thread& th) {
        for (;;) {
            std::string n = "_t" + std::to_string(temp_counter_++);
            if (!declared(th, n)) {
                th.registers.push_back(n);
                return n;
            }
        }
    }

    // Replaces every shared reference by a fresh register loaded just before the statement.
    Expr lower(const Expr& e, Thread& th, Block& loads) {
        if (e.op == ExprOp::Shared) {
            std::string r = fresh_temp(th);
            loads.push_back(Stmt{Load{r, e.name}});
            return Expr::reg(r);
        }
        Expr out = e;
        for (auto& a : out.args) a = lower(a, th, loads);
        return out;
    }

    Block parse_block(const Program& p, Thread& th) {
        Block out;
        while (!accept("}")) {
            if (lex_.peek().kind == Tok::End) fail(lex_.peek(), "unterminated block");
            parse_stmt(p, th, out);
        }
        return out;
    }

    Block parse_body(const Program& p, Thread& th) {
        expect("{");
        return parse_block(p, th);
    }

    void parse_stmt(const Program& p, Thread& th, Block& out) {
        Token t = lex_.peek();
        if (t.kind == Tok::Punct && (t.text == "*" || t.text == "&")) unsupported(t, "pointers");
        t = expect_ident();
        if (kUnsupportedKeywords.count(t.text)) unsupported(t, "'" + t.text + "'");
        if (t.text == "int") {
            Token n = expect_ident();
            if (declared(th, n.text)) fail(n, "duplicate register '" + n.text + "'");
            if (p.find_shared(n.text)) fail(n, "register '" + n.text + "' shadows a shared variable");
            if (at("[")) unsupported(lex_.peek(), "arrays");
            th.registers.push_back(n.text);
            if (accept("=")) assign_to(p, th, n, out);
            else expect(";");
            return;
        }
        if (t.text == "fence") {
            expect("(");
            Token k = expect_ident();
            auto fk = fence_from_string(k.text);
            if (!fk) fail(k, "unknown fence kind '" + k.text + "'");
            expect(")");
            expect(";");
            out.push_back(Stmt{Fence{*fk}});
            return;
        }
        if (t.text == "assume") {
            expect("(");
            Expr c = lower(parse_expr(resolver(p, th)), th, out);
            expect(")");
            expect(";");
            out.push_back(Stmt{Assume{std::move(c)}});
            return;
        }
        if (t.text == "if") {
            expect("(");
            If s;
            s.cond = lower(parse_expr(resolver(p, th)), th, out);
            expect(")");
            s.then_body = parse_body(p, th);
            if (at_kw("else")) {
                lex_.next();
                if (at_kw("if")) {
                    parse_stmt(p, th, s.else_body);
                } else {
                    s.else_body = parse_body(p, th);
                }
            }
            out.push_back(Stmt{std::move(s)});
            return;
        }
        if (t.text == "while") {
            expect("(");
            Block loads;
            While w;
            w.cond = lower(parse_expr(resolver(p, th)), th, loads);
            expect(")");
            if (accept("@")) {
                Token u = expect_ident();
                if (u.text != "unwind") fail(u, "expected '@unwind(N)'");
                expect("(");
                std::int64_t n = expect_int();
                if (n < 0) fail(u, "negative unwind bound");
                w.bound = static_cast<int>(n);
                expect(")");
            }
            w.body = parse_body(p, th);
            for (const auto& l : loads) {
                out.push_back(l);
                w.body.push_back(l);
            }
            out.push_back(Stmt{std::move(w)});
            return;
        }
        if (at("(")) unsupported(t, "function call '" + t.text + "'");
        if (at("[")) unsupported(lex_.peek(), "dynamic indexing");
        if (at("++") || at("+")) unsupported(lex_.peek(), "compound assignment");
        expect("=");
        assign_to(p, th, t, out);
    }

    void assign_to(const Program& p, Thread& th, const Token& lhs, Block& out) {
        Expr v = parse_expr(resolver(p, th));
        expect(";");
        if (declared(th, lhs.text)) {
            if (v.op == ExprOp::Shared) {
                out.push_back(Stmt{Load{lhs.text, v.name}});
                return;
            }
            Expr lv = lower(v, th, out);
            out.push_back(Stmt{Assign{lhs.text, std::move(lv)}});
            return;
        }
        if (p.find_shared(lhs.text)) {
            Expr lv = lower(v, th, out);
            out.push_back(Stmt{Store{lhs.text, std::move(lv)}});
            return;
        }
        fail(lhs, "undeclared identifier '" + lhs.text + "'");
    }

    int temp_counter_ = 0;
};

// ---------------------------------------------------------------- printing

const char* op_text(ExprOp op) {
    switch (op) {
        case ExprOp::Add: return "+";
        case ExprOp::Sub: return "-";
        case ExprOp::Mul: return "*";
        case ExprOp::Eq: return "==";
        case ExprOp::Ne: return "!=";
        case ExprOp::Lt: return "<";
        case ExprOp::Le: return "<=";
        case ExprOp::Gt: return ">";
        case ExprOp::Ge: return ">=";
        case ExprOp::And: return "&&";
        case ExprOp::Or: return "||";
        case ExprOp::Neg: return "-";
        case ExprOp::Not: return "!";
        default: return "?";
    }
}

bool is_atom(const Expr& e) {
    return e.op == ExprOp::Reg || e.op == ExprOp::Shared || e.op == ExprOp::RegAt ||
           (e.op == ExprOp::Lit && e.value >= 0);
}

std::string expr_text(const Expr& e, bool top) {
    switch (e.op) {
        case ExprOp::Lit: return std::to_string(e.value);
        case ExprOp::Reg:
        case ExprOp::Shared: return e.name;
        case ExprOp::RegAt: return "P" + std::to_string(e.tid - 1) + ":" + e.name;
        case ExprOp::Neg:
        case ExprOp::Not: {
            const Expr& a = e.args[0];
            std::string inner = expr_text(a, true);
            return std::string(op_text(e.op)) + (is_atom(a) ? inner : "(" + inner + ")");
        }
        default: {
            std::string s = expr_text(e.args[0], false) + " " + op_text(e.op) + " " + expr_text(e.args[1], false);
            return top ? s : "(" + s + ")";
        }
    }
}

void print_block(std::ostringstream& os, const Block& b, int depth) {
    std::string ind(static_cast<std::size_t>(depth) * 2, ' ');
    for (const auto& s : b) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Assign>) {
                    os << ind << n.reg << " = " << expr_text(n.value, true) << ";\n";
                } else if constexpr (std::is_same_v<T, Load>) {
                    os << ind << n.reg << " = " << n.addr << ";\n";
                } else if constexpr (std::is_same_v<T, Store>) {
                    os << ind << n.addr << " = " << expr_text(n.value, true) << ";\n";
                } else if constexpr (std::is_same_v<T, Fence>) {
                    os << ind << "fence(" << to_string(n.kind) << ");\n";
                } else if constexpr (std::is_same_v<T, Assume>) {
                    os << ind << "assume(" << expr_text(n.cond, true) << ");\n";
                } else if constexpr (std::is_same_v<T, If>) {
                    os << ind << "if (" << expr_text(n.cond, true) << ") {\n";
                    print_block(os, n.then_body, depth + 1);
                    if (!n.else_body.empty()) {
                        os << ind << "} else {\n";
                        print_block(os, n.else_body, depth + 1);
                    }
                    os << ind << "}\n";
                } else if constexpr (std::is_same_v<T, While>) {
                    os << ind << "while (" << expr_text(n.cond, true) << ")";
                    if (n.bound) os << " @unwind(" << *n.bound << ")";
                    os << " {\n";
                    print_block(os, n.body, depth + 1);
                    os << ind << "}\n";
                }
            },
            s.node);
    }
}

std::string cond_text(const Expr& e, bool top) {
    switch (e.op) {
        case ExprOp::Lit: return e.value ? "true" : "false";
        case ExprOp::Eq: {
            const Expr& l = e.args[0];
            std::string lhs = l.op == ExprOp::RegAt ? "P" + std::to_string(l.tid - 1) + ":" + l.name : l.name;
            return lhs + "=" + std::to_string(e.args[1].value);
        }
        case ExprOp::Not: return "~" + cond_text(e.args[0], false);
        case ExprOp::And:
        case ExprOp::Or: {
            std::string s = cond_text(e.args[0], false) + (e.op == ExprOp::And ? " /\\ " : " \\/ ") +
                            cond_text(e.args[1], false);
            return top ? s : "(" + s + ")";
        }
        default: throw Error("final condition cannot be printed in litmus syntax");
    }
}

}  // namespace

Program parse_litmus(std::string_view text) { return LitmusParser(text).run(); }

Program parse_minic(std::string_view text, std::string name) { return MiniCParser(text).run(std::move(name)); }

Program load_program_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    std::filesystem::path fp(path);
    std::string ext = fp.extension().string();
    if (ext == ".litmus") return parse_litmus(ss.str());
    if (ext == ".mc" || ext == ".c") return parse_minic(ss.str(), fp.stem().string());
    throw UsageError("unknown input kind for " + path + " (expected .litmus or .mc)");
}

std::string print_expr(const Expr& e) { return expr_text(e, true); }

std::string print_litmus(const Program& p) {
    std::ostringstream os;
    os << "test " << p.name << "\n";
    os << "init {";
    for (const auto& d : p.shared) os << " " << d.name << "=" << d.init << ";";
    os << " }\n";
    for (std::size_t i = 1; i < p.threads.size(); ++i) {
        os << "thread P" << (i - 1) << " {\n";
        print_block(os, p.threads[i].body, 1);
        os << "}\n";
    }
    os << "exists (" << cond_text(p.property.expr, true) << ")\n";
    return os.str();
}

std::string print_minic(const Program& p) {
    std::ostringstream os;
    for (const auto& d : p.shared) os << "shared int " << d.name << " = " << d.init << ";\n";
    for (std::size_t i = 1; i < p.threads.size(); ++i) {
        const Thread& th = p.threads[i];
        os << "thread " << th.name << " {\n";
        for (const auto& r : th.registers) os << "  int " << r << ";\n";
        print_block(os, th.body, 1);
        os << "}\n";
    }
    os << "assert(" << print_expr(p.property.expr) << ");\n";
    return os.str();
}

std::string print_program(const Program& p) {
    return p.property.mode == PropertyMode::Exists ? print_litmus(p) : print_minic(p);
}

}  // namespace wpo
