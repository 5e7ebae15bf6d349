#include <mug/syntax.hpp>

#include <fmt/format.h>

#include <array>
#include <cctype>
#include <charconv>
#include <set>

namespace mug {

namespace {

constexpr std::array<std::string_view, 13> kKeywords = {"id",  "pre",  "post", "let",  "in",     "def", "if",
                                                        "then", "else", "fix",  "with", "repeat", "for"};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '+' || c == '-';
}

enum class Tok { Ident, Keyword, Int, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    Span span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip();
            Span at{line_, col_};
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "end of input", at});
                return out;
            }
            char c = src_[pos_];
            if (ident_start(c)) {
                std::size_t b = pos_;
                while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
                std::string word(src_.substr(b, pos_ - b));
                out.push_back({is_keyword(word) ? Tok::Keyword : Tok::Ident, std::move(word), at});
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t b = pos_;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
                out.push_back({Tok::Int, std::string(src_.substr(b, pos_ - b)), at});
            } else if (src_.substr(pos_, 3) == "(+)") {
                advance(3);
                out.push_back({Tok::Sym, "(+)", at});
            } else if (src_.substr(pos_, 2) == "||") {
                advance(2);
                out.push_back({Tok::Sym, "||", at});
            } else if (std::string_view(";*()[],={}").find(c) != std::string_view::npos) {
                advance();
                out.push_back({Tok::Sym, std::string(1, c), at});
            } else {
                throw Error(ErrorKind::Syntax, fmt::format("unexpected character '{}'", c), at);
            }
        }
    }

private:
    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n; ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }
    void skip() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

using S = SurfaceExpr;

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    S program() {
        S e = choice();
        if (peek().kind != Tok::End) fail({"';'", "'||'", "'(+)'", "'*'", "end of input"});
        return e;
    }

private:
    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    bool at_sym(std::string_view s) const { return peek().kind == Tok::Sym && peek().text == s; }
    bool at_kw(std::string_view s) const { return peek().kind == Tok::Keyword && peek().text == s; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(std::initializer_list<std::string_view> expected) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::End ? t.text : "'" + t.text + "'";
        throw Error(ErrorKind::Syntax, fmt::format("found {}, expected one of: {}", found, fmt::join(expected, ", ")),
                    t.span);
    }
    void expect_sym(std::string_view s) {
        if (!at_sym(s)) fail({fmt::format("'{}'", s)});
        next();
    }
    void expect_kw(std::string_view s) {
        if (!at_kw(s)) fail({s});
        next();
    }
    std::string ident() {
        if (peek().kind != Tok::Ident) fail({"identifier"});
        return next().text;
    }

    S choice() {
        S e = par();
        while (at_sym("(+)")) {
            Span s = next().span;
            e = S::choice(std::move(e), par(), s);
        }
        return e;
    }
    S par() {
        S e = seq();
        while (at_sym("||")) {
            Span s = next().span;
            e = S::par(std::move(e), seq(), s);
        }
        return e;
    }
    S seq() {
        S e = postfix();
        while (at_sym(";")) {
            Span s = next().span;
            e = S::seq(std::move(e), postfix(), s);
        }
        return e;
    }
    S postfix() {
        S e = primary();
        while (at_sym("*")) {
            Span s = next().span;
            e = S::star(std::move(e), s);
        }
        return e;
    }

    S primary() {
        const Token& t = peek();
        Span at = t.span;
        if (t.kind == Tok::Sym && t.text == "(") {
            next();
            S e = choice();
            expect_sym(")");
            return e;
        }
        if (t.kind == Tok::Ident) {
            std::string name = next().text;
            if (at_sym("(")) return call(std::move(name), at);
            if (bound(name)) return S::var(std::move(name), at);
            return S::psi(std::move(name), at);
        }
        if (t.kind == Tok::Keyword) {
            if (t.text == "id") {
                next();
                return S::id(at);
            }
            if (t.text == "pre" || t.text == "post") {
                bool is_pre = next().text == "pre";
                expect_sym("[");
                std::string phi = ident();
                expect_sym(",");
                std::string sigma = ident();
                expect_sym("]");
                return is_pre ? S::pre(std::move(phi), std::move(sigma), at) : S::post(std::move(phi), std::move(sigma), at);
            }
            if (t.text == "let") return let_form();
            if (t.text == "def") return def_form();
            if (t.text == "if") return if_form();
            if (t.text == "fix") return fix_form();
            if (t.text == "repeat") return repeat_form();
        }
        fail({"id", "pre", "post", "identifier", "'('", "let", "def", "if", "fix", "repeat"});
    }

    S call(std::string fname, Span at) {
        expect_sym("(");
        std::vector<S> args;
        if (!at_sym(")")) {
            args.push_back(choice());
            while (at_sym(",")) {
                next();
                args.push_back(choice());
            }
        }
        expect_sym(")");
        return S::call(std::move(fname), std::move(args), at);
    }

    std::vector<S::Binding> bindings(std::vector<std::string>& introduced) {
        std::vector<S::Binding> out;
        do {
            if (!out.empty()) next();
            std::string x = ident();
            expect_sym("=");
            S rhs = choice();
            scopes_.push_back({x});
            introduced.push_back(x);
            out.emplace_back(std::move(x), std::move(rhs));
        } while (at_sym(","));
        return out;
    }

    S let_form() {
        Span at = next().span;
        std::size_t depth = scopes_.size();
        std::vector<std::string> names;
        auto bs = bindings(names);
        expect_kw("in");
        S body = choice();
        scopes_.resize(depth);
        return S::let(std::move(bs), std::move(body), at);
    }

    S def_form() {
        Span at = next().span;
        std::string fname = ident();
        expect_sym("(");
        std::vector<std::string> params;
        if (!at_sym(")")) {
            params.push_back(ident());
            while (at_sym(",")) {
                next();
                params.push_back(ident());
            }
        }
        expect_sym(")");
        expect_sym("{");
        scopes_.push_back(std::set<std::string>(params.begin(), params.end()));
        S fbody = choice();
        scopes_.pop_back();
        expect_sym("}");
        expect_kw("in");
        S body = choice();
        return S::def(std::move(fname), std::move(params), std::move(fbody), std::move(body), at);
    }

    S if_form() {
        Span at = next().span;
        S c = choice();
        expect_kw("then");
        S t = choice();
        expect_kw("else");
        S f = choice();
        return S::if_(std::move(c), std::move(t), std::move(f), at);
    }

    S fix_form() {
        Span at = next().span;
        std::string x = ident();
        expect_sym("=");
        S init = choice();
        std::size_t depth = scopes_.size();
        std::vector<S::Binding> consts;
        if (at_kw("with")) {
            next();
            // Constants are evaluated on the loop input, so they do not see each other or X.
            do {
                if (!consts.empty()) next();
                std::string y = ident();
                expect_sym("=");
                S rhs = choice();
                consts.emplace_back(std::move(y), std::move(rhs));
            } while (at_sym(","));
        }
        expect_kw("in");
        std::set<std::string> scope{x};
        for (const auto& [y, _] : consts) scope.insert(y);
        scopes_.push_back(std::move(scope));
        S body = choice();
        scopes_.resize(depth);
        return S::fix(std::move(x), std::move(init), std::move(consts), std::move(body), at);
    }

    S repeat_form() {
        Span at = next().span;
        std::string x;
        S init = S::id(at);
        if (peek().kind == Tok::Ident && peek(1).kind == Tok::Sym && peek(1).text == "=") {
            x = next().text;
            next();
            init = choice();
            expect_kw("in");
        }
        scopes_.push_back(x.empty() ? std::set<std::string>{} : std::set<std::string>{x});
        S body = choice();
        scopes_.pop_back();
        expect_kw("for");
        if (peek().kind != Tok::Int) fail({"positive integer"});
        const Token& n = next();
        long k = 0;
        auto [p, ec] = std::from_chars(n.text.data(), n.text.data() + n.text.size(), k);
        if (ec != std::errc{} || k < 1)
            throw Error(ErrorKind::Syntax, fmt::format("repeat count '{}' is not a positive integer", n.text), n.span);
        return S::repeat(std::move(x), std::move(init), std::move(body), k, at);
    }

    bool bound(const std::string& name) const {
        for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it)
            if (it->count(name)) return true;
        return false;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<std::set<std::string>> scopes_;
};

} // namespace

bool is_keyword(std::string_view s) {
    for (auto k : kKeywords)
        if (k == s) return true;
    return false;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !ident_start(s[0]) || is_keyword(s)) return false;
    for (char c : s)
        if (!ident_char(c)) return false;
    return true;
}

SurfaceExpr parse(std::string_view text) { return Parser(Lexer(text).run()).program(); }

CoreExpr parse_core(std::string_view text) { return expand(parse(text)); }

} // namespace mug
