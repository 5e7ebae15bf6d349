#include <mug/ctl.hpp>

#include <mug/generate.hpp>
#include <mug/syntax.hpp>
#include <mug/typecheck.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <set>

namespace mug {

using CK = CtlFormula::Kind;

Kripke make_kripke(LabeledGraph g) {
    if (g.graph.node_count() > 0 && !(g.labels.type() == LabelType::symset()))
        throw Error(ErrorKind::Structural,
                    "Kripke states must be labeled with symbol sets, found " + to_string(g.labels.type()));
    if (g.graph.edge_count() > 0 && !(g.graph.edge_type() == LabelType::unit()))
        throw Error(ErrorKind::Structural, "Kripke transitions must not carry labels");
    if (g.graph.node_count() == 0) g.labels = NodeLabeling({}, LabelType::symset());
    return Kripke{std::move(g.graph), std::move(g.labels)};
}

// ---------------------------------------------------------------------------

CtlFormula CtlFormula::atom(std::string p) {
    return CtlFormula(std::make_shared<const Node>(Node{Kind::Atom, std::move(p), {}}));
}
CtlFormula CtlFormula::tt() { return CtlFormula(std::make_shared<const Node>(Node{Kind::True, {}, {}})); }
CtlFormula CtlFormula::ff() { return CtlFormula(std::make_shared<const Node>(Node{Kind::False, {}, {}})); }
CtlFormula CtlFormula::unary(Kind k, CtlFormula f) {
    return CtlFormula(std::make_shared<const Node>(Node{k, {}, {std::move(f)}}));
}
CtlFormula CtlFormula::binary(Kind k, CtlFormula l, CtlFormula r) {
    return CtlFormula(std::make_shared<const Node>(Node{k, {}, {std::move(l), std::move(r)}}));
}

std::size_t CtlFormula::depth() const {
    std::size_t d = 0;
    for (const auto& s : n_->subs) d = std::max(d, s.depth() + 1);
    return d;
}

bool CtlFormula::adequate() const {
    switch (kind()) {
        case Kind::EF:
        case Kind::AX:
        case Kind::AF:
        case Kind::AG:
        case Kind::AU: return false;
        default:
            for (const auto& s : n_->subs)
                if (!s.adequate()) return false;
            return true;
    }
}

bool operator==(const CtlFormula& a, const CtlFormula& b) {
    return a.n_ == b.n_ || (a.n_->kind == b.n_->kind && a.n_->name == b.n_->name && a.n_->subs == b.n_->subs);
}

// ---------------------------------------------------------------------------

namespace {

struct CtlToken {
    std::string text;
    bool atom = false;
    std::size_t pos = 0;
};

std::vector<CtlToken> lex_ctl(std::string_view s) {
    std::vector<CtlToken> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t b = i;
            while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            std::string w(s.substr(b, i - b));
            bool atom = std::islower(static_cast<unsigned char>(w[0])) && w != "tt" && w != "ff";
            out.push_back({std::move(w), atom, b});
        } else if (std::string_view("!&|()[]").find(c) != std::string_view::npos) {
            out.push_back({std::string(1, c), false, i});
            ++i;
        } else {
            throw Error(ErrorKind::Syntax, fmt::format("formula offset {}: unexpected character '{}'", i, c));
        }
    }
    out.push_back({"", false, s.size()});
    return out;
}

class CtlParser {
public:
    explicit CtlParser(std::vector<CtlToken> t) : t_(std::move(t)) {}

    CtlFormula all() {
        CtlFormula f = disj();
        if (!peek().text.empty()) fail("'&', '|' or end of formula");
        return f;
    }

private:
    const CtlToken& peek() const { return t_[pos_]; }
    bool at(std::string_view s) const { return !peek().atom && peek().text == s; }
    void expect(std::string_view s) {
        if (!at(s)) fail(fmt::format("'{}'", s));
        ++pos_;
    }
    [[noreturn]] void fail(const std::string& expected) const {
        std::string found = peek().text.empty() ? "end of formula" : "'" + peek().text + "'";
        throw Error(ErrorKind::Syntax, fmt::format("formula offset {}: found {}, expected {}", peek().pos, found, expected));
    }

    CtlFormula disj() {
        CtlFormula f = conj();
        while (at("|")) {
            ++pos_;
            f = CtlFormula::binary(CK::Or, f, conj());
        }
        return f;
    }
    CtlFormula conj() {
        CtlFormula f = unary();
        while (at("&")) {
            ++pos_;
            f = CtlFormula::binary(CK::And, f, unary());
        }
        return f;
    }
    CtlFormula until(CK k) {
        if (at("[")) {
            ++pos_;
            CtlFormula l = disj();
            expect("U");
            CtlFormula r = disj();
            expect("]");
            return CtlFormula::binary(k, l, r);
        }
        CtlFormula l = unary();
        expect("U");
        return CtlFormula::binary(k, l, unary());
    }
    CtlFormula unary() {
        const CtlToken& t = peek();
        if (t.atom) {
            ++pos_;
            return CtlFormula::atom(t.text);
        }
        static const std::pair<std::string_view, CK> prefix[] = {{"EX", CK::EX}, {"EG", CK::EG}, {"EF", CK::EF},
                                                                 {"AX", CK::AX}, {"AF", CK::AF}, {"AG", CK::AG}};
        for (const auto& [word, k] : prefix)
            if (t.text == word) {
                ++pos_;
                return CtlFormula::unary(k, unary());
            }
        if (t.text == "tt") return ++pos_, CtlFormula::tt();
        if (t.text == "ff") return ++pos_, CtlFormula::ff();
        if (t.text == "!") return ++pos_, CtlFormula::unary(CK::Not, unary());
        if (t.text == "E") return ++pos_, until(CK::EU);
        if (t.text == "A") return ++pos_, until(CK::AU);
        if (t.text == "(") {
            ++pos_;
            CtlFormula f = disj();
            expect(")");
            return f;
        }
        fail("a formula");
    }

    std::vector<CtlToken> t_;
    std::size_t pos_ = 0;
};

std::string_view op_name(CK k) {
    switch (k) {
        case CK::EX: return "EX";
        case CK::EG: return "EG";
        case CK::EF: return "EF";
        case CK::AX: return "AX";
        case CK::AF: return "AF";
        case CK::AG: return "AG";
        case CK::EU: return "E";
        case CK::AU: return "A";
        default: return "?";
    }
}

} // namespace

CtlFormula parse_ctl(std::string_view text) { return CtlParser(lex_ctl(text)).all(); }

std::string to_string(const CtlFormula& f) {
    switch (f.kind()) {
        case CK::Atom: return f.name();
        case CK::True: return "tt";
        case CK::False: return "ff";
        case CK::Not: return "!" + to_string(f.sub());
        case CK::And: return fmt::format("({} & {})", to_string(f.sub(0)), to_string(f.sub(1)));
        case CK::Or: return fmt::format("({} | {})", to_string(f.sub(0)), to_string(f.sub(1)));
        case CK::EU:
        case CK::AU: return fmt::format("{}[{} U {}]", op_name(f.kind()), to_string(f.sub(0)), to_string(f.sub(1)));
        default: return fmt::format("{} {}", op_name(f.kind()), to_string(f.sub()));
    }
}

CtlFormula eliminate_derived(const CtlFormula& f) {
    using F = CtlFormula;
    auto no = [](F x) { return F::unary(CK::Not, std::move(x)); };
    switch (f.kind()) {
        case CK::Atom:
        case CK::True:
        case CK::False: return f;
        case CK::Not:
        case CK::EX:
        case CK::EG: return F::unary(f.kind(), eliminate_derived(f.sub()));
        case CK::And:
        case CK::Or:
        case CK::EU: return F::binary(f.kind(), eliminate_derived(f.sub(0)), eliminate_derived(f.sub(1)));
        case CK::EF: return F::binary(CK::EU, F::tt(), eliminate_derived(f.sub()));
        case CK::AX: return no(F::unary(CK::EX, no(eliminate_derived(f.sub()))));
        case CK::AF: return no(F::unary(CK::EG, no(eliminate_derived(f.sub()))));
        case CK::AG: return no(F::binary(CK::EU, F::tt(), no(eliminate_derived(f.sub()))));
        case CK::AU: {
            // A[a U b] = !E[!b U (!a & !b)] & !EG !b
            F a = eliminate_derived(f.sub(0));
            F b = eliminate_derived(f.sub(1));
            F left = no(F::binary(CK::EU, no(b), F::binary(CK::And, no(a), no(b))));
            return F::binary(CK::And, left, no(F::unary(CK::EG, no(b))));
        }
    }
    return f;
}

// ---------------------------------------------------------------------------

SurfaceExpr translate(const CtlFormula& f) {
    using S = SurfaceExpr;
    auto post_or = [] { return S::post("id3", "or"); };
    auto X = [] { return S::var("X"); };
    switch (f.kind()) {
        case CK::Atom: return S::psi(f.name());
        case CK::True: return S::psi("tt");
        case CK::False: return S::psi("ff");
        case CK::Not: return S::seq(translate(f.sub()), S::psi("not"));
        case CK::And: return S::seq(S::par(translate(f.sub(0)), translate(f.sub(1))), S::psi("and"));
        case CK::Or: return S::seq(S::par(translate(f.sub(0)), translate(f.sub(1))), S::psi("or"));
        case CK::EX: return S::seq(translate(f.sub()), post_or());
        case CK::EG: {
            // fix X = tt with Y1 = M(f) in (Y1 || X;post[id3,or]);and
            S body = S::seq(S::par(S::var("Y1"), S::seq(X(), post_or())), S::psi("and"));
            return S::fix("X", S::psi("tt"), {{"Y1", translate(f.sub())}}, body);
        }
        case CK::EU: {
            // fix X = ff with Y1 = M(f1), Y2 = M(f2) in (Y2 || (Y1 || X;post[id3,or]);and);or
            S step = S::seq(S::par(S::var("Y1"), S::seq(X(), post_or())), S::psi("and"));
            S body = S::seq(S::par(S::var("Y2"), step), S::psi("or"));
            return S::fix("X", S::psi("ff"), {{"Y1", translate(f.sub(0))}, {"Y2", translate(f.sub(1))}}, body);
        }
        default: break;
    }
    throw Error(ErrorKind::Structural, "translate expects the adequate CTL fragment, found " + to_string(f));
}

namespace {
void collect_atoms(const CtlFormula& f, std::set<std::string>& out) {
    if (f.kind() == CK::Atom) out.insert(f.name());
    for (std::size_t i = 0; i < f.arity(); ++i) collect_atoms(f.sub(i), out);
}
} // namespace

Registry ctl_registry(const CtlFormula& f) {
    std::set<std::string> atoms;
    collect_atoms(f, atoms);
    RegistryBuilder b = builtin_builder(0.0);
    Registry base = builtin_registry(0.0);
    for (const std::string& p : atoms) {
        if (!is_identifier(p) || base.has_psi(p))
            throw Error(ErrorKind::Registration, fmt::format("atomic proposition '{}' clashes with a builtin symbol", p));
        b.add(PsiFun::mono(p, LabelType::symset(), LabelType::boolean(),
                           [p](std::span<const Value>, const Value& x) { return Value(x.as_symset().contains(p)); }));
    }
    return std::move(b).build();
}

NodeLabeling check(const Kripke& k, const CtlFormula& f, const RunParams& p, Semantics sem, const Observer* obs) {
    CtlFormula g = eliminate_derived(f);
    CoreExpr e = expand(translate(g));
    Registry r = ctl_registry(g);
    std::optional<LabelType> edge;
    if (k.graph.edge_count() > 0) edge = k.graph.edge_type();
    GnnType t = infer(e, LabelType::symset(), r, edge);
    if (!(t.output == LabelType::boolean()))
        throw Error(ErrorKind::TypeMismatch, "translated formula has output type " + to_string(t.output));
    RunParams q = p;
    q.epsilon = 0.0;
    return sem == Semantics::Denotational ? eval_denot(e, k.graph, k.labels, r, q, obs)
                                          : run_sos(e, k.graph, k.labels, r, q, obs);
}

// ---------------------------------------------------------------------------

Kripke random_kripke(std::size_t states, std::size_t avg_degree, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    std::vector<Value> labels;
    labels.reserve(states);
    for (std::size_t s = 0; s < states; ++s) {
        auto d = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(2 * avg_degree)));
        for (std::size_t j = 0; j < d; ++j)
            edges.push_back({s, static_cast<NodeId>(uniform_int(rng, 0, static_cast<long>(states) - 1))});
        std::vector<std::string> ap;
        for (const char* a : {"p", "q", "r"})
            if (coin(rng, 50)) ap.emplace_back(a);
        labels.emplace_back(SymSet(std::move(ap)));
    }
    Graph g(states, std::move(edges));
    return Kripke{std::move(g), NodeLabeling(std::move(labels), LabelType::symset())};
}

CtlFormula random_formula(std::size_t max_depth, std::mt19937_64& rng) {
    static const CK unary[] = {CK::Not, CK::EX, CK::EG, CK::EF, CK::AX, CK::AF, CK::AG};
    static const CK binary[] = {CK::And, CK::Or, CK::EU, CK::AU};
    if (max_depth == 0 || coin(rng, 20)) {
        switch (rng() % 5) {
            case 0: return CtlFormula::atom("p");
            case 1: return CtlFormula::atom("q");
            case 2: return CtlFormula::atom("r");
            case 3: return CtlFormula::tt();
            default: return CtlFormula::ff();
        }
    }
    if (coin(rng, 50)) return CtlFormula::unary(unary[rng() % 7], random_formula(max_depth - 1, rng));
    CK k = binary[rng() % 4];
    CtlFormula l = random_formula(max_depth - 1, rng);
    return CtlFormula::binary(k, l, random_formula(max_depth - 1, rng));
}

std::vector<CtlFormula> shallow_formulas() {
    std::vector<CtlFormula> leaves{CtlFormula::atom("p"), CtlFormula::atom("q"), CtlFormula::atom("r"),
                                   CtlFormula::tt(), CtlFormula::ff()};
    std::vector<CtlFormula> out = leaves;
    for (CK k : {CK::Not, CK::EX, CK::EG, CK::EF, CK::AX, CK::AF, CK::AG})
        for (const auto& a : leaves) out.push_back(CtlFormula::unary(k, a));
    for (CK k : {CK::And, CK::Or, CK::EU, CK::AU})
        for (const auto& a : leaves)
            for (const auto& b : leaves) out.push_back(CtlFormula::binary(k, a, b));
    return out;
}

} // namespace mug
