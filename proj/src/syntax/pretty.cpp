#include <mug/syntax.hpp>

#include <fmt/format.h>

namespace mug {

namespace {

// Binding strength: choice < par < seq < star < atoms. Macro forms sit below choice
// because their bodies extend as far right as possible.
constexpr int kMacro = -1, kChoice = 0, kPar = 1, kSeq = 2, kStar = 3, kAtom = 4;

int prec(const CoreExpr& e) {
    switch (e.kind()) {
        case CoreExpr::Kind::Choice: return kChoice;
        case CoreExpr::Kind::Par:
        case CoreExpr::Kind::Prod: return kPar;
        case CoreExpr::Kind::Seq: return kSeq;
        case CoreExpr::Kind::Star: return kStar;
        default: return kAtom;
    }
}

int prec(const SurfaceExpr& e) {
    using K = SurfaceExpr::Kind;
    switch (e.kind()) {
        case K::Choice: return kChoice;
        case K::Par: return kPar;
        case K::Seq: return kSeq;
        case K::Star: return kStar;
        case K::Let:
        case K::Def:
        case K::If:
        case K::Fix:
        case K::Repeat: return kMacro;
        default: return kAtom;
    }
}

// `spaced` is set for `||` chains that are direct operands of `(+)`, so that
// `a (+) b || c` reads the way it groups.
struct Printer {
    template <class E>
    std::string child(const E& c, int min_prec, bool spaced) {
        if (prec(c) < min_prec) return "(" + emit(c, false) + ")";
        return emit(c, spaced);
    }

    template <class E>
    std::string binary(const E& l, const E& r, int p, std::string_view sep, bool spaced) {
        return child(l, p, spaced) + std::string(sep) + child(r, p + 1, spaced);
    }

    std::string emit(const CoreExpr& e, bool spaced) {
        using K = CoreExpr::Kind;
        switch (e.kind()) {
            case K::Id: return "id";
            case K::Psi: return e.name();
            case K::Pre: return fmt::format("pre[{},{}]", e.phi(), e.sigma());
            case K::Post: return fmt::format("post[{},{}]", e.phi(), e.sigma());
            case K::Seq: return binary(e.left(), e.right(), kSeq, ";", false);
            case K::Par: return binary(e.left(), e.right(), kPar, spaced ? " || " : "||", spaced);
            case K::Prod: return binary(e.left(), e.right(), kPar, spaced ? " (x) " : "(x)", spaced);
            case K::Choice: return binary(e.left(), e.right(), kChoice, " (+) ", true);
            case K::Star: return child(e.body(), kStar, false) + "*";
        }
        return "?";
    }

    std::string emit(const SurfaceExpr& e, bool spaced) {
        using K = SurfaceExpr::Kind;
        auto bindings = [&](const std::vector<SurfaceExpr::Binding>& bs) {
            std::vector<std::string> parts;
            for (const auto& [x, v] : bs) parts.push_back(x + " = " + child(v, kChoice, false));
            return fmt::format("{}", fmt::join(parts, ", "));
        };
        switch (e.kind()) {
            case K::Id: return "id";
            case K::Psi:
            case K::Var: return e.name();
            case K::Pre: return fmt::format("pre[{},{}]", e.name(), e.sigma());
            case K::Post: return fmt::format("post[{},{}]", e.name(), e.sigma());
            case K::Seq: return binary(e.kid(0), e.kid(1), kSeq, ";", false);
            case K::Par: return binary(e.kid(0), e.kid(1), kPar, spaced ? " || " : "||", spaced);
            case K::Choice: return binary(e.kid(0), e.kid(1), kChoice, " (+) ", true);
            case K::Star: return child(e.kid(0), kStar, false) + "*";
            case K::Let: return fmt::format("let {} in {}", bindings(e.bindings()), child(e.kid(0), kMacro, false));
            case K::Def:
                return fmt::format("def {}({}) {{ {} }} in {}", e.name(), fmt::join(e.params(), ", "),
                                   child(e.kid(0), kMacro, false), child(e.kid(1), kMacro, false));
            case K::Call: {
                std::vector<std::string> args;
                for (const auto& a : e.kids()) args.push_back(child(a, kChoice, false));
                return fmt::format("{}({})", e.name(), fmt::join(args, ", "));
            }
            case K::If:
                return fmt::format("if {} then {} else {}", child(e.kid(0), kChoice, false),
                                   child(e.kid(1), kChoice, false), child(e.kid(2), kMacro, false));
            case K::Fix: {
                std::string consts = e.bindings().empty() ? "" : " with " + bindings(e.bindings());
                return fmt::format("fix {} = {}{} in {}", e.name(), child(e.kid(0), kChoice, false), consts,
                                   child(e.kid(1), kMacro, false));
            }
            case K::Repeat:
                if (e.name().empty())
                    return fmt::format("repeat {} for {}", child(e.kid(1), kChoice, false), e.count());
                return fmt::format("repeat {} = {} in {} for {}", e.name(), child(e.kid(0), kChoice, false),
                                   child(e.kid(1), kChoice, false), e.count());
        }
        return "?";
    }
};

} // namespace

std::string pretty(const CoreExpr& e) { return Printer{}.child(e, kMacro, false); }
std::string pretty(const SurfaceExpr& e) { return Printer{}.child(e, kMacro, false); }

} // namespace mug
