#include <mug/typecheck.hpp>

#include <mug/syntax.hpp>

#include <fmt/format.h>

namespace mug {

std::string to_string(const GnnType& t) { return fmt::format("{} -> {}", to_string(t.input), to_string(t.output)); }

namespace {

[[noreturn]] void mismatch(const CoreExpr& e, const std::string& expected, const LabelType& found,
                           const std::string& what = "input") {
    throw Error(ErrorKind::TypeMismatch,
                fmt::format("in '{}': expected {} {}, found {}", pretty(e), what, expected, to_string(found)), e.span());
}

std::string declared(const std::optional<LabelType>& t, std::string_view fallback) {
    return t ? to_string(*t) : std::string(fallback);
}

class Checker {
public:
    Checker(const Registry& r, const std::optional<LabelType>& edge) : r_(r), edge_(edge) {}

    LabelType out(const CoreExpr& e, const LabelType& in) {
        using K = CoreExpr::Kind;
        switch (e.kind()) {
            case K::Id: return in;
            case K::Psi: {
                const PsiFun& f = r_.lookup_psi(e.name());
                if (auto t = f.signature(in)) return *t;
                mismatch(e, declared(f.in_type, "a type accepted by '" + f.name + "'"), in);
            }
            case K::Pre:
            case K::Post: {
                const PhiFun& phi = r_.lookup_phi(e.phi());
                const SigmaFun& sigma = r_.lookup_sigma(e.sigma());
                auto msg = phi.signature(in, edge_);
                if (!msg) {
                    if (edge_ && phi.node_type && *phi.node_type == in && phi.edge_type)
                        throw Error(ErrorKind::TypeMismatch,
                                    fmt::format("in '{}': expected edge label type {}, found {}", pretty(e),
                                                to_string(*phi.edge_type), to_string(*edge_)),
                                    e.span());
                    mismatch(e, declared(phi.node_type, "a node type accepted by '" + phi.name + "'"), in);
                }
                if (auto t = sigma.signature(*msg, in)) return *t;
                throw Error(ErrorKind::TypeMismatch,
                            fmt::format("in '{}': '{}' cannot aggregate messages of type {} at nodes of type {}",
                                        pretty(e), sigma.name, to_string(*msg), to_string(in)),
                            e.span());
            }
            case K::Seq: return out(e.right(), out(e.left(), in));
            case K::Par: return LabelType::prod(out(e.left(), in), out(e.right(), in));
            case K::Prod:
                if (!in.is_prod()) mismatch(e, "a product", in);
                return LabelType::prod(out(e.left(), in.left()), out(e.right(), in.right()));
            case K::Choice: {
                if (!in.is_prod()) mismatch(e, "(bool,T)", in);
                if (!(in.left() == LabelType::boolean()))
                    throw Error(ErrorKind::NonBooleanGuard,
                                fmt::format("in '{}': choice guard has type {}, expected bool", pretty(e),
                                            to_string(in.left())),
                                e.span());
                LabelType a = out(e.left(), in.right());
                LabelType b = out(e.right(), in.right());
                if (!(a == b))
                    throw Error(ErrorKind::TypeMismatch,
                                fmt::format("in '{}': branches produce {} and {}", pretty(e), to_string(a), to_string(b)),
                                e.span());
                return a;
            }
            case K::Star: {
                LabelType t = out(e.body(), in);
                if (!(t == in)) mismatch(e, to_string(in), t, "body output");
                return in;
            }
        }
        throw Error(ErrorKind::Structural, "unknown core node", e.span());
    }

private:
    const Registry& r_;
    const std::optional<LabelType>& edge_;
};

} // namespace

GnnType infer(const CoreExpr& e, const LabelType& in, const Registry& r, const std::optional<LabelType>& edge_type) {
    return GnnType{in, Checker(r, edge_type).out(e, in)};
}

} // namespace mug
