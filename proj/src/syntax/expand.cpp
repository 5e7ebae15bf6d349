#include <mug/registry.hpp>
#include <mug/syntax.hpp>

#include <fmt/format.h>

#include <map>
#include <set>

namespace mug {

namespace {

using S = SurfaceExpr;
using SK = SurfaceExpr::Kind;
using C = CoreExpr;

struct Closure;

// Variables are bound to closed core terms, which makes substitution capture-free by construction.
struct Env {
    std::map<std::string, C> vars;
    std::map<std::string, std::shared_ptr<const Closure>> fns;
};

struct Closure {
    std::vector<std::string> params;
    S body;
    Env env; // definition-time environment; the function itself is not visible (no recursion)
};

bool mentions(const S& e, const std::set<std::string>& names) {
    if (names.empty()) return false;
    if (e.kind() == SK::Var) return names.count(e.name()) > 0;
    for (const auto& [_, rhs] : e.bindings())
        if (mentions(rhs, names)) return true;
    for (const S& k : e.kids())
        if (mentions(k, names)) return true;
    return false;
}

std::set<std::string> without(std::set<std::string> s, const std::vector<std::string>& names) {
    for (const auto& n : names) s.erase(n);
    return s;
}

// A fix variable must not occur in the right operand of `;`. Let-bound names whose
// definition mentions a watched variable are watched as well.
void check_positions(const S& e, const std::set<std::string>& watched, bool rhs, const std::string& binder) {
    if (watched.empty()) return;
    switch (e.kind()) {
        case SK::Var:
            if (rhs && watched.count(e.name()))
                throw Error(ErrorKind::VariablePosition,
                            fmt::format("variable '{}' of '{}' appears on the right-hand side of ';'", e.name(), binder),
                            e.span());
            return;
        case SK::Seq:
            check_positions(e.kid(0), watched, rhs, binder);
            check_positions(e.kid(1), watched, true, binder);
            return;
        case SK::Let: {
            std::set<std::string> w = watched;
            for (const auto& [x, v] : e.bindings()) {
                check_positions(v, w, rhs, binder);
                if (mentions(v, w))
                    w.insert(x);
                else
                    w.erase(x);
            }
            check_positions(e.kid(0), w, rhs, binder);
            return;
        }
        case SK::Def:
            check_positions(e.kid(0), without(watched, e.params()), false, binder);
            check_positions(e.kid(1), watched, rhs, binder);
            return;
        case SK::Fix: {
            check_positions(e.kid(0), watched, rhs, binder);
            std::vector<std::string> shadow{e.name()};
            for (const auto& [y, v] : e.bindings()) {
                check_positions(v, watched, rhs, binder);
                shadow.push_back(y);
            }
            check_positions(e.kid(1), without(watched, shadow), rhs, binder);
            return;
        }
        case SK::Repeat:
            check_positions(e.kid(0), watched, rhs, binder);
            check_positions(e.kid(1), e.name().empty() ? watched : without(watched, {e.name()}), rhs, binder);
            return;
        default:
            for (const S& k : e.kids()) check_positions(k, watched, rhs, binder);
    }
}

C left_nested_par(std::vector<C> parts, Span s) {
    C acc = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) acc = C::par(acc, parts[i], s);
    return acc;
}

// Projection selecting slot i (0-based) of a left-nested k-tuple sitting in the left
// component of the loop label: (((c1,c2),c3),x) and so on.
C slot_projection(std::size_t i, std::size_t k, Span s) {
    C p = C::psi("pL", s);
    std::size_t lefts = (i == 0) ? k - 1 : k - 1 - i;
    for (std::size_t j = 0; j < lefts; ++j) p = C::seq(p, C::psi("pL", s), s);
    if (i > 0) p = C::seq(p, C::psi("pR", s), s);
    return p;
}

class Expander {
public:
    C run(const S& e, const Env& env) {
        Span sp = e.span();
        switch (e.kind()) {
            case SK::Id: return C::id(sp);
            case SK::Psi: return C::psi(e.name(), sp);
            case SK::Pre: return C::pre(e.name(), e.sigma(), sp);
            case SK::Post: return C::post(e.name(), e.sigma(), sp);
            case SK::Seq: return C::seq(run(e.kid(0), env), run(e.kid(1), env), sp);
            case SK::Par: return C::par(run(e.kid(0), env), run(e.kid(1), env), sp);
            case SK::Choice: return C::choice(run(e.kid(0), env), run(e.kid(1), env), sp);
            case SK::Star: return C::star(run(e.kid(0), env), sp);
            case SK::Var: {
                auto it = env.vars.find(e.name());
                if (it == env.vars.end())
                    throw Error(ErrorKind::UnboundVariable, fmt::format("unbound variable '{}'", e.name()), sp);
                return it->second;
            }
            case SK::Let: {
                Env inner = env;
                for (const auto& [x, v] : e.bindings()) {
                    C value = run(v, inner);
                    inner.vars.insert_or_assign(x, std::move(value));
                }
                return run(e.kid(0), inner);
            }
            case SK::Def: {
                Env inner = env;
                inner.fns.insert_or_assign(e.name(), std::make_shared<const Closure>(Closure{e.params(), e.kid(0), env}));
                return run(e.kid(1), inner);
            }
            case SK::Call: return call(e, env);
            case SK::If: {
                C c = run(e.kid(0), env);
                return C::seq(C::par(c, C::id(sp), sp), C::choice(run(e.kid(1), env), run(e.kid(2), env), sp), sp);
            }
            case SK::Fix: return fix(e, env);
            case SK::Repeat: return repeat(e, env);
        }
        throw Error(ErrorKind::Structural, "unknown surface node", sp);
    }

private:
    C call(const S& e, const Env& env) {
        auto it = env.fns.find(e.name());
        if (it == env.fns.end())
            throw Error(ErrorKind::UnboundVariable, fmt::format("call to undefined function '{}'", e.name()), e.span());
        const Closure& f = *it->second;
        if (f.params.size() != e.kids().size())
            throw Error(ErrorKind::ArityMismatch,
                        fmt::format("'{}' takes {} argument(s), {} given", e.name(), f.params.size(), e.kids().size()),
                        e.span());
        // `let params = args in fbody`, with args closed over the caller's scope.
        Env inner = f.env;
        for (std::size_t i = 0; i < f.params.size(); ++i) inner.vars.insert_or_assign(f.params[i], run(e.kid(i), env));
        return run(f.body, inner);
    }

    C fix(const S& e, const Env& env) {
        Span sp = e.span();
        std::set<std::string> watched{e.name()};
        for (const auto& [y, _] : e.bindings()) watched.insert(y);
        check_positions(e.kid(1), watched, false, "fix " + e.name());

        C init = run(e.kid(0), env);
        if (e.bindings().empty()) {
            Env inner = env;
            inner.vars.insert_or_assign(e.name(), C::id(sp));
            return C::seq(init, C::star(run(e.kid(1), inner), sp), sp);
        }
        const std::size_t k = e.bindings().size();
        std::vector<C> consts, slots;
        Env inner = env;
        for (std::size_t i = 0; i < k; ++i) {
            consts.push_back(run(e.bindings()[i].second, env));
            slots.push_back(slot_projection(i, k, sp));
            inner.vars.insert_or_assign(e.bindings()[i].first, slots.back());
        }
        inner.vars.insert_or_assign(e.name(), C::psi("pR", sp));
        C start = C::par(left_nested_par(consts, sp), init, sp);
        C loop = C::par(left_nested_par(slots, sp), run(e.kid(1), inner), sp);
        return C::seq(C::seq(start, C::star(loop, sp), sp), C::psi("pR", sp), sp);
    }

    // repeat X = N in N' for k
    //   ~> (fix X = zero || N in if X;pL;lt_k then (X;pL;succ) || N'[X;pR/X] else X);pR
    // The short form `repeat N' for k` applies N' to the loop state, i.e. uses X;N' with a fresh X.
    C repeat(const S& e, const Env& env) {
        Span sp = e.span();
        const std::string x = e.name().empty() ? std::string("%state") : e.name();
        auto X = [&] { return S::var(x, sp); };
        S body = e.name().empty() ? S::seq(X(), e.kid(1), sp) : e.kid(1);
        S counter = S::seq(X(), S::psi("pL", sp), sp);
        S guard = S::seq(counter, S::psi(lt_name(e.count()), sp), sp);
        S step = S::par(S::seq(counter, S::psi("succ", sp), sp),
                        S::let({{x, S::seq(X(), S::psi("pR", sp), sp)}}, body, sp), sp);
        S loop = S::fix(x, S::par(S::psi("zero", sp), e.kid(0), sp), {}, S::if_(guard, step, X(), sp), sp);
        return run(S::seq(loop, S::psi("pR", sp), sp), env);
    }
};

} // namespace

CoreExpr expand(const SurfaceExpr& e) { return Expander().run(e, Env{}); }

} // namespace mug
