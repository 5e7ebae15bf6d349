#include <mug/eval.hpp>

#include <mug/syntax.hpp>

#include <fmt/format.h>

namespace mug {

namespace {
using C = CoreExpr;
using K = CoreExpr::Kind;

[[noreturn]] void stuck(const C& e, const std::string& why) {
    throw Error(ErrorKind::Stuck, fmt::format("no rule applies to '{}': {}", pretty(e), why), e.span());
}
} // namespace

Machine::Machine(const Graph& g, const Registry& r, const RunParams& p)
    : g_(g), r_(r.with_epsilon(p.epsilon)), p_(p), rng_(p.schedule.seed) {}

StepResult Machine::step(const Config& c) {
    if (c.expr.is_id()) return StepResult{std::nullopt, c.labeling}; // ID
    return StepResult{rewrite(c.expr, c.labeling), std::nullopt};
}

Config Machine::rewrite(const C& e, const NodeLabeling& eta) {
    Span sp = e.span();
    switch (e.kind()) {
        case K::Id: stuck(e, "iota is final");
        case K::Psi: return {C::id(sp), apply_psi(r_.lookup_psi(e.name()), eta)}; // APPLY
        case K::Pre:                                                                // PREIMG
            return {C::id(sp), apply_image(r_.lookup_phi(e.phi()), r_.lookup_sigma(e.sigma()), g_, eta, true)};
        case K::Post: // POSTIMG
            return {C::id(sp), apply_image(r_.lookup_phi(e.phi()), r_.lookup_sigma(e.sigma()), g_, eta, false)};
        case K::Seq: {
            if (e.left().is_id()) return {e.right(), eta}; // SEQ2
            Config l = rewrite(e.left(), eta);             // SEQ1
            return {C::seq(std::move(l.expr), e.right(), sp), std::move(l.labeling)};
        }
        case K::Par: return {C::prod(e.left(), e.right(), sp), pair_labelings(eta, eta)}; // SPLIT
        case K::Prod: {
            bool l_done = e.left().is_id(), r_done = e.right().is_id();
            if (l_done && r_done) return {C::id(sp), eta}; // MERGE
            if (!eta.type().is_prod()) stuck(e, "product applied to non-pair labels");
            bool go_left = !l_done;
            if (!l_done && !r_done) {
                switch (p_.schedule.kind) {
                    case Schedule::Kind::LeftFirst: go_left = true; break;
                    case Schedule::Kind::RightFirst: go_left = false; break;
                    case Schedule::Kind::RandomSeeded: go_left = (rng_() & 1U) == 0; break;
                }
            }
            if (go_left) { // PAR1
                Config l = rewrite(e.left(), project_left(eta));
                return {C::prod(std::move(l.expr), e.right(), sp), pair_labelings(l.labeling, project_right(eta))};
            }
            Config r = rewrite(e.right(), project_right(eta)); // PAR2
            return {C::prod(e.left(), std::move(r.expr), sp), pair_labelings(project_left(eta), r.labeling)};
        }
        case K::Choice: {
            if (!eta.type().is_prod() || !(eta.type().left() == LabelType::boolean()))
                stuck(e, "choice applied to labels of type " + to_string(eta.type()));
            bool all = guard_all_true(eta);
            return {all ? e.left() : e.right(), project_right(eta)}; // CHOICE1 / CHOICE2
        }
        case K::Star: { // STAR
            if (e.unfolds() >= p_.max_fix_iters)
                throw Error(ErrorKind::FixpointDivergence,
                            fmt::format("'{}' did not converge within {} iterations", pretty(e), p_.max_fix_iters), sp);
            const C& n = e.body();
            C again = C::star(n, sp, e.unfolds() + 1);
            C test = C::par(C::seq(C::par(C::id(sp), n, sp), C::psi("eqeps", sp), sp), C::id(sp), sp);
            C cont = C::choice(C::id(sp), C::seq(n, again, sp), sp);
            return {C::seq(test, cont, sp), eta};
        }
    }
    stuck(e, "unknown node");
}

StepResult step(const Config& c, const Graph& g, const Registry& r, const RunParams& p) {
    return Machine(g, r, p).step(c);
}

NodeLabeling run_sos(const CoreExpr& e, const Graph& g, const NodeLabeling& eta, const Registry& r,
                     const RunParams& p, const Observer* obs) {
    if (eta.size() != g.node_count())
        throw Error(ErrorKind::Structural,
                    fmt::format("labeling has {} entries for a graph of {} nodes", eta.size(), g.node_count()));
    Machine m(g, r, p);
    Config c{e, eta};
    for (unsigned long i = 0; i < p.max_steps; ++i) {
        StepResult s = m.step(c);
        if (s.is_final()) return std::move(*s.final);
        c = std::move(*s.next);
        if (obs && obs->on_step) obs->on_step(c);
    }
    throw Error(ErrorKind::StepsExhausted, fmt::format("no final configuration after {} steps", p.max_steps));
}

} // namespace mug
