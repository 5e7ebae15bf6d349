#include <mug/eval.hpp>

#include <mug/syntax.hpp>

#include <fmt/format.h>

namespace mug {

std::string to_string(const Schedule& s) {
    switch (s.kind) {
        case Schedule::Kind::LeftFirst: return "left-first";
        case Schedule::Kind::RightFirst: return "right-first";
        case Schedule::Kind::RandomSeeded: return fmt::format("random({})", s.seed);
    }
    return "?";
}

NodeLabeling apply_psi(const PsiFun& f, const NodeLabeling& eta) {
    auto out_type = f.signature(eta.type());
    if (!out_type)
        throw Error(ErrorKind::TypeMismatch,
                    fmt::format("psi '{}' applied to labels of type {}", f.name, to_string(eta.type())));
    std::span<const Value> all = all_labels(eta);
    std::vector<Value> out;
    out.reserve(eta.size());
    for (NodeId v = 0; v < eta.size(); ++v) out.push_back(f.apply(all, eta[v]));
    return NodeLabeling(std::move(out), *out_type);
}

NodeLabeling apply_image(const PhiFun& phi, const SigmaFun& sigma, const Graph& g, const NodeLabeling& eta,
                         bool incoming) {
    if (eta.size() != g.node_count())
        throw Error(ErrorKind::Structural,
                    fmt::format("labeling has {} entries for a graph of {} nodes", eta.size(), g.node_count()));
    std::optional<LabelType> edge;
    if (g.edge_count() > 0) edge = g.edge_type();
    auto msg_type = phi.signature(eta.type(), edge);
    if (!msg_type)
        throw Error(ErrorKind::TypeMismatch, fmt::format("phi '{}' applied to node labels of type {}", phi.name,
                                                         to_string(eta.type())));
    auto out_type = sigma.signature(*msg_type, eta.type());
    if (!out_type)
        throw Error(ErrorKind::TypeMismatch,
                    fmt::format("sigma '{}' applied to messages of type {}", sigma.name, to_string(*msg_type)));
    std::vector<Value> out;
    out.reserve(eta.size());
    std::vector<Value> msgs;
    for (NodeId v = 0; v < eta.size(); ++v) {
        msgs.clear();
        // Incoming: f(eta(u), xi(u,v), eta(v)); outgoing: f(eta(u), xi(v,u), eta(v)).
        for (const Incidence& inc : incoming ? g.in_edges(v) : g.out_edges(v))
            msgs.push_back(phi.apply(eta[inc.other], g.edge_label(inc.edge), eta[v]));
        out.push_back(sigma.apply(msgs, eta[v]));
    }
    return NodeLabeling(std::move(out), *out_type);
}

bool guard_all_true(const NodeLabeling& eta) {
    for (const Value& x : eta.values())
        if (!x.left().as_bool()) return false;
    return true;
}

namespace {

class Denot {
public:
    Denot(const Graph& g, const Registry& r, const RunParams& p, const Observer* obs)
        : g_(g), r_(r), p_(p), obs_(obs) {}

    NodeLabeling eval(const CoreExpr& e, const NodeLabeling& eta) {
        using K = CoreExpr::Kind;
        switch (e.kind()) {
            case K::Id: return eta;
            case K::Psi: return apply_psi(r_.lookup_psi(e.name()), eta);
            case K::Pre: return apply_image(r_.lookup_phi(e.phi()), r_.lookup_sigma(e.sigma()), g_, eta, true);
            case K::Post: return apply_image(r_.lookup_phi(e.phi()), r_.lookup_sigma(e.sigma()), g_, eta, false);
            case K::Seq: return eval(e.right(), eval(e.left(), eta));
            case K::Par: return pair_labelings(eval(e.left(), eta), eval(e.right(), eta));
            case K::Prod:
                return pair_labelings(eval(e.left(), project_left(eta)), eval(e.right(), project_right(eta)));
            case K::Choice: {
                bool all = guard_all_true(eta);
                NodeLabeling x = project_right(eta);
                return all ? eval(e.left(), x) : eval(e.right(), x);
            }
            case K::Star: return fix(e, eta);
        }
        throw Error(ErrorKind::Structural, "unknown core node", e.span());
    }

private:
    // Kleene iteration; [[N]](eta_i) is computed once and serves both as the
    // convergence witness and as the next iterate.
    NodeLabeling fix(const CoreExpr& e, const NodeLabeling& eta) {
        NodeLabeling cur = eta;
        for (unsigned long i = 0; i < p_.max_fix_iters; ++i) {
            if (obs_ && obs_->on_fix_iterate) obs_->on_fix_iterate(e, cur);
            NodeLabeling next = eval(e.body(), cur);
            bool same = true;
            for (NodeId v = 0; v < cur.size() && same; ++v) same = eps_equal(next[v], cur[v], p_.epsilon);
            if (same) return cur;
            cur = std::move(next);
        }
        throw Error(ErrorKind::FixpointDivergence,
                    fmt::format("'{}' did not converge within {} iterations", pretty(e), p_.max_fix_iters), e.span());
    }

    const Graph& g_;
    const Registry& r_;
    const RunParams& p_;
    const Observer* obs_;
};

} // namespace

NodeLabeling eval_denot(const CoreExpr& e, const Graph& g, const NodeLabeling& eta, const Registry& r,
                        const RunParams& p, const Observer* obs) {
    if (eta.size() != g.node_count())
        throw Error(ErrorKind::Structural,
                    fmt::format("labeling has {} entries for a graph of {} nodes", eta.size(), g.node_count()));
    return Denot(g, r, p, obs).eval(e, eta);
}

} // namespace mug
