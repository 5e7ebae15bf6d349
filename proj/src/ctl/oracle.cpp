// Explicit-state CTL labeling used to cross-check the mu-G translation.
// Every operator, derived ones included, is computed directly as a set fixpoint;
// nothing here goes through the translation or the evaluators.

#include <mug/ctl.hpp>

namespace mug {

namespace {

using Set = std::vector<char>;

class Labeler {
public:
    explicit Labeler(const Kripke& k) : k_(k), n_(k.graph.node_count()) {}

    Set sat(const CtlFormula& f) {
        using K = CtlFormula::Kind;
        switch (f.kind()) {
            case K::Atom: {
                Set s(n_);
                for (std::size_t v = 0; v < n_; ++v) s[v] = k_.labels[v].as_symset().contains(f.name());
                return s;
            }
            case K::True: return Set(n_, 1);
            case K::False: return Set(n_, 0);
            case K::Not: {
                Set s = sat(f.sub());
                for (char& b : s) b = !b;
                return s;
            }
            case K::And:
            case K::Or: {
                Set a = sat(f.sub(0)), b = sat(f.sub(1));
                for (std::size_t v = 0; v < n_; ++v) a[v] = f.kind() == K::And ? (a[v] && b[v]) : (a[v] || b[v]);
                return a;
            }
            case K::EX: return ex(sat(f.sub()));
            case K::AX: return ax(sat(f.sub()));
            case K::EU: return least(sat(f.sub(0)), sat(f.sub(1)), true);
            case K::AU: return least(sat(f.sub(0)), sat(f.sub(1)), false);
            case K::EF: return least(Set(n_, 1), sat(f.sub()), true);
            case K::AF: return least(Set(n_, 1), sat(f.sub()), false);
            case K::EG: return greatest(sat(f.sub()), true);
            case K::AG: return greatest(sat(f.sub()), false);
        }
        return Set(n_, 0);
    }

private:
    // Some successor in z.
    Set ex(const Set& z) const {
        Set out(n_, 0);
        for (const Edge& e : k_.graph.edges())
            if (z[e.dst]) out[e.src] = 1;
        return out;
    }
    // Every successor in z; true at states without successors.
    Set ax(const Set& z) const {
        Set out(n_, 1);
        for (const Edge& e : k_.graph.edges())
            if (!z[e.dst]) out[e.src] = 0;
        return out;
    }

    // mu Z. b | (a & EX Z)   or   mu Z. b | (a & AX Z)
    Set least(const Set& a, const Set& b, bool exists) {
        Set z(n_, 0);
        for (;;) {
            Set step = exists ? ex(z) : ax(z);
            Set next(n_);
            for (std::size_t v = 0; v < n_; ++v) next[v] = b[v] || (a[v] && step[v]);
            if (next == z) return z;
            z = std::move(next);
        }
    }

    // nu Z. a & EX Z   or   nu Z. a & AX Z
    Set greatest(const Set& a, bool exists) {
        Set z(n_, 1);
        for (;;) {
            Set step = exists ? ex(z) : ax(z);
            Set next(n_);
            for (std::size_t v = 0; v < n_; ++v) next[v] = a[v] && step[v];
            if (next == z) return z;
            z = std::move(next);
        }
    }

    const Kripke& k_;
    std::size_t n_;
};

} // namespace

NodeLabeling oracle(const Kripke& k, const CtlFormula& f) {
    Set s = Labeler(k).sat(f);
    std::vector<Value> out;
    out.reserve(s.size());
    for (char b : s) out.emplace_back(b != 0);
    return NodeLabeling(std::move(out), LabelType::boolean());
}

} // namespace mug
