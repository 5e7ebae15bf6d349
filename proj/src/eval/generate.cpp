#include <mug/generate.hpp>

namespace mug {

long uniform_int(std::mt19937_64& rng, long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(rng() % span);
}

bool coin(std::mt19937_64& rng, unsigned percent) { return rng() % 100 < percent; }

Value random_value(const LabelType& t, std::mt19937_64& rng, long lo, long hi) {
    switch (t.kind()) {
        case LabelType::Kind::Bool: return Value(coin(rng, 50));
        case LabelType::Kind::Num: return Value(static_cast<double>(uniform_int(rng, lo, hi)));
        case LabelType::Kind::Vec: {
            Vec v(t.vec_size());
            for (double& x : v) x = static_cast<double>(uniform_int(rng, lo, hi));
            return Value(std::move(v));
        }
        case LabelType::Kind::SymSet: {
            std::vector<std::string> items;
            for (const char* s : {"a", "b", "c"})
                if (coin(rng, 50)) items.emplace_back(s);
            return Value(SymSet(std::move(items)));
        }
        case LabelType::Kind::Unit: return Value();
        case LabelType::Kind::Prod: {
            Value l = random_value(t.left(), rng, lo, hi);
            return Value::pair(std::move(l), random_value(t.right(), rng, lo, hi));
        }
    }
    return Value();
}

NodeLabeling random_labeling(std::size_t n, const LabelType& t, std::mt19937_64& rng) {
    std::vector<Value> vals;
    vals.reserve(n);
    for (std::size_t i = 0; i < n; ++i) vals.push_back(random_value(t, rng));
    return NodeLabeling(std::move(vals), t);
}

Graph random_graph(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_edges_per_node) {
    // Mostly non-empty; the empty graph shows up now and then to exercise vacuous guards.
    std::size_t n = coin(rng, 3) ? 0 : static_cast<std::size_t>(uniform_int(rng, 1, static_cast<long>(max_nodes)));
    std::vector<Edge> edges;
    std::vector<Value> labels;
    if (n > 0) {
        auto m = static_cast<std::size_t>(uniform_int(rng, 0, static_cast<long>(n * max_edges_per_node)));
        for (std::size_t i = 0; i < m; ++i) {
            auto s = static_cast<NodeId>(uniform_int(rng, 0, static_cast<long>(n) - 1));
            auto d = static_cast<NodeId>(uniform_int(rng, 0, static_cast<long>(n) - 1));
            edges.push_back({s, d});
            labels.emplace_back(static_cast<double>(uniform_int(rng, -2, 2)));
        }
    }
    return Graph(n, std::move(edges), std::move(labels));
}

// ---------------------------------------------------------------------------

namespace {

using C = CoreExpr;
using T = LabelType;

std::size_t type_depth(const T& t) { return t.is_prod() ? 1 + std::max(type_depth(t.left()), type_depth(t.right())) : 0; }

struct Leaf {
    C expr;
    T out;
};

C seq_opt(C a, C b) {
    if (a.is_id()) return b;
    if (b.is_id()) return a;
    return C::seq(std::move(a), std::move(b));
}

// A total map from `from` to `to` built from projections and the Num/Bool bridges.
C coerce(const T& from, const T& to) {
    if (from == to) return C::id();
    if (to.is_prod()) return C::par(coerce(from, to.left()), coerce(from, to.right()));
    if (from.is_prod()) return seq_opt(C::psi("pL"), coerce(from.left(), to));
    if (to == T::num()) return from == T::boolean() ? C::psi("b2n") : C::psi("zero");
    if (to == T::boolean()) return from == T::num() ? C::psi("pos") : C::psi("tt");
    return C::psi("zero");
}

} // namespace

struct ProgramGenerator::Gen {
    std::mt19937_64& rng;
    const T N = T::num();
    const T B = T::boolean();

    std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng() % n); }

    // `conv` restricts leaves to functions under which iteration tends to settle
    // (monotone or contracting on small integers), so most stars terminate.
    Leaf leaf(const T& in, bool conv) {
        std::vector<Leaf> c;
        c.push_back({C::id(), in});
        auto image = [&](const std::string& phi, const std::string& sigma, const T& out) {
            c.push_back({C::pre(phi, sigma), out});
            c.push_back({C::post(phi, sigma), out});
        };
        if (!conv) {
            c.push_back({C::psi("zero"), N});
            c.push_back({C::psi(coin(rng, 50) ? "tt" : "ff"), B});
            image("id3", "count", N);
        }
        if (in == N) {
            for (const char* f : {"abs", "relu", "clamp", "step_to_zero", "gmax", "gmin"}) c.push_back({C::psi(f), N});
            image("id3", "max", N);
            image("id3", "min", N);
            if (!conv) {
                for (const char* f : {"inc", "dec", "neg", "gsum", "psi1", "psi2"}) c.push_back({C::psi(f), N});
                for (const char* f : {"pos", "iszero"}) c.push_back({C::psi(f), B});
                for (const char* phi : {"phi", "dif", "w", "id3"})
                    for (const char* sigma : {"sum", "max", "min", "sigma"}) image(phi, sigma, N);
            }
        } else if (in == B) {
            image("id3", "or", B);
            image("id3", "all", B);
            if (!conv) {
                c.push_back({C::psi("not"), B});
                c.push_back({C::psi("b2n"), N});
            }
        } else if (in.is_prod()) {
            c.push_back({C::psi("pL"), in.left()});
            c.push_back({C::psi("pR"), in.right()});
            if (in.left() == in.right()) c.push_back({C::psi("eqeps"), B});
            if (in.left() == N && in.right() == N) {
                c.push_back({C::psi("max2"), N});
                c.push_back({C::psi("min2"), N});
                if (!conv)
                    for (const char* f : {"add2", "psi3"}) c.push_back({C::psi(f), N});
                c.push_back({C::psi("lt2"), B});
            }
            if (in.left() == B && in.right() == B) {
                c.push_back({C::psi("and"), B});
                c.push_back({C::psi("or"), B});
            }
        }
        return c[pick(c.size())];
    }

    C to_type(const T& in, const T& target, std::size_t d, bool conv) {
        if (d <= 1) return coerce(in, target);
        T out = in;
        C a = gen(in, d - 1, conv, out);
        return seq_opt(a, coerce(out, target));
    }

    C gen(const T& in, std::size_t d, bool conv, T& out) {
        if (d <= 1) {
            Leaf l = leaf(in, conv);
            out = l.out;
            return l.expr;
        }
        unsigned roll = static_cast<unsigned>(rng() % 100);
        if (roll < 12) {
            Leaf l = leaf(in, conv);
            out = l.out;
            return l.expr;
        }
        if (roll < 45) {
            T mid = in;
            C a = gen(in, d - 1, conv, mid);
            C b = gen(mid, d - 1, conv, out);
            return C::seq(std::move(a), std::move(b));
        }
        if (roll < 65) {
            T lt = in, rt = in;
            C a = gen(in, d - 1, conv, lt);
            C b = gen(in, d - 1, conv, rt);
            if (type_depth(lt) + 1 > 2 || type_depth(rt) + 1 > 2) {
                out = lt;
                return a;
            }
            out = T::prod(lt, rt);
            return C::par(std::move(a), std::move(b));
        }
        if (roll < 82 && d >= 3) {
            // if-then-else shape: (guard||id);(t (+) f)
            C guard = to_type(in, B, d - 2, conv);
            T tout = in;
            C t = gen(in, d - 2, conv, tout);
            C f = to_type(in, tout, d - 2, conv);
            out = tout;
            return C::seq(C::par(std::move(guard), C::id()), C::choice(std::move(t), std::move(f)));
        }
        if (in.is_prod() && in.left() == B && roll < 88) {
            T tout = in.right();
            C t = gen(in.right(), d - 1, conv, tout);
            C f = to_type(in.right(), tout, d - 1, conv);
            out = tout;
            return C::choice(std::move(t), std::move(f));
        }
        out = in;
        return C::star(to_type(in, in, d - 1, true));
    }
};

ProgramGenerator::ProgramGenerator(std::uint64_t seed, std::size_t max_depth) : rng_(seed), max_depth_(max_depth) {}

CoreExpr ProgramGenerator::program(const LabelType& in, LabelType& out) {
    Gen g{rng_};
    for (;;) {
        std::size_t d = static_cast<std::size_t>(uniform_int(rng_, 2, static_cast<long>(max_depth_) - 1));
        LabelType o = in;
        CoreExpr e = g.gen(in, d, false, o);
        if (e.depth() <= max_depth_) {
            out = o;
            return e;
        }
    }
}

LabelType ProgramGenerator::random_type() {
    const T N = T::num(), B = T::boolean();
    switch (rng_() % 7) {
        case 0:
        case 1: return N;
        case 2: return B;
        case 3: return T::prod(N, N);
        case 4: return T::prod(B, N);
        case 5: return T::prod(N, B);
        default: return T::prod(T::prod(N, B), N);
    }
}

GenCase ProgramGenerator::next_case() {
    LabelType in = random_type();
    LabelType out = in;
    CoreExpr e = program(in, out);
    Graph g = random_graph(rng_);
    NodeLabeling eta = random_labeling(g.node_count(), in, rng_);
    return GenCase{std::move(e), std::move(in), std::move(out), std::move(g), std::move(eta)};
}

} // namespace mug
