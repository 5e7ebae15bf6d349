// mu-G encodings of GCN, GAT, GIN and the original GNN over fixed weights.

#include <mug/gnnzoo.hpp>

#include <mug/error.hpp>
#include <mug/syntax.hpp>

#include <fmt/format.h>

#include <cmath>
#include <numeric>

namespace mug {

namespace {

using Msgs = std::span<const Value>;

Vec times(const Vec& x, const Matrix& theta) {
    Vec out(theta.cols, 0.0);
    for (std::size_t i = 0; i < theta.rows; ++i)
        for (std::size_t j = 0; j < theta.cols; ++j) out[j] += x[i] * theta.at(i, j);
    return out;
}

Vec activate(Vec v, const Activation& f) {
    for (double& x : v) x = f(x);
    return v;
}

Vec& add_into(Vec& acc, const Vec& x) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += x[i];
    return acc;
}

Vec scaled(Vec v, double s) {
    for (double& x : v) x *= s;
    return v;
}

Vec join(std::initializer_list<const Vec*> parts) {
    Vec out;
    for (const Vec* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
}

double dot(const Vec& a, const Vec& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::Structural, "weights: " + what);
}

PsiFun nn(std::string name, const Matrix& theta, Activation f) {
    return PsiFun::mono(std::move(name), LabelType::vec(theta.rows), LabelType::vec(theta.cols),
                        [theta, f](Msgs, const Value& x) { return Value(activate(times(x.as_vec(), theta), f)); });
}

GnnModel finish(const std::string& text, RegistryBuilder b, LabelType in, LabelType out) {
    return GnnModel{parse(text), std::move(b).build(), std::move(in), std::move(out)};
}

} // namespace

GnnModel build_gcn(const WeightBundle& w, double eps) {
    const Matrix& theta = w.matrix("theta");
    const std::size_t n = theta.rows;
    const LabelType N = LabelType::num(), V = LabelType::vec(n);
    const LabelType DV = LabelType::prod(N, V);

    RegistryBuilder b = builtin_builder(eps);
    b.add(PhiFun::mono_any_edge("one", V, N, [](const Value&, const Value&, const Value&) { return Value(1.0); }));
    b.add(SigmaFun::mono("deg+", N, V, N, [](Msgs ms, const Value&) {
        double s = 1.0;
        for (const Value& m : ms) s += m.as_num();
        return Value(s);
    }));
    b.add(PsiFun::mono("plus2", LabelType::prod(N, N), N,
                       [](Msgs, const Value& x) { return Value(x.left().as_num() + x.right().as_num()); }));
    // message from u to v: x_u / (sqrt(d_u) sqrt(d_v))
    b.add(PhiFun::mono_any_edge("dgn", DV, V, [](const Value& i, const Value&, const Value& j) {
        return Value(scaled(i.right().as_vec(), 1.0 / (std::sqrt(i.left().as_num()) * std::sqrt(j.left().as_num()))));
    }));
    b.add(SigmaFun::mono("dg+", V, DV, V, [](Msgs ms, const Value& x) {
        Vec acc = scaled(x.right().as_vec(), 1.0 / x.left().as_num());
        for (const Value& m : ms) add_into(acc, m.as_vec());
        return Value(std::move(acc));
    }));
    b.add(PsiFun::mono("plus2n", LabelType::prod(V, V), V, [](Msgs, const Value& x) {
        Vec acc = x.left().as_vec();
        return Value(add_into(acc, x.right().as_vec()));
    }));
    b.add(nn("NN", theta, w.activation("f")));

    return finish("((pre[one,deg+] || post[one,deg+]);plus2 || id);(pre[dgn,dg+] || post[dgn,dg+]);plus2n;NN",
                  std::move(b), V, LabelType::vec(theta.cols));
}

GnnModel build_gat(const WeightBundle& w, std::size_t heads, double eps) {
    if (heads == 0)
        while (w.matrices.contains(fmt::format("theta{}", heads + 1))) ++heads;
    require(heads > 0, "GAT needs theta1");
    const std::size_t n = w.matrix("theta1").rows, m = w.matrix("theta1").cols;
    const LabelType N = LabelType::num(), V = LabelType::vec(n);

    RegistryBuilder b = builtin_builder(eps);
    b.add(PsiFun::mono("div", LabelType::prod(V, N), V,
                       [](Msgs, const Value& x) { return Value(scaled(x.left().as_vec(), 1.0 / x.right().as_num())); }));

    std::string lets, heads_par;
    for (std::size_t h = 1; h <= heads; ++h) {
        const Matrix& theta = w.matrix(fmt::format("theta{}", h));
        const Vec& a = w.vector(fmt::format("a{}", h));
        require(theta.rows == n && theta.cols == m, fmt::format("theta{} must be {}x{}", h, n, m));
        require(a.size() == 2 * m, fmt::format("a{} must have length {}", h, 2 * m));
        // exp(LeakyReLU(a . (x_target Theta, x_source Theta)))
        auto score = [theta, a](const Vec& target, const Vec& source) {
            Vec t = times(target, theta), u = times(source, theta);
            double s = dot(a, join({&t, &u}));
            return std::exp(s > 0 ? s : kAttentionSlope * s);
        };
        b.add(PhiFun::mono_any_edge(fmt::format("attx_{}", h), V, V, [score](const Value& i, const Value&, const Value& j) {
            return Value(scaled(i.as_vec(), score(j.as_vec(), i.as_vec())));
        }));
        b.add(PhiFun::mono_any_edge(fmt::format("att_{}", h), V, N, [score](const Value& i, const Value&, const Value& j) {
            return Value(score(j.as_vec(), i.as_vec()));
        }));
        b.add(SigmaFun::mono(fmt::format("n-att_{}", h), V, V, V, [score](Msgs ms, const Value& x) {
            Vec acc = scaled(x.as_vec(), score(x.as_vec(), x.as_vec()));
            for (const Value& msg : ms) add_into(acc, msg.as_vec());
            return Value(std::move(acc));
        }));
        b.add(SigmaFun::mono(fmt::format("t-att_{}", h), N, V, N, [score](Msgs ms, const Value& x) {
            double s = score(x.as_vec(), x.as_vec());
            for (const Value& msg : ms) s += msg.as_num();
            return Value(s);
        }));
        b.add(nn(fmt::format("NN_{}", h), theta, w.activation(fmt::format("f{}", h))));

        if (h > 1) {
            lets += ", ";
            heads_par += " || ";
        }
        lets += fmt::format("GAT_{0} = (pre[attx_{0},n-att_{0}] || pre[att_{0},t-att_{0}]);div;NN_{0}", h);
        heads_par += fmt::format("GAT_{}", h);
    }
    return finish(fmt::format("let {} in ({});concat", lets, heads_par), std::move(b), V, LabelType::vec(heads * m));
}

GnnModel build_gin(const WeightBundle& w, double eps) {
    const Matrix& t1 = w.matrix("theta1");
    const Matrix& t2 = w.matrix("theta2");
    require(t1.cols == t2.rows, "theta1 columns must match theta2 rows");
    const std::size_t n = t1.rows;
    const LabelType V = LabelType::vec(n);
    const double e = w.scalar("eps", 0.0);
    const Activation f1 = w.activation("f1"), f2 = w.activation("f2");

    RegistryBuilder b = builtin_builder(eps);
    b.add(PsiFun::mono("mul-eps", V, V, [e](Msgs, const Value& x) { return Value(scaled(x.as_vec(), 1.0 + e)); }));
    b.add(SigmaFun::mono("sum", V, V, V, [n](Msgs ms, const Value&) {
        Vec acc(n, 0.0);
        for (const Value& m : ms) add_into(acc, m.as_vec());
        return Value(std::move(acc));
    }));
    b.add(PsiFun::mono("add", LabelType::prod(V, V), V, [](Msgs, const Value& x) {
        Vec acc = x.left().as_vec();
        return Value(add_into(acc, x.right().as_vec()));
    }));
    b.add(PsiFun::mono("MLP", V, LabelType::vec(t2.cols), [t1, t2, f1, f2](Msgs, const Value& x) {
        return Value(activate(times(activate(times(x.as_vec(), t1), f1), t2), f2));
    }));
    return finish("(mul-eps || pre[id3,sum]);add;MLP", std::move(b), V, LabelType::vec(t2.cols));
}

GnnModel build_gnn_orig(const WeightBundle& w, std::size_t n, double eps) {
    const Matrix& t1 = w.matrix("theta1");
    const Matrix& t2 = w.matrix("theta2");
    const Matrix& t3 = w.matrix("theta3");
    const Matrix& t4 = w.matrix("theta4");
    const std::size_t k = t2.cols;
    require(t1.cols == t2.rows && t3.cols == t4.rows, "hidden sizes do not chain");
    require(t3.rows == n + k, fmt::format("theta3 must have {} rows", n + k));
    require(t1.rows >= 2 * n + k, fmt::format("theta1 needs at least {} rows", 2 * n + k));
    const std::size_t l = t1.rows - 2 * n - k;
    const LabelType V = LabelType::vec(n), S = LabelType::vec(k), VS = LabelType::prod(V, S);
    const Activation f1 = w.activation("f1"), f2 = w.activation("f2"), f3 = w.activation("f3"),
                     f4 = w.activation("f4");

    RegistryBuilder b = builtin_builder(eps);
    b.add(PsiFun::mono("zeros", V, S, [k](Msgs, const Value&) { return Value(Vec(k, 0.0)); }));
    // h(x_v, e_uv, x_u, s_u) for the edge u -> v
    b.add(PhiFun::mono("mlp1", VS, LabelType::vec(l), S, [t1, t2, f1, f2](const Value& i, const Value& e, const Value& j) {
        Vec in = join({&j.left().as_vec(), &e.as_vec(), &i.left().as_vec(), &i.right().as_vec()});
        return Value(activate(times(activate(times(in, t1), f1), t2), f2));
    }));
    b.add(SigmaFun::mono("sum", S, VS, S, [k](Msgs ms, const Value&) {
        Vec acc(k, 0.0);
        for (const Value& m : ms) add_into(acc, m.as_vec());
        return Value(std::move(acc));
    }));
    b.add(PsiFun::mono("MLP2", VS, LabelType::vec(t4.cols), [t3, t4, f3, f4](Msgs, const Value& x) {
        Vec in = join({&x.left().as_vec(), &x.right().as_vec()});
        return Value(activate(times(activate(times(in, t3), f3), t4), f4));
    }));
    return finish("(id || zeros);(pL || pre[mlp1,sum])*;MLP2", std::move(b), V, LabelType::vec(t4.cols));
}

GnnModel build_model(Arch a, const WeightBundle& w, std::size_t feature_size, std::size_t heads, double eps) {
    switch (a) {
        case Arch::Gcn: return build_gcn(w, eps);
        case Arch::Gat: return build_gat(w, heads, eps);
        case Arch::Gin: return build_gin(w, eps);
        case Arch::Orig: return build_gnn_orig(w, feature_size, eps);
    }
    throw Error(ErrorKind::Usage, "unknown architecture");
}

} // namespace mug
