// Dense reference forward passes. Written directly from the layer equations,
// independent of the registry functions used by the mu-G encodings.

#include <mug/gnnzoo.hpp>

#include <mug/error.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace mug {

namespace {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows)
        throw Error(ErrorKind::Structural, fmt::format("oracle: cannot multiply {}x{} by {}x{}", a.rows, a.cols, b.rows, b.cols));
    Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            double x = a.at(i, k);
            for (std::size_t j = 0; j < b.cols; ++j) c.at(i, j) += x * b.at(k, j);
        }
    return c;
}

void apply(Matrix& m, const Activation& f) {
    for (double& x : m.data) x = f(x);
}

Matrix hstack(const std::vector<Matrix>& parts, std::size_t rows) {
    std::size_t cols = 0;
    for (const Matrix& p : parts) cols += p.cols;
    Matrix out(rows, cols);
    std::size_t off = 0;
    for (const Matrix& p : parts) {
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < p.cols; ++j) out.at(i, off + j) = p.at(i, j);
        off += p.cols;
    }
    return out;
}

double leaky(double x, double slope) { return x > 0 ? x : slope * x; }

Matrix gcn(const Graph& g, const Matrix& X, const WeightBundle& w) {
    Matrix H = matmul(X, w.matrix("theta"));
    const std::size_t n = g.node_count();
    std::vector<double> d(n, 2.0);
    for (const Edge& e : g.edges()) {
        d[e.src] += 1;
        d[e.dst] += 1;
    }
    Matrix Z(n, H.cols);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < H.cols; ++c) Z.at(i, c) = 2.0 * H.at(i, c) / d[i];
    // Each edge carries a message both ways: to its target through pre, to its source through post.
    for (const Edge& e : g.edges()) {
        double s = 1.0 / std::sqrt(d[e.src] * d[e.dst]);
        for (std::size_t c = 0; c < H.cols; ++c) {
            Z.at(e.dst, c) += s * H.at(e.src, c);
            Z.at(e.src, c) += s * H.at(e.dst, c);
        }
    }
    apply(Z, w.activation("f"));
    return Z;
}

Matrix gat_head(const Graph& g, const Matrix& X, const WeightBundle& w, std::size_t h) {
    const Matrix H = matmul(X, w.matrix(fmt::format("theta{}", h)));
    const std::vector<std::vector<double>> alpha = gat_attention(g, X, w, h);
    Matrix Z(g.node_count(), H.cols);
    for (NodeId v = 0; v < g.node_count(); ++v) {
        auto in = g.in_edges(v);
        for (std::size_t k = 0; k <= in.size(); ++k) {
            NodeId u = k < in.size() ? in[k].other : v;
            for (std::size_t c = 0; c < H.cols; ++c) Z.at(v, c) += alpha[v][k] * H.at(u, c);
        }
    }
    apply(Z, w.activation(fmt::format("f{}", h)));
    return Z;
}

Matrix gin(const Graph& g, const Matrix& X, const WeightBundle& w) {
    Matrix A = X;
    const double e = w.scalar("eps", 0.0);
    for (double& x : A.data) x *= 1.0 + e;
    for (const Edge& ed : g.edges())
        for (std::size_t c = 0; c < X.cols; ++c) A.at(ed.dst, c) += X.at(ed.src, c);
    Matrix H = matmul(A, w.matrix("theta1"));
    apply(H, w.activation("f1"));
    Matrix Z = matmul(H, w.matrix("theta2"));
    apply(Z, w.activation("f2"));
    return Z;
}

// s_v <- sum over edges u->v of h(x_v, e_uv, x_u, s_u), from s = 0 until two
// successive states agree within eps; the output reads (x_v, s_v) through g.
Matrix gnn_orig(const Graph& g, const Matrix& X, const WeightBundle& w, double eps) {
    const Matrix& t1 = w.matrix("theta1");
    const Matrix& t2 = w.matrix("theta2");
    const std::size_t n = g.node_count(), k = t2.cols;
    const std::size_t l = t1.rows - 2 * X.cols - k;
    const Activation f1 = w.activation("f1"), f2 = w.activation("f2");

    // One row per edge: [x_dst, e, x_src] is fixed, the state part changes.
    Matrix fixed(g.edge_count(), 2 * X.cols + l);
    for (EdgeIndex i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edges()[i];
        std::size_t c = 0;
        for (std::size_t j = 0; j < X.cols; ++j) fixed.at(i, c++) = X.at(e.dst, j);
        const Vec& lab = g.edge_label(i).as_vec();
        if (lab.size() != l) throw Error(ErrorKind::Structural, fmt::format("oracle: edge {} needs a label of length {}", i, l));
        for (double x : lab) fixed.at(i, c++) = x;
        for (std::size_t j = 0; j < X.cols; ++j) fixed.at(i, c++) = X.at(e.src, j);
    }

    Matrix S(n, k);
    for (int it = 0; it < 10000; ++it) {
        Matrix in = hstack({fixed, Matrix(g.edge_count(), k)}, g.edge_count());
        for (EdgeIndex i = 0; i < g.edge_count(); ++i)
            for (std::size_t j = 0; j < k; ++j) in.at(i, fixed.cols + j) = S.at(g.edges()[i].src, j);
        Matrix M = matmul(in, t1);
        apply(M, f1);
        M = matmul(M, t2);
        apply(M, f2);
        Matrix next(n, k);
        for (EdgeIndex i = 0; i < g.edge_count(); ++i)
            for (std::size_t j = 0; j < k; ++j) next.at(g.edges()[i].dst, j) += M.at(i, j);
        bool close = true;
        for (std::size_t i = 0; i < S.data.size() && close; ++i) close = std::abs(next.data[i] - S.data[i]) <= eps;
        if (close) {
            Matrix O = matmul(hstack({X, S}, n), w.matrix("theta3"));
            apply(O, w.activation("f3"));
            O = matmul(O, w.matrix("theta4"));
            apply(O, w.activation("f4"));
            return O;
        }
        S = std::move(next);
    }
    throw Error(ErrorKind::FixpointDivergence, "oracle: state iteration did not converge");
}

} // namespace

std::vector<std::vector<double>> gat_attention(const Graph& g, const Matrix& X, const WeightBundle& w,
                                               std::size_t head) {
    const Matrix H = matmul(X, w.matrix(fmt::format("theta{}", head)));
    const std::vector<double>& a = w.vector(fmt::format("a{}", head));
    if (a.size() != 2 * H.cols) throw Error(ErrorKind::Structural, "oracle: attention vector has the wrong length");
    auto half = [&](std::size_t off, NodeId v) {
        double s = 0;
        for (std::size_t c = 0; c < H.cols; ++c) s += a[off + c] * H.at(v, c);
        return s;
    };
    std::vector<std::vector<double>> out(g.node_count());
    for (NodeId v = 0; v < g.node_count(); ++v) {
        std::vector<double> logits;
        for (const Incidence& in : g.in_edges(v)) logits.push_back(leaky(half(0, v) + half(H.cols, in.other), kAttentionSlope));
        logits.push_back(leaky(half(0, v) + half(H.cols, v), kAttentionSlope));
        double mx = *std::max_element(logits.begin(), logits.end());
        double z = 0;
        for (double& x : logits) z += (x = std::exp(x - mx));
        for (double& x : logits) x /= z;
        out[v] = std::move(logits);
    }
    return out;
}

Matrix dense_oracle(Arch a, const Graph& g, const Matrix& X, const WeightBundle& w, std::size_t heads, double eps) {
    if (X.rows != g.node_count()) throw Error(ErrorKind::Structural, "oracle: one feature row per node expected");
    switch (a) {
        case Arch::Gcn: return gcn(g, X, w);
        case Arch::Gat: {
            if (heads == 0)
                while (w.matrices.contains(fmt::format("theta{}", heads + 1))) ++heads;
            std::vector<Matrix> parts;
            for (std::size_t h = 1; h <= heads; ++h) parts.push_back(gat_head(g, X, w, h));
            return hstack(parts, g.node_count());
        }
        case Arch::Gin: return gin(g, X, w);
        case Arch::Orig: return gnn_orig(g, X, w, eps);
    }
    throw Error(ErrorKind::Usage, "unknown architecture");
}

Matrix gcn_matrix_form(const Graph& g, const Matrix& X, const WeightBundle& w) {
    const std::size_t n = g.node_count();
    Matrix A(n, n);
    for (std::size_t i = 0; i < n; ++i) A.at(i, i) = 1.0;
    for (const Edge& e : g.edges()) {
        A.at(e.src, e.dst) = 1.0;
        A.at(e.dst, e.src) = 1.0;
    }
    std::vector<double> dinv(n);
    for (std::size_t i = 0; i < n; ++i) {
        double d = 0;
        for (std::size_t j = 0; j < n; ++j) d += A.at(i, j);
        dinv[i] = 1.0 / std::sqrt(d);
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A.at(i, j) *= dinv[i] * dinv[j];
    Matrix Z = matmul(matmul(A, X), w.matrix("theta"));
    apply(Z, w.activation("f"));
    return Z;
}

} // namespace mug
