#include <doctest.h>

#include <mug/error.hpp>
#include <mug/eval.hpp>
#include <mug/gnnzoo.hpp>
#include <mug/syntax.hpp>
#include <mug/typecheck.hpp>

#include <cmath>

using namespace mug;

namespace {

Matrix mat(std::size_t r, std::size_t c, std::vector<double> xs) {
    Matrix m(r, c);
    m.data = std::move(xs);
    return m;
}

Matrix run_model(const GnnModel& m, const Graph& g, const Matrix& X, RunParams p = {}) {
    CoreExpr e = expand(m.program);
    return labeling_to_features(eval_denot(e, g, features_to_labeling(X), m.registry, p));
}

Graph undirected(std::size_t n, std::vector<std::pair<NodeId, NodeId>> pairs) {
    std::vector<Edge> es;
    for (auto [u, v] : pairs) {
        es.push_back({u, v});
        es.push_back({v, u});
    }
    return Graph(n, std::move(es));
}

} // namespace

TEST_CASE("weights read from JSON") {
    auto j = nlohmann::json::parse(R"json({"theta1": [[1, 2], [3, 4]], "a1": [0.5, -1], "eps": 0.25,
                                       "activations": {"f1": "relu", "f2": "leaky_relu(0.1)"}})json");
    WeightBundle w = WeightBundle::from_json(j);
    CHECK(w.matrix("theta1").at(1, 0) == 3);
    CHECK(w.vector("a1").size() == 2);
    CHECK(w.scalar("eps", 0) == 0.25);
    CHECK(w.activation("f2")(-10) == doctest::Approx(-1.0));
    CHECK(w.activation("f3")(-10) == -10); // identity by default
    CHECK_THROWS_AS(w.matrix("theta9"), Error);
    CHECK_THROWS_AS(WeightBundle::from_json(nlohmann::json::parse(R"({"t": [[1, 2], [3]]})")), Error);
    CHECK_THROWS_AS(WeightBundle::from_json(nlohmann::json::parse(R"({"activations": {"f": "tanhh"}})")), Error);

    WeightBundle again = WeightBundle::from_json(w.to_json());
    CHECK(again.matrix("theta1").data == w.matrix("theta1").data);
    CHECK(again.activation("f2").slope == doctest::Approx(0.1));
}

TEST_CASE("activations") {
    CHECK(Activation::parse("relu")(-2) == 0);
    CHECK(Activation::parse("leaky_relu")(-1) == doctest::Approx(-0.2));
    CHECK(Activation::parse("sigmoid")(0) == doctest::Approx(0.5));
    CHECK(Activation::parse("identity")(-3) == -3);
}

TEST_CASE("GCN on a single undirected edge") {
    WeightBundle w;
    w.matrices["theta"] = mat(1, 1, {1});
    Graph g = undirected(2, {{0, 1}});
    Matrix X = mat(2, 1, {1, 3});
    GnnModel m = build_gcn(w);
    // D^-1/2 (A+I) D^-1/2 = all entries 1/2
    Matrix out = run_model(m, g, X);
    CHECK(out.at(0, 0) == doctest::Approx(2));
    CHECK(out.at(1, 0) == doctest::Approx(2));
    CHECK(relative_error(out, gcn_matrix_form(g, X, w)) < 1e-12);
}

TEST_CASE("GIN by hand") {
    WeightBundle w;
    w.matrices["theta1"] = mat(1, 1, {1});
    w.matrices["theta2"] = mat(1, 1, {2});
    w.scalars["eps"] = 0.5;
    Graph g(2, {{0, 1}});
    Matrix out = run_model(build_gin(w), g, mat(2, 1, {1, 2}));
    // (1.5, 2*1.5 + 1) then times 2
    CHECK(out.at(0, 0) == doctest::Approx(3));
    CHECK(out.at(1, 0) == doctest::Approx(8));
}

TEST_CASE("GAT with zero attention averages in-neighbors and self") {
    WeightBundle w;
    w.matrices["theta1"] = mat(1, 1, {1});
    w.vectors["a1"] = {0, 0};
    Graph g(2, {{0, 1}});
    Matrix out = run_model(build_gat(w, 1), g, mat(2, 1, {2, 4}));
    CHECK(out.at(0, 0) == doctest::Approx(2));
    CHECK(out.at(1, 0) == doctest::Approx(3));
}

TEST_CASE("original GNN by hand") {
    WeightBundle w;
    // h(x_v, e, x_u, s_u) = x_v + s_u / 2, output g(x, s) = s
    w.matrices["theta1"] = mat(4, 1, {1, 0, 0, 0.5});
    w.matrices["theta2"] = mat(1, 1, {1});
    w.matrices["theta3"] = mat(2, 1, {0, 1});
    w.matrices["theta4"] = mat(1, 1, {1});
    Graph g(1, {{0, 0}}, {Value(Vec{0.0})});
    RunParams p;
    p.epsilon = 1e-12;
    GnnModel m = build_gnn_orig(w, 1, p.epsilon);
    Matrix out = run_model(m, g, mat(1, 1, {1}), p);
    // s = 1 + s/2 has the fixpoint 2
    CHECK(std::abs(out.at(0, 0) - 2) < 1e-9);
    CHECK(relative_error(out, dense_oracle(Arch::Orig, g, mat(1, 1, {1}), w, 1, p.epsilon)) < 1e-9);
}

TEST_CASE("built programs type-check at their declared types") {
    std::mt19937_64 rng(2);
    ZooDims d;
    for (Arch a : {Arch::Gcn, Arch::Gat, Arch::Gin, Arch::Orig}) {
        WeightBundle w = random_weights(a, d, rng);
        GnnModel m = build_model(a, w, d.n, 0, 0.0);
        INFO(arch_name(a));
        std::optional<LabelType> edge;
        if (a == Arch::Orig) edge = LabelType::vec(d.l);
        GnnType t = infer(expand(m.program), m.in_type, m.registry, edge);
        CHECK(t.output == m.out_type);
        CHECK(parse(pretty(m.program)) == m.program);
    }
}

TEST_CASE("GAT program lets each head and concatenates") {
    std::mt19937_64 rng(3);
    ZooDims d;
    d.heads = 3;
    GnnModel m = build_gat(random_weights(Arch::Gat, d, rng), 0);
    std::string text = pretty(m.program);
    CHECK(text.starts_with("let GAT_1 = "));
    CHECK(text.find("(GAT_1||GAT_2||GAT_3);concat") != std::string::npos);
    CHECK(m.out_type == LabelType::vec(3 * d.m));
}

TEST_CASE("attention weights form a distribution") {
    std::mt19937_64 rng(4);
    ZooDims d;
    WeightBundle w = random_weights(Arch::Gat, d, rng);
    Graph g(4, {{0, 1}, {2, 1}, {3, 1}, {1, 0}, {0, 0}});
    Matrix X(4, d.n);
    std::normal_distribution<double> nd;
    for (double& x : X.data) x = nd(rng);
    for (const auto& row : gat_attention(g, X, w, 1)) {
        double s = 0;
        for (double a : row) s += a;
        CHECK(std::abs(s - 1) <= 1e-12);
    }
}

TEST_CASE("random original-GNN weights have spectral norm 0.5") {
    std::mt19937_64 rng(5);
    WeightBundle w = random_weights(Arch::Orig, ZooDims{}, rng);
    for (const char* name : {"theta1", "theta2", "theta3", "theta4"}) {
        const Matrix& m = w.matrix(name);
        // power iteration on M^T M, independently of the generator
        std::vector<double> v(m.cols, 1.0);
        double sigma = 0;
        for (int it = 0; it < 2000; ++it) {
            std::vector<double> u(m.rows, 0.0), x(m.cols, 0.0);
            for (std::size_t i = 0; i < m.rows; ++i)
                for (std::size_t j = 0; j < m.cols; ++j) u[i] += m.at(i, j) * v[j];
            for (std::size_t i = 0; i < m.rows; ++i)
                for (std::size_t j = 0; j < m.cols; ++j) x[j] += m.at(i, j) * u[i];
            double n = 0;
            for (double t : x) n += t * t;
            n = std::sqrt(n);
            for (std::size_t j = 0; j < m.cols; ++j) v[j] = x[j] / n;
            sigma = std::sqrt(n);
        }
        INFO(name);
        CHECK(sigma == doctest::Approx(0.5).epsilon(1e-6));
    }
}

TEST_CASE("relative error") {
    CHECK(relative_error(mat(1, 2, {1, 2}), mat(1, 2, {1, 2})) == 0);
    CHECK(relative_error(mat(1, 2, {1, 2.2}), mat(1, 2, {1, 2})) == doctest::Approx(0.1));
    CHECK(std::isinf(relative_error(mat(1, 1, {NAN}), mat(1, 1, {1}))));
    CHECK(std::isinf(relative_error(mat(1, 1, {1}), mat(1, 2, {1, 1}))));
}

TEST_CASE("architecture names") {
    CHECK(parse_arch("gat") == Arch::Gat);
    CHECK(arch_name(Arch::Orig) == "orig");
    CHECK_THROWS_AS(parse_arch("sage"), Error);
}
