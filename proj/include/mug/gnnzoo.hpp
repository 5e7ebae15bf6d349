#pragma once

#include <mug/ast.hpp>
#include <mug/graph.hpp>
#include <mug/registry.hpp>

#include <nlohmann/json.hpp>

#include <map>
#include <random>
#include <string>
#include <vector>

namespace mug {

/// Dense row-major matrix.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct Activation {
    enum class Kind { Identity, Relu, LeakyRelu, Sigmoid };
    Kind kind = Kind::Identity;
    double slope = 0.2; ///< leaky_relu only

    double operator()(double x) const;
    /// "identity", "relu", "sigmoid", "leaky_relu" or "leaky_relu(0.1)".
    static Activation parse(const std::string& s);
    std::string name() const;
};

/// Fixed weights of one model, read from JSON:
/// `{"theta1": [[...]], "a1": [...], "eps": 0.0, "activations": {"f1": "relu"}}`.
struct WeightBundle {
    std::map<std::string, Matrix> matrices;
    std::map<std::string, std::vector<double>> vectors;
    std::map<std::string, double> scalars;
    std::map<std::string, Activation> activations;

    /// Throws Structural when missing.
    const Matrix& matrix(const std::string& name) const;
    const std::vector<double>& vector(const std::string& name) const;
    double scalar(const std::string& name, double fallback) const;
    /// Missing activations default to the identity.
    Activation activation(const std::string& name) const;

    static WeightBundle from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

enum class Arch { Gcn, Gat, Gin, Orig };
Arch parse_arch(const std::string& s);
std::string_view arch_name(Arch a);

/// Slope of the LeakyReLU inside GAT attention scores.
inline constexpr double kAttentionSlope = 0.2;

/// An encoded model: the mu-G program, the functions it refers to, and its declared type.
struct GnnModel {
    SurfaceExpr program;
    Registry registry;
    LabelType in_type;
    LabelType out_type;
};

/// GCN:  ((pre[one,deg+] || post[one,deg+]);plus2 || id);(pre[dgn,dg+] || post[dgn,dg+]);plus2n;NN
/// weights: theta (n x m), activation f.
GnnModel build_gcn(const WeightBundle& w, double eps = 0.0);
/// GAT with K heads: let GAT_i = (pre[attx_i,n-att_i] || pre[att_i,t-att_i]);div;NN_i in (GAT_1||...||GAT_K);concat
/// weights: theta<i> (n x m), a<i> (2m), activations f<i>.
GnnModel build_gat(const WeightBundle& w, std::size_t heads, double eps = 0.0);
/// GIN:  (mul-eps || pre[id3,sum]);add;MLP
/// weights: theta1 (n x n'), theta2 (n' x m), eps, activations f1, f2.
GnnModel build_gin(const WeightBundle& w, double eps = 0.0);
/// Original GNN:  (id || zeros);(pL || pre[mlp1,sum])*;MLP2
/// weights: theta1 ((2n+l+k) x n'), theta2 (n' x k), theta3 ((n+k) x m'), theta4 (m' x m), f1..f4.
/// `n` is the feature size; l follows from theta1. Edge labels are vec(l).
GnnModel build_gnn_orig(const WeightBundle& w, std::size_t n, double eps = 0.0);

GnnModel build_model(Arch a, const WeightBundle& w, std::size_t feature_size, std::size_t heads, double eps);

/// Per-node loops over the display equations; no code shared with the evaluators.
/// X holds one row per node. For GCN the degree is the encoding's in+out+2.
Matrix dense_oracle(Arch a, const Graph& g, const Matrix& X, const WeightBundle& w, std::size_t heads = 1,
                    double eps = 0.0);
/// GCN in matrix form D^-1/2 (A+I) D^-1/2 X Theta on the undirected graph whose edges are the
/// pairs {u,v} of g (g must list both directions of each undirected edge, without self-loops).
Matrix gcn_matrix_form(const Graph& g, const Matrix& X, const WeightBundle& w);
/// Softmax weights alpha_ji of one GAT head, per target node over in-neighbors then self.
std::vector<std::vector<double>> gat_attention(const Graph& g, const Matrix& X, const WeightBundle& w,
                                               std::size_t head);

/// Seeded random weights of the right shapes. For Orig every matrix is rescaled to spectral norm 0.5.
struct ZooDims {
    std::size_t n = 4, hidden = 4, m = 3, k = 3, l = 2, heads = 2;
};
WeightBundle random_weights(Arch a, const ZooDims& d, std::mt19937_64& rng);

NodeLabeling features_to_labeling(const Matrix& X);
Matrix labeling_to_features(const NodeLabeling& eta);

/// max_ij |a - b| / max(max_ij |b|, tiny): normwise relative error against oracle b.
double relative_error(const Matrix& a, const Matrix& b);

} // namespace mug
