#include <mug/gnnzoo.hpp>

#include <mug/error.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>

namespace mug {

double Activation::operator()(double x) const {
    switch (kind) {
        case Kind::Identity: return x;
        case Kind::Relu: return x > 0 ? x : 0.0;
        case Kind::LeakyRelu: return x > 0 ? x : slope * x;
        case Kind::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
    }
    return x;
}

Activation Activation::parse(const std::string& s) {
    if (s == "identity" || s == "id") return {Kind::Identity};
    if (s == "relu") return {Kind::Relu};
    if (s == "sigmoid") return {Kind::Sigmoid};
    if (s == "leaky_relu") return {Kind::LeakyRelu, 0.2};
    constexpr std::string_view prefix = "leaky_relu(";
    if (s.starts_with(prefix) && s.ends_with(")")) {
        std::string inner = s.substr(prefix.size(), s.size() - prefix.size() - 1);
        try {
            std::size_t used = 0;
            double slope = std::stod(inner, &used);
            if (used == inner.size()) return {Kind::LeakyRelu, slope};
        } catch (const std::exception&) {
        }
    }
    throw Error(ErrorKind::Structural, fmt::format("unknown activation '{}'", s));
}

std::string Activation::name() const {
    switch (kind) {
        case Kind::Identity: return "identity";
        case Kind::Relu: return "relu";
        case Kind::LeakyRelu: return fmt::format("leaky_relu({})", slope);
        case Kind::Sigmoid: return "sigmoid";
    }
    return "identity";
}

const Matrix& WeightBundle::matrix(const std::string& name) const {
    auto it = matrices.find(name);
    if (it == matrices.end()) throw Error(ErrorKind::Structural, fmt::format("weights: missing matrix '{}'", name));
    return it->second;
}

const std::vector<double>& WeightBundle::vector(const std::string& name) const {
    auto it = vectors.find(name);
    if (it == vectors.end()) throw Error(ErrorKind::Structural, fmt::format("weights: missing vector '{}'", name));
    return it->second;
}

double WeightBundle::scalar(const std::string& name, double fallback) const {
    auto it = scalars.find(name);
    return it == scalars.end() ? fallback : it->second;
}

Activation WeightBundle::activation(const std::string& name) const {
    auto it = activations.find(name);
    return it == activations.end() ? Activation{} : it->second;
}

WeightBundle WeightBundle::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw Error(ErrorKind::Structural, "weights: expected a JSON object");
    WeightBundle w;
    for (const auto& [key, v] : j.items()) {
        if (key == "activations") {
            if (!v.is_object()) throw Error(ErrorKind::Structural, "weights: 'activations' must be an object");
            for (const auto& [f, a] : v.items()) {
                if (!a.is_string()) throw Error(ErrorKind::Structural, fmt::format("weights: activation '{}'", f));
                w.activations[f] = Activation::parse(a.get<std::string>());
            }
        } else if (v.is_number()) {
            w.scalars[key] = v.get<double>();
        } else if (v.is_array() && !v.empty() && v.front().is_array()) {
            Matrix m(v.size(), v.front().size());
            for (std::size_t i = 0; i < m.rows; ++i) {
                if (!v[i].is_array() || v[i].size() != m.cols)
                    throw Error(ErrorKind::Structural, fmt::format("weights: '{}' is not rectangular", key));
                for (std::size_t c = 0; c < m.cols; ++c) {
                    if (!v[i][c].is_number())
                        throw Error(ErrorKind::Structural, fmt::format("weights: '{}' has a non-number entry", key));
                    m.at(i, c) = v[i][c].get<double>();
                }
            }
            w.matrices[key] = std::move(m);
        } else if (v.is_array()) {
            std::vector<double> xs;
            for (const auto& x : v) {
                if (!x.is_number())
                    throw Error(ErrorKind::Structural, fmt::format("weights: '{}' has a non-number entry", key));
                xs.push_back(x.get<double>());
            }
            w.vectors[key] = std::move(xs);
        } else {
            throw Error(ErrorKind::Structural, fmt::format("weights: cannot read entry '{}'", key));
        }
    }
    return w;
}

nlohmann::json WeightBundle::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, m] : matrices) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < m.rows; ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < m.cols; ++c) row.push_back(m.at(i, c));
            rows.push_back(std::move(row));
        }
        j[k] = std::move(rows);
    }
    for (const auto& [k, v] : vectors) j[k] = v;
    for (const auto& [k, x] : scalars) j[k] = x;
    if (!activations.empty()) {
        nlohmann::json a = nlohmann::json::object();
        for (const auto& [k, f] : activations) a[k] = f.name();
        j["activations"] = std::move(a);
    }
    return j;
}

Arch parse_arch(const std::string& s) {
    if (s == "gcn") return Arch::Gcn;
    if (s == "gat") return Arch::Gat;
    if (s == "gin") return Arch::Gin;
    if (s == "orig" || s == "gnn") return Arch::Orig;
    throw Error(ErrorKind::Usage, fmt::format("unknown architecture '{}' (expected gcn, gat, gin or orig)", s));
}

std::string_view arch_name(Arch a) {
    switch (a) {
        case Arch::Gcn: return "gcn";
        case Arch::Gat: return "gat";
        case Arch::Gin: return "gin";
        case Arch::Orig: return "orig";
    }
    return "?";
}

namespace {

Matrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(r, 1))));
    Matrix m(r, c);
    for (double& x : m.data) x = d(rng);
    return m;
}

// Largest singular value by power iteration on M^T M.
double spectral_norm(const Matrix& m) {
    if (m.rows == 0 || m.cols == 0) return 0.0;
    std::vector<double> v(m.cols, 1.0), u(m.rows);
    double sigma = 0.0;
    for (int it = 0; it < 500; ++it) {
        for (std::size_t i = 0; i < m.rows; ++i) {
            u[i] = 0;
            for (std::size_t j = 0; j < m.cols; ++j) u[i] += m.at(i, j) * v[j];
        }
        std::vector<double> w(m.cols, 0.0);
        for (std::size_t i = 0; i < m.rows; ++i)
            for (std::size_t j = 0; j < m.cols; ++j) w[j] += m.at(i, j) * u[i];
        double norm = 0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0) return 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) v[j] = w[j] / norm;
        double next = std::sqrt(norm);
        if (std::abs(next - sigma) <= 1e-13 * next) return next;
        sigma = next;
    }
    return sigma;
}

Matrix rescaled(Matrix m, double target) {
    double s = spectral_norm(m);
    if (s > 0)
        for (double& x : m.data) x *= target / s;
    return m;
}

Activation random_activation(std::mt19937_64& rng) {
    switch (rng() % 4) {
        case 0: return {Activation::Kind::Identity};
        case 1: return {Activation::Kind::Relu};
        case 2: return {Activation::Kind::LeakyRelu, 0.2};
        default: return {Activation::Kind::Sigmoid};
    }
}

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 0.5);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

} // namespace

WeightBundle random_weights(Arch a, const ZooDims& d, std::mt19937_64& rng) {
    WeightBundle w;
    switch (a) {
        case Arch::Gcn:
            w.matrices["theta"] = random_matrix(d.n, d.m, rng);
            w.activations["f"] = random_activation(rng);
            break;
        case Arch::Gat:
            for (std::size_t h = 1; h <= d.heads; ++h) {
                w.matrices[fmt::format("theta{}", h)] = random_matrix(d.n, d.m, rng);
                w.vectors[fmt::format("a{}", h)] = random_vector(2 * d.m, rng);
                w.activations[fmt::format("f{}", h)] = random_activation(rng);
            }
            break;
        case Arch::Gin:
            w.matrices["theta1"] = random_matrix(d.n, d.hidden, rng);
            w.matrices["theta2"] = random_matrix(d.hidden, d.m, rng);
            w.scalars["eps"] = std::uniform_real_distribution<double>(-0.5, 0.5)(rng);
            w.activations["f1"] = random_activation(rng);
            w.activations["f2"] = random_activation(rng);
            break;
        case Arch::Orig: {
            // Spectral norm 0.5 per matrix keeps the state update a contraction
            // on graphs whose in-degree is at most 3 (3 * 0.5 * 0.5 < 1).
            w.matrices["theta1"] = rescaled(random_matrix(2 * d.n + d.l + d.k, d.hidden, rng), 0.5);
            w.matrices["theta2"] = rescaled(random_matrix(d.hidden, d.k, rng), 0.5);
            w.matrices["theta3"] = rescaled(random_matrix(d.n + d.k, d.hidden, rng), 0.5);
            w.matrices["theta4"] = rescaled(random_matrix(d.hidden, d.m, rng), 0.5);
            for (const char* f : {"f1", "f2", "f3", "f4"}) w.activations[f] = random_activation(rng);
            break;
        }
    }
    return w;
}

NodeLabeling features_to_labeling(const Matrix& X) {
    std::vector<Value> vs;
    vs.reserve(X.rows);
    for (std::size_t i = 0; i < X.rows; ++i)
        vs.emplace_back(Vec(X.data.begin() + static_cast<std::ptrdiff_t>(i * X.cols),
                            X.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * X.cols)));
    return NodeLabeling(std::move(vs), LabelType::vec(X.cols));
}

Matrix labeling_to_features(const NodeLabeling& eta) {
    if (eta.size() == 0) return Matrix(0, 0);
    std::size_t cols = eta[0].as_vec().size();
    Matrix X(eta.size(), cols);
    for (std::size_t i = 0; i < eta.size(); ++i) {
        const Vec& v = eta[i].as_vec();
        if (v.size() != cols) throw Error(ErrorKind::Structural, "feature vectors differ in length");
        std::copy(v.begin(), v.end(), X.data.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return X;
}

double relative_error(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows || a.cols != b.cols) return std::numeric_limits<double>::infinity();
    double diff = 0, scale = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        if (!std::isfinite(a.data[i]) || !std::isfinite(b.data[i])) return std::numeric_limits<double>::infinity();
        diff = std::max(diff, std::abs(a.data[i] - b.data[i]));
        scale = std::max(scale, std::abs(b.data[i]));
    }
    return diff / std::max(scale, 1e-300);
}

} // namespace mug
