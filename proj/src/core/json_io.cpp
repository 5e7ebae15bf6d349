#include <mug/json_io.hpp>

#include <mug/error.hpp>

#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace mug {

using nlohmann::json;

Value value_from_json(const json& j) {
    if (j.is_null()) return Value(Unit{});
    if (j.is_boolean()) return Value(j.get<bool>());
    if (j.is_number()) return Value(j.get<double>());
    if (j.is_array()) {
        if (j.empty()) return Value(SymSet{});
        if (j.front().is_string()) {
            std::vector<std::string> items;
            for (const auto& e : j) {
                if (!e.is_string()) throw Error(ErrorKind::Structural, "mixed array in label: " + j.dump());
                items.push_back(e.get<std::string>());
            }
            return Value(SymSet(std::move(items)));
        }
        Vec x;
        for (const auto& e : j) {
            if (!e.is_number()) throw Error(ErrorKind::Structural, "mixed array in label: " + j.dump());
            x.push_back(e.get<double>());
        }
        return Value(std::move(x));
    }
    if (j.is_object() && j.size() == 1 && j.contains("pair")) {
        const json& p = j.at("pair");
        if (!p.is_array() || p.size() != 2) throw Error(ErrorKind::Structural, "pair label needs two components");
        return Value::pair(value_from_json(p[0]), value_from_json(p[1]));
    }
    throw Error(ErrorKind::Structural, "unsupported label encoding: " + j.dump());
}

json value_to_json(const Value& v) {
    if (v.is_unit()) return nullptr;
    if (v.is_bool()) return v.as_bool();
    if (v.is_num()) return v.as_num();
    if (v.is_vec()) return v.as_vec();
    if (v.is_symset()) return v.as_symset().items();
    return json{{"pair", json::array({value_to_json(v.left()), value_to_json(v.right())})}};
}

namespace {
std::size_t node_index(const json& j, const char* field, std::size_t n) {
    if (!j.contains(field) || !j.at(field).is_number_integer())
        throw Error(ErrorKind::Structural, fmt::format("missing integer field '{}' in {}", field, j.dump()));
    auto v = j.at(field).get<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw Error(ErrorKind::Structural, fmt::format("{} {} outside node range [0, {})", field, v, n));
    return static_cast<std::size_t>(v);
}
} // namespace

LabeledGraph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.at("n").is_number_integer() || j.at("n").get<long long>() < 0)
        throw Error(ErrorKind::Structural, "graph JSON needs a non-negative integer field 'n'");
    const auto n = j.at("n").get<std::size_t>();

    std::vector<Value> labels(n);
    std::vector<bool> seen(n, false);
    if (j.contains("nodes")) {
        for (const json& node : j.at("nodes")) {
            std::size_t id = node_index(node, "id", n);
            if (seen[id]) throw Error(ErrorKind::Structural, fmt::format("node {} labeled twice", id));
            seen[id] = true;
            labels[id] = node.contains("label") ? value_from_json(node.at("label")) : Value(Unit{});
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!seen[v]) throw Error(ErrorKind::Structural, fmt::format("node {} has no label", v));

    std::vector<Edge> edges;
    std::vector<Value> edge_labels;
    if (j.contains("edges")) {
        for (const json& e : j.at("edges")) {
            edges.push_back(Edge{node_index(e, "src", n), node_index(e, "dst", n)});
            edge_labels.push_back(e.contains("label") ? value_from_json(e.at("label")) : Value(Unit{}));
        }
    }
    Graph g(n, std::move(edges), std::move(edge_labels));
    NodeLabeling eta = n == 0 ? NodeLabeling({}, LabelType::unit()) : NodeLabeling::infer(std::move(labels));
    return LabeledGraph{std::move(g), std::move(eta)};
}

json graph_to_json(const Graph& g, const NodeLabeling& labels) {
    if (labels.size() != g.node_count())
        throw Error(ErrorKind::Structural,
                    fmt::format("labeling of {} nodes for a graph of {}", labels.size(), g.node_count()));
    json nodes = json::array();
    for (std::size_t v = 0; v < g.node_count(); ++v) nodes.push_back({{"id", v}, {"label", value_to_json(labels[v])}});
    json edges = json::array();
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        json e = {{"src", g.edges()[i].src}, {"dst", g.edges()[i].dst}};
        if (!g.edge_label(i).is_unit()) e["label"] = value_to_json(g.edge_label(i));
        edges.push_back(std::move(e));
    }
    return json{{"n", g.node_count()}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
    out << text;
    if (!out) throw Error(ErrorKind::Io, "error writing '" + path + "'");
}

json read_json_file(const std::string& path) {
    std::string text = read_text_file(path);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Io, fmt::format("'{}' is not valid JSON: {}", path, e.what()));
    }
}

LabeledGraph read_graph_file(const std::string& path) { return graph_from_json(read_json_file(path)); }

} // namespace mug
