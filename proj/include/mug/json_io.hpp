#pragma once

#include <mug/graph.hpp>

#include <nlohmann/json.hpp>

#include <string>

namespace mug {

/// JSON encoding of labels: booleans, numbers, arrays of numbers (Vec), arrays of
/// strings (SymSet), null (Unit) and {"pair": [l, r]}. An empty array reads as an empty SymSet.
Value value_from_json(const nlohmann::json& j);
nlohmann::json value_to_json(const Value& v);

/// A graph together with its node labeling, as stored in Graph JSON files.
struct LabeledGraph {
    Graph graph;
    NodeLabeling labels;
};

/// Parses `{"n", "nodes": [{"id","label"}], "edges": [{"src","dst","label"?}]}`.
/// Every node in [0, n) must be labeled exactly once. A graph with n = 0 gets a Unit labeling.
LabeledGraph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g, const NodeLabeling& labels);

/// File helpers; failures to open or parse raise Error(Io).
nlohmann::json read_json_file(const std::string& path);
LabeledGraph read_graph_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace mug
