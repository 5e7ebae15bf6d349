#include <mug/graph.hpp>

#include <mug/error.hpp>

#include <fmt/format.h>

namespace mug {

namespace {

void build_csr(std::size_t n, const std::vector<Edge>& edges, bool incoming, std::vector<std::size_t>& offsets,
               std::vector<Incidence>& out) {
    offsets.assign(n + 1, 0);
    for (const Edge& e : edges) ++offsets[(incoming ? e.dst : e.src) + 1];
    for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
    out.resize(edges.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    // Edges are visited in index order, so each bucket ends up sorted.
    for (EdgeIndex i = 0; i < edges.size(); ++i) {
        const Edge& e = edges[i];
        NodeId key = incoming ? e.dst : e.src;
        out[cursor[key]++] = Incidence{i, incoming ? e.src : e.dst};
    }
}

} // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges, std::vector<Value> edge_labels)
    : n_(n), edges_(std::move(edges)), edge_labels_(std::move(edge_labels)) {
    for (const Edge& e : edges_) {
        if (e.src >= n_ || e.dst >= n_)
            throw Error(ErrorKind::Structural, fmt::format("edge ({}, {}) outside node range [0, {})", e.src, e.dst, n_));
    }
    if (edge_labels_.empty()) edge_labels_.assign(edges_.size(), Value{});
    if (edge_labels_.size() != edges_.size())
        throw Error(ErrorKind::Structural,
                    fmt::format("{} edge labels for {} edges", edge_labels_.size(), edges_.size()));
    if (!edge_labels_.empty()) {
        edge_type_ = edge_labels_.front().type();
        for (const Value& l : edge_labels_)
            if (!has_type(l, edge_type_))
                throw Error(ErrorKind::Structural, fmt::format("edge label {} does not match edge type {}",
                                                               to_string(l), to_string(edge_type_)));
    }
    build_csr(n_, edges_, true, in_offsets_, in_);
    build_csr(n_, edges_, false, out_offsets_, out_);
}

std::span<const Incidence> Graph::in_edges(NodeId v) const {
    return {in_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::span<const Incidence> Graph::out_edges(NodeId v) const {
    return {out_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

namespace {
void check_node(const Graph& g, NodeId v) {
    if (v >= g.node_count())
        throw Error(ErrorKind::Structural, fmt::format("node {} outside range [0, {})", v, g.node_count()));
}
} // namespace

std::vector<Incidence> preset(const Graph& g, NodeId v) {
    check_node(g, v);
    auto s = g.in_edges(v);
    return {s.begin(), s.end()};
}

std::vector<Incidence> poset(const Graph& g, NodeId v) {
    check_node(g, v);
    auto s = g.out_edges(v);
    return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------

NodeLabeling::NodeLabeling(std::vector<Value> values, LabelType type)
    : values_(std::move(values)), type_(std::move(type)) {}

NodeLabeling NodeLabeling::infer(std::vector<Value> values) {
    if (values.empty()) throw Error(ErrorKind::Structural, "cannot infer the type of an empty labeling");
    LabelType t = values.front().type();
    NodeLabeling l(std::move(values), t);
    if (!l.well_typed()) throw Error(ErrorKind::Structural, "labels of a labeling do not share one type");
    return l;
}

bool NodeLabeling::well_typed() const {
    for (const Value& v : values_)
        if (!has_type(v, type_)) return false;
    return true;
}

NodeLabeling pair_labelings(const NodeLabeling& a, const NodeLabeling& b) {
    if (a.size() != b.size())
        throw Error(ErrorKind::Structural, fmt::format("pairing labelings of {} and {} nodes", a.size(), b.size()));
    std::vector<Value> out;
    out.reserve(a.size());
    for (std::size_t v = 0; v < a.size(); ++v) out.push_back(Value::pair(a[v], b[v]));
    return NodeLabeling(std::move(out), LabelType::prod(a.type(), b.type()));
}

namespace {
NodeLabeling project(const NodeLabeling& a, bool left) {
    if (!a.type().is_prod())
        throw Error(ErrorKind::NonProductLabel, "projection of a labeling of type " + to_string(a.type()));
    std::vector<Value> out;
    out.reserve(a.size());
    for (const Value& v : a.values()) out.push_back(left ? v.left() : v.right());
    return NodeLabeling(std::move(out), left ? a.type().left() : a.type().right());
}
} // namespace

NodeLabeling project_left(const NodeLabeling& a) { return project(a, true); }
NodeLabeling project_right(const NodeLabeling& a) { return project(a, false); }

std::span<const Value> all_labels(const NodeLabeling& a) { return a.values(); }

bool identical(const NodeLabeling& a, const NodeLabeling& b) {
    if (a.size() != b.size() || !(a.type() == b.type())) return false;
    for (std::size_t v = 0; v < a.size(); ++v)
        if (!identical(a[v], b[v])) return false;
    return true;
}

} // namespace mug
