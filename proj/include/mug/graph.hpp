#pragma once

#include <mug/value.hpp>

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mug {

using NodeId = std::size_t;
using EdgeIndex = std::size_t;

struct Edge {
    NodeId src = 0;
    NodeId dst = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// An incident edge as seen from one endpoint.
struct Incidence {
    EdgeIndex edge = 0;
    NodeId other = 0; ///< source for incoming edges, destination for outgoing ones
    friend bool operator==(const Incidence&, const Incidence&) = default;
};

/// Directed multigraph over dense node ids [0, n) with one edge label per edge.
/// Immutable after construction; incidence lists are kept in ascending edge-index order.
class Graph {
public:
    Graph() : Graph(0, {}, {}) {}
    /// Edge labels default to Unit when `edge_labels` is empty.
    Graph(std::size_t n, std::vector<Edge> edges, std::vector<Value> edge_labels = {});

    std::size_t node_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<Value>& edge_labels() const { return edge_labels_; }
    const Value& edge_label(EdgeIndex e) const { return edge_labels_[e]; }
    /// T_e; Unit for a graph without edges.
    const LabelType& edge_type() const { return edge_type_; }

    std::span<const Incidence> in_edges(NodeId v) const;
    std::span<const Incidence> out_edges(NodeId v) const;

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<Value> edge_labels_;
    LabelType edge_type_ = LabelType::unit();
    std::vector<std::size_t> in_offsets_, out_offsets_;
    std::vector<Incidence> in_, out_;
};

/// Incoming edges of v with their sources, ascending edge index. Throws Error(Structural) when v is out of range.
std::vector<Incidence> preset(const Graph& g, NodeId v);
/// Outgoing edges of v with their destinations, ascending edge index.
std::vector<Incidence> poset(const Graph& g, NodeId v);

/// A total node-labeling function eta: V -> T stored as an array indexed by node id.
class NodeLabeling {
public:
    NodeLabeling(std::vector<Value> values, LabelType type);
    /// Infers the type from the first entry; throws Error(Structural) when empty or heterogeneous.
    static NodeLabeling infer(std::vector<Value> values);

    std::size_t size() const { return values_.size(); }
    const Value& operator[](NodeId v) const { return values_[v]; }
    const std::vector<Value>& values() const { return values_; }
    const LabelType& type() const { return type_; }

    /// True if every entry structurally matches type().
    bool well_typed() const;

private:
    std::vector<Value> values_;
    LabelType type_;
};

/// Pointwise pairing eta1 | eta2.
NodeLabeling pair_labelings(const NodeLabeling& a, const NodeLabeling& b);
NodeLabeling project_left(const NodeLabeling& a);
NodeLabeling project_right(const NodeLabeling& a);
/// The multiset eta(V), materialized in ascending node-id order.
std::span<const Value> all_labels(const NodeLabeling& a);

/// Bitwise identity of two labelings (same type, same size, identical entries).
bool identical(const NodeLabeling& a, const NodeLabeling& b);

} // namespace mug
