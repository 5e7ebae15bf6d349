#pragma once

#include <mug/ast.hpp>
#include <mug/graph.hpp>
#include <mug/registry.hpp>

#include <cstdint>
#include <random>

namespace mug {

/// Builtins plus the symbols of the worked example (psi1, psi2, psi3, phi, sigma) and the
/// integer-valued library the program generator draws from.
RegistryBuilder demo_builder(double eps);
Registry demo_registry(double eps);

/// Uniform integer in [lo, hi] from raw engine output (portable across standard libraries).
long uniform_int(std::mt19937_64& rng, long lo, long hi);
bool coin(std::mt19937_64& rng, unsigned percent);

/// Random label of type t; numbers are small integers so sums are exact.
Value random_value(const LabelType& t, std::mt19937_64& rng, long lo = -3, long hi = 3);
NodeLabeling random_labeling(std::size_t n, const LabelType& t, std::mt19937_64& rng);
/// Random multigraph with self-loops allowed and integer edge weights in [-2, 2].
Graph random_graph(std::mt19937_64& rng, std::size_t max_nodes = 12, std::size_t max_edges_per_node = 3);

/// One generated test case of the differential suite.
struct GenCase {
    CoreExpr program;
    LabelType in_type;
    LabelType out_type;
    Graph graph;
    NodeLabeling labels;
};

/// Type-directed generator of well-typed core programs over demo_registry().
class ProgramGenerator {
public:
    explicit ProgramGenerator(std::uint64_t seed, std::size_t max_depth = 6);

    /// A program accepting `in`, of AST depth at most max_depth; `out` receives its output type.
    CoreExpr program(const LabelType& in, LabelType& out);
    LabelType random_type();
    GenCase next_case();

    std::mt19937_64& rng() { return rng_; }

private:
    struct Gen;
    std::mt19937_64 rng_;
    std::size_t max_depth_;
};

} // namespace mug
