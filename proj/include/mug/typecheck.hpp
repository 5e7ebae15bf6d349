#pragma once

#include <mug/ast.hpp>
#include <mug/registry.hpp>

#include <optional>

namespace mug {

/// Phi[T1, T2]: a GNN from T1-labelings to T2-labelings.
struct GnnType {
    LabelType input;
    LabelType output;
    friend bool operator==(const GnnType&, const GnnType&) = default;
};

std::string to_string(const GnnType& t);

/// Syntax-directed typing of a core term for a given input label type. `edge_type` is the
/// edge label type of a concrete graph; without it phi functions are checked for node types only.
/// Throws TypeMismatch (naming the subterm, expected and found types), NonBooleanGuard or UnknownSymbol.
GnnType infer(const CoreExpr& e, const LabelType& in, const Registry& r,
              const std::optional<LabelType>& edge_type = std::nullopt);

} // namespace mug
