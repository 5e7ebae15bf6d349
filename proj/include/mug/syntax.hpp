#pragma once

#include <mug/ast.hpp>

#include <string>
#include <string_view>

namespace mug {

/// Parses the concrete syntax. Precedence, tightest first: postfix `*`, `;`, `||`, `(+)`;
/// the binary operators associate to the left. Macro forms (let, def, if, fix, repeat)
/// extend as far to the right as possible. A name is a variable when an enclosing
/// binder introduces it and a psi symbol otherwise. `#` starts a line comment.
/// Throws Error(Syntax) with the position and the set of expected tokens.
SurfaceExpr parse(std::string_view text);

/// Rewrites every macro into core constructors. Throws UnboundVariable, ArityMismatch
/// or VariablePosition (a fix/repeat variable on the right of `;`).
CoreExpr expand(const SurfaceExpr& e);

/// parse followed by expand.
CoreExpr parse_core(std::string_view text);

/// Minimally parenthesized concrete syntax; parse(pretty(e)) == e for core terms.
/// The internal product prints as `(x)`, which the parser does not accept.
std::string pretty(const CoreExpr& e);
std::string pretty(const SurfaceExpr& e);

/// Graphviz rendering: a box per psi/pre/post, fan-out and fan-in points around `||`,
/// a diamond for choice and a cluster with a feedback edge for star.
std::string to_dot(const CoreExpr& e);

/// True when `s` lexes as a single identifier and is not a keyword.
bool is_identifier(std::string_view s);
bool is_keyword(std::string_view s);

} // namespace mug
