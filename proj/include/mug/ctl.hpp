#pragma once

#include <mug/ast.hpp>
#include <mug/eval.hpp>
#include <mug/json_io.hpp>

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace mug {

/// A Kripke structure: transitions are the graph's edges (Unit labels), states carry
/// the set of atomic propositions that hold there. Deadlock states are allowed.
struct Kripke {
    Graph graph;
    NodeLabeling labels;
};

/// Validates that node labels are symbol sets and edge labels are Unit.
Kripke make_kripke(LabeledGraph g);

class CtlFormula {
public:
    enum class Kind { Atom, True, False, Not, And, Or, EX, EG, EU, EF, AX, AF, AG, AU };

    static CtlFormula atom(std::string p);
    static CtlFormula tt();
    static CtlFormula ff();
    static CtlFormula unary(Kind k, CtlFormula f);
    static CtlFormula binary(Kind k, CtlFormula l, CtlFormula r);

    Kind kind() const { return n_->kind; }
    const std::string& name() const { return n_->name; }
    const CtlFormula& sub(std::size_t i = 0) const { return n_->subs.at(i); }
    std::size_t arity() const { return n_->subs.size(); }
    /// Operator nesting depth; atoms and constants have depth 0.
    std::size_t depth() const;
    /// True when only Atom, True, False, Not, And, Or, EX, EG, EU occur.
    bool adequate() const;

    friend bool operator==(const CtlFormula& a, const CtlFormula& b);

private:
    struct Node {
        Kind kind;
        std::string name;
        std::vector<CtlFormula> subs;
    };
    explicit CtlFormula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

/// `tt | ff | atom | !f | f & f | f '|' f | EX f | EG f | EF f | AX f | AF f | AG f | E f U f | A f U f`,
/// also `E[f U f]` and `A[f U f]`. `!` binds tighter than `&`, which binds tighter than `|`;
/// temporal operators are prefix and take a unary operand. Atoms start with a lowercase letter.
CtlFormula parse_ctl(std::string_view text);
std::string to_string(const CtlFormula& f);

/// Rewrites EF, AX, AF, AG, AU through the usual dualities into the adequate set.
CtlFormula eliminate_derived(const CtlFormula& f);

/// The translation M into mu-G; `f` must be adequate.
SurfaceExpr translate(const CtlFormula& f);

/// Builtins plus one psi per atom of `f` (true iff the atom is in the state's label).
Registry ctl_registry(const CtlFormula& f);

enum class Semantics { Denotational, Operational };

/// Model checks `f` through mu-G: eliminate, translate, expand, type-check at symset -> bool, run.
/// Epsilon is forced to 0.
NodeLabeling check(const Kripke& k, const CtlFormula& f, const RunParams& p = {},
                   Semantics sem = Semantics::Denotational, const Observer* obs = nullptr);

/// Independent explicit-state labeling with set fixpoints for every operator.
NodeLabeling oracle(const Kripke& k, const CtlFormula& f);

/// Random structure over atoms p, q, r. Out-degrees are uniform in [0, 2*avg_degree].
Kripke random_kripke(std::size_t states, std::size_t avg_degree, std::mt19937_64& rng);
CtlFormula random_formula(std::size_t max_depth, std::mt19937_64& rng);
/// Every formula of depth <= 1 over p, q, r, tt, ff.
std::vector<CtlFormula> shallow_formulas();

} // namespace mug
