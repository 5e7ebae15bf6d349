#pragma once

#include <mug/ast.hpp>
#include <mug/graph.hpp>
#include <mug/registry.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <random>

namespace mug {

/// Which side of a product steps when both could (rules PAR1/PAR2).
struct Schedule {
    enum class Kind { LeftFirst, RightFirst, RandomSeeded };
    Kind kind = Kind::LeftFirst;
    std::uint64_t seed = 0;

    static Schedule left_first() { return {}; }
    static Schedule right_first() { return {Kind::RightFirst, 0}; }
    static Schedule random(std::uint64_t seed) { return {Kind::RandomSeeded, seed}; }
};

std::string to_string(const Schedule& s);

struct RunParams {
    double epsilon = 0.0;
    /// Star iterations (evaluations of the loop body) before FixpointDivergence.
    unsigned long max_fix_iters = 10000;
    /// Operational steps before StepsExhausted.
    unsigned long max_steps = 10'000'000;
    Schedule schedule;
};

/// A configuration <N, eta> of the operational semantics.
struct Config {
    CoreExpr expr;
    NodeLabeling labeling;
};

/// Optional instrumentation hooks, used by the property suites.
struct Observer {
    /// Called with every configuration produced by a step.
    std::function<void(const Config&)> on_step;
    /// Called by the denotational evaluator with each star iterate eta_0, eta_1, ...
    std::function<void(const CoreExpr& star, const NodeLabeling& iterate)> on_fix_iterate;
};

/// The denotational semantics [[e]](eta) on graph g.
NodeLabeling eval_denot(const CoreExpr& e, const Graph& g, const NodeLabeling& eta, const Registry& r,
                        const RunParams& p = {}, const Observer* obs = nullptr);

struct StepResult {
    std::optional<Config> next;
    std::optional<NodeLabeling> final;
    bool is_final() const { return final.has_value(); }
};

/// Small-step machine. Holds the scheduler state, so a sequence of steps with a random
/// schedule is reproducible from the seed.
class Machine {
public:
    Machine(const Graph& g, const Registry& r, const RunParams& p);

    /// Applies exactly one rule. Throws Stuck when no rule applies and FixpointDivergence
    /// when a star has been unrolled max_fix_iters times.
    StepResult step(const Config& c);

    const RunParams& params() const { return p_; }

private:
    Config rewrite(const CoreExpr& e, const NodeLabeling& eta);

    const Graph& g_;
    Registry r_;
    RunParams p_;
    std::mt19937_64 rng_;
};

StepResult step(const Config& c, const Graph& g, const Registry& r, const RunParams& p = {});

/// Runs the machine to a final configuration; StepsExhausted after max_steps.
NodeLabeling run_sos(const CoreExpr& e, const Graph& g, const NodeLabeling& eta, const Registry& r,
                     const RunParams& p = {}, const Observer* obs = nullptr);

/// Shared building blocks of both evaluators: one psi / pre / post application over all nodes.
NodeLabeling apply_psi(const PsiFun& f, const NodeLabeling& eta);
NodeLabeling apply_image(const PhiFun& phi, const SigmaFun& sigma, const Graph& g, const NodeLabeling& eta,
                         bool incoming);
/// True iff every node's label is a pair whose left component is Bool(true); vacuous on n = 0.
bool guard_all_true(const NodeLabeling& eta);

} // namespace mug
