#pragma once

#include <mug/eval.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mug {

enum class Verdict { Agree, AgreeUndefined, Mismatch };
std::string_view verdict_name(Verdict v);

struct DiffReport {
    Verdict verdict = Verdict::Agree;
    std::string detail;
    std::optional<NodeId> first_difference;
};

/// Runs both semantics; outputs must be bitwise identical, or both must fail with
/// the same kind of error (budget exhaustion counts as one kind).
DiffReport diff_check(const CoreExpr& e, const Graph& g, const NodeLabeling& eta, const Registry& r,
                      const RunParams& p);

/// Runs the machine under left-first, right-first and `random_schedules` seeded schedules
/// and compares the final labelings bitwise.
DiffReport confluence_check(const CoreExpr& e, const Graph& g, const NodeLabeling& eta, const Registry& r,
                            const RunParams& p, std::size_t random_schedules = 20, std::uint64_t seed = 1);

/// Registry contract: every monomorphic psi must ignore the order of the global multiset and
/// every monomorphic sigma the order of its messages. Returns one line per violation.
std::vector<std::string> contract_violations(const Registry& r, std::uint64_t seed, std::size_t samples = 25);

/// A corpus program together with the input type it is meant for.
struct CorpusProgram {
    std::string name;
    CoreExpr program;
    LabelType in_type;
};

struct HarnessReport {
    std::size_t cases = 0;
    std::size_t agree = 0;
    std::size_t undefined = 0;
    std::size_t mismatches = 0;
    std::vector<std::string> lines;
};

/// The differential suite: `count` generated cases plus every corpus program on random
/// graphs, each checked for equivalence and schedule confluence, after a contract check of r.
HarnessReport run_harness(std::size_t count, std::uint64_t seed, const std::vector<CorpusProgram>& corpus,
                          const Registry& r, const RunParams& p);

/// Every `*.mg` file of `dir` in name order. Each must start with a `# in-type: T` line.
std::vector<CorpusProgram> load_corpus(const std::string& dir);

/// Budgets used for generated programs: small enough that divergent stars fail fast.
RunParams harness_params();

} // namespace mug
