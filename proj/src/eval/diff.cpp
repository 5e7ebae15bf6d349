#include <mug/diff.hpp>

#include <mug/generate.hpp>
#include <mug/syntax.hpp>
#include <mug/typecheck.hpp>

#include <mug/json_io.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <filesystem>

namespace mug {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Agree: return "agree";
        case Verdict::AgreeUndefined: return "agree-undefined";
        case Verdict::Mismatch: return "MISMATCH";
    }
    return "?";
}

namespace {

struct Outcome {
    std::optional<NodeLabeling> value;
    std::optional<ErrorKind> error;
    std::string message;
};

template <class F>
Outcome capture(F&& run) {
    try {
        return Outcome{run(), std::nullopt, {}};
    } catch (const Error& e) {
        // Both budgets mean "undefined": the two semantics count differently but diverge alike.
        ErrorKind k = e.is_budget() ? ErrorKind::FixpointDivergence : e.kind();
        return Outcome{std::nullopt, k, e.what()};
    }
}

DiffReport compare(const Outcome& a, const Outcome& b, std::string_view an, std::string_view bn) {
    DiffReport r;
    if (a.error || b.error) {
        if (a.error && b.error && *a.error == *b.error) {
            r.verdict = Verdict::AgreeUndefined;
            r.detail = a.message;
        } else {
            r.verdict = Verdict::Mismatch;
            r.detail = fmt::format("{}: {}; {}: {}", an, a.error ? a.message : "defined", bn,
                                   b.error ? b.message : "defined");
        }
        return r;
    }
    const NodeLabeling& x = *a.value;
    const NodeLabeling& y = *b.value;
    if (!(x.type() == y.type())) {
        r.verdict = Verdict::Mismatch;
        r.detail = fmt::format("output types differ: {} vs {}", to_string(x.type()), to_string(y.type()));
        return r;
    }
    for (NodeId v = 0; v < x.size(); ++v) {
        if (!identical(x[v], y[v])) {
            r.verdict = Verdict::Mismatch;
            r.first_difference = v;
            r.detail = fmt::format("node {}: {} gives {}, {} gives {}", v, an, to_string(x[v]), bn, to_string(y[v]));
            return r;
        }
    }
    return r;
}

bool has_parallel(const CoreExpr& e) {
    switch (e.kind()) {
        case CoreExpr::Kind::Par:
        case CoreExpr::Kind::Prod:
        case CoreExpr::Kind::Star: return true; // STAR unfolds into `||`
        default:
            if (e.is_leaf()) return false;
            if (e.kind() == CoreExpr::Kind::Choice || e.kind() == CoreExpr::Kind::Seq)
                return has_parallel(e.left()) || has_parallel(e.right());
            return false;
    }
}

template <class V>
void shuffle(V& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng() % i]);
}

} // namespace

DiffReport diff_check(const CoreExpr& e, const Graph& g, const NodeLabeling& eta, const Registry& r,
                      const RunParams& p) {
    Outcome d = capture([&] { return eval_denot(e, g, eta, r, p); });
    Outcome s = capture([&] { return run_sos(e, g, eta, r, p); });
    return compare(d, s, "denotational", "operational");
}

DiffReport confluence_check(const CoreExpr& e, const Graph& g, const NodeLabeling& eta, const Registry& r,
                            const RunParams& p, std::size_t random_schedules, std::uint64_t seed) {
    std::vector<Schedule> schedules{Schedule::left_first(), Schedule::right_first()};
    for (std::size_t i = 0; i < random_schedules; ++i) schedules.push_back(Schedule::random(seed + i));
    RunParams q = p;
    q.schedule = schedules.front();
    Outcome base = capture([&] { return run_sos(e, g, eta, r, q); });
    DiffReport worst;
    for (std::size_t i = 1; i < schedules.size(); ++i) {
        q.schedule = schedules[i];
        Outcome o = capture([&] { return run_sos(e, g, eta, r, q); });
        DiffReport d = compare(base, o, to_string(schedules[0]), to_string(schedules[i]));
        if (d.verdict == Verdict::Mismatch) return d;
        worst = d;
    }
    return worst;
}

std::vector<std::string> contract_violations(const Registry& r, std::uint64_t seed, std::size_t samples) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> out;
    for (const std::string& name : r.psi_names()) {
        const PsiFun& f = r.lookup_psi(name);
        if (!f.in_type) continue;
        for (std::size_t s = 0; s < samples; ++s) {
            auto n = static_cast<std::size_t>(uniform_int(rng, 1, 8));
            std::vector<Value> all;
            for (std::size_t i = 0; i < n; ++i) all.push_back(random_value(*f.in_type, rng));
            Value x = all[rng() % n];
            Value a = f.apply(all, x);
            shuffle(all, rng);
            Value b = f.apply(all, x);
            if (!identical(a, b)) {
                out.push_back(fmt::format("psi '{}' depends on the order of the label multiset", name));
                break;
            }
            if (f.out_type && !has_type(a, *f.out_type)) {
                out.push_back(fmt::format("psi '{}' returned {} outside its declared type {}", name, to_string(a),
                                          to_string(*f.out_type)));
                break;
            }
        }
    }
    for (const std::string& name : r.sigma_names()) {
        const SigmaFun& f = r.lookup_sigma(name);
        if (!f.msg_type) continue;
        for (std::size_t s = 0; s < samples; ++s) {
            auto n = static_cast<std::size_t>(uniform_int(rng, 0, 8));
            std::vector<Value> msgs;
            for (std::size_t i = 0; i < n; ++i) msgs.push_back(random_value(*f.msg_type, rng));
            Value x = f.node_type ? random_value(*f.node_type, rng) : Value(0.0);
            Value a = f.apply(msgs, x);
            shuffle(msgs, rng);
            Value b = f.apply(msgs, x);
            if (!identical(a, b)) {
                out.push_back(fmt::format("sigma '{}' depends on the order of its messages", name));
                break;
            }
        }
    }
    return out;
}

std::vector<CorpusProgram> load_corpus(const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::Io, fmt::format("corpus directory '{}' not found", dir));
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".mg") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    constexpr std::string_view header = "# in-type:";
    std::vector<CorpusProgram> out;
    for (const fs::path& f : files) {
        std::string text = read_text_file(f.string());
        std::string first = text.substr(0, text.find('\n'));
        if (!first.starts_with(header))
            throw Error(ErrorKind::Syntax, fmt::format("{}: first line must be '# in-type: <type>'", f.string()));
        out.push_back({f.stem().string(), parse_core(text), parse_label_type(first.substr(header.size()))});
    }
    return out;
}

RunParams harness_params() {
    RunParams p;
    p.max_fix_iters = 40;
    p.max_steps = 2'000'000;
    return p;
}

HarnessReport run_harness(std::size_t count, std::uint64_t seed, const std::vector<CorpusProgram>& corpus,
                          const Registry& r, const RunParams& p) {
    HarnessReport rep;
    for (const std::string& v : contract_violations(r, seed)) {
        ++rep.mismatches;
        rep.lines.push_back("contract MISMATCH: " + v);
    }

    auto check_one = [&](const std::string& label, const CoreExpr& e, const Graph& g, const NodeLabeling& eta) {
        ++rep.cases;
        std::optional<LabelType> edge;
        if (g.edge_count() > 0) edge = g.edge_type();
        try {
            infer(e, eta.type(), r, edge);
        } catch (const Error& err) {
            ++rep.mismatches;
            rep.lines.push_back(fmt::format("{} MISMATCH: program does not type-check: {}", label, err.what()));
            return;
        }
        DiffReport d = diff_check(e, g, eta, r, p);
        if (d.verdict != Verdict::Mismatch && has_parallel(e)) {
            DiffReport c = confluence_check(e, g, eta, r, p, 20, seed);
            if (c.verdict == Verdict::Mismatch) d = c;
        }
        switch (d.verdict) {
            case Verdict::Agree: ++rep.agree; break;
            case Verdict::AgreeUndefined: ++rep.undefined; break;
            case Verdict::Mismatch: ++rep.mismatches; break;
        }
        std::string line = fmt::format("{} {}: {}", label, verdict_name(d.verdict), pretty(e));
        if (d.verdict == Verdict::Mismatch) line += " -- " + d.detail;
        rep.lines.push_back(std::move(line));
    };

    ProgramGenerator gen(seed);
    for (std::size_t i = 0; i < count; ++i) {
        GenCase c = gen.next_case();
        check_one(fmt::format("case {}", i), c.program, c.graph, c.labels);
    }
    for (const CorpusProgram& prog : corpus) {
        for (int k = 0; k < 5; ++k) {
            Graph g = random_graph(gen.rng());
            NodeLabeling eta = random_labeling(g.node_count(), prog.in_type, gen.rng());
            check_one(fmt::format("{}#{}", prog.name, k), prog.program, g, eta);
        }
    }
    return rep;
}

} // namespace mug
