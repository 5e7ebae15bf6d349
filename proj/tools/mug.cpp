// mug: command-line front end for the mu-G toolkit.

#include <mug/ctl.hpp>
#include <mug/diff.hpp>
#include <mug/generate.hpp>
#include <mug/gnnzoo.hpp>
#include <mug/json_io.hpp>
#include <mug/syntax.hpp>
#include <mug/typecheck.hpp>

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <iostream>
#include <set>

using namespace mug;

namespace {

struct Options {
    bool json = false;
    std::uint64_t seed = 1;
    std::string registry = "demo";
    std::string arch;
    std::string weights;
    std::size_t heads = 0;

    std::string program;
    std::string graph;
    std::string in_type;
    std::string out;
    double epsilon = 0.0;
    unsigned long max_iter = 0;
    unsigned long max_steps = 0;
    std::string semantics = "denot";
    std::string schedule = "left";
    std::size_t steps = 10;

    std::string kripke;
    std::string formula;
    bool oracle = false;
    std::size_t states = 1000;
    std::size_t degree = 10;

    bool emit_program = false;
    std::size_t count = 500;
    std::string corpus;
    bool verbose = false;
};

// The file currently being processed, for diagnostics.
std::string g_source;

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::FixpointDivergence:
        case ErrorKind::StepsExhausted: return 2;
        case ErrorKind::Io: return 3;
        default: return 1;
    }
}

void report(const Options& o, const Error& e) {
    if (o.json) {
        nlohmann::json j{{"error", kind_name(e.kind())}, {"message", e.detail()}};
        if (!g_source.empty()) j["file"] = g_source;
        if (e.span().known()) {
            j["line"] = e.span().line;
            j["col"] = e.span().col;
        }
        std::cerr << j.dump() << '\n';
        return;
    }
    std::string where = g_source;
    if (e.span().known()) where += (where.empty() ? "" : ":") + to_string(e.span());
    if (where.empty())
        std::cerr << fmt::format("error: {}: {}\n", kind_name(e.kind()), e.detail());
    else
        std::cerr << fmt::format("{}: error: {}: {}\n", where, kind_name(e.kind()), e.detail());
}

CoreExpr load_program(const std::string& path) {
    std::string text = read_text_file(path);
    g_source = path;
    return parse_core(text);
}

RunParams run_params(const Options& o) {
    RunParams p;
    if (const char* env = std::getenv("MUG_MAX_ITER")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0' || v == 0)
            throw Error(ErrorKind::Usage, fmt::format("MUG_MAX_ITER must be a positive integer, found '{}'", env));
        p.max_fix_iters = v;
    }
    if (o.max_iter) p.max_fix_iters = o.max_iter;
    if (o.max_steps) p.max_steps = o.max_steps;
    p.epsilon = o.epsilon;
    if (o.schedule == "right")
        p.schedule = Schedule::right_first();
    else if (o.schedule == "random")
        p.schedule = Schedule::random(o.seed);
    return p;
}

void collect_psis(const CoreExpr& e, std::set<std::string>& out) {
    if (e.kind() == CoreExpr::Kind::Psi) out.insert(e.name());
    if (e.is_leaf()) return;
    if (e.kind() == CoreExpr::Kind::Star) {
        collect_psis(e.body(), out);
        return;
    }
    collect_psis(e.left(), out);
    collect_psis(e.right(), out);
}

// Resolves --registry. `feature_type` is the input labeling type, needed to size GNN functions.
Registry select_registry(const Options& o, const CoreExpr& e, const std::optional<LabelType>& feature_type) {
    if (o.registry == "demo") return demo_registry(o.epsilon);
    if (o.registry == "ctl") {
        // One atom psi per non-builtin symbol of the program.
        Registry builtins = builtin_registry(0.0);
        std::set<std::string> psis;
        collect_psis(e, psis);
        std::optional<CtlFormula> atoms;
        for (const std::string& p : psis) {
            if (builtins.has_psi(p)) continue;
            CtlFormula a = CtlFormula::atom(p);
            atoms = atoms ? CtlFormula::binary(CtlFormula::Kind::And, *atoms, a) : a;
        }
        return ctl_registry(atoms ? *atoms : CtlFormula::tt());
    }
    if (o.registry == "gnn") {
        if (o.arch.empty() || o.weights.empty())
            throw Error(ErrorKind::Usage, "--registry gnn needs --arch and --weights");
        WeightBundle w = WeightBundle::from_json(read_json_file(o.weights));
        std::size_t n = feature_type && feature_type->kind() == LabelType::Kind::Vec ? feature_type->vec_size() : 0;
        return build_model(parse_arch(o.arch), w, n, o.heads, o.epsilon).registry;
    }
    throw Error(ErrorKind::Usage, fmt::format("unknown registry '{}' (expected demo, ctl or gnn)", o.registry));
}

void write_output(const Options& o, const std::string& text) {
    if (o.out.empty())
        std::cout << text;
    else
        write_text_file(o.out, text);
}

std::string render_labeling(const NodeLabeling& eta) {
    std::string s = "[";
    for (NodeId v = 0; v < eta.size(); ++v) s += fmt::format("{}{}: {}", v ? ", " : "", v, to_string(eta[v]));
    return s + "]";
}

// --- subcommands -----------------------------------------------------------

int cmd_check(const Options& o) {
    CoreExpr e = load_program(o.program);
    LabelType in = parse_label_type(o.in_type);
    std::optional<LabelType> edge;
    if (!o.graph.empty()) {
        LabeledGraph lg = read_graph_file(o.graph);
        if (lg.graph.edge_count() > 0) edge = lg.graph.edge_type();
    }
    GnnType t = infer(e, in, select_registry(o, e, in), edge);
    if (o.json)
        std::cout << nlohmann::json{{"input", to_string(t.input)}, {"output", to_string(t.output)}}.dump() << '\n';
    else
        std::cout << "ok: " << to_string(t) << '\n';
    return 0;
}

int cmd_run(const Options& o) {
    RunParams p = run_params(o);
    CoreExpr e = load_program(o.program);
    LabeledGraph lg = read_graph_file(o.graph);
    Registry r = select_registry(o, e, lg.labels.type());
    std::optional<LabelType> edge;
    if (lg.graph.edge_count() > 0) edge = lg.graph.edge_type();
    infer(e, lg.labels.type(), r, edge);
    NodeLabeling out = o.semantics == "sos" ? run_sos(e, lg.graph, lg.labels, r, p)
                                            : eval_denot(e, lg.graph, lg.labels, r, p);
    write_output(o, graph_to_json(lg.graph, out).dump(2) + "\n");
    return 0;
}

int cmd_trace(const Options& o) {
    RunParams p = run_params(o);
    CoreExpr e = load_program(o.program);
    LabeledGraph lg = read_graph_file(o.graph);
    Registry r = select_registry(o, e, lg.labels.type());
    Machine m(lg.graph, r, p);
    Config c{e, lg.labels};
    fmt::print("0: {}\n   {}\n", pretty(c.expr), render_labeling(c.labeling));
    for (std::size_t i = 1; i <= o.steps; ++i) {
        StepResult s = m.step(c);
        if (s.is_final()) {
            fmt::print("final: {}\n", render_labeling(*s.final));
            return 0;
        }
        c = std::move(*s.next);
        fmt::print("{}: {}\n   {}\n", i, pretty(c.expr), render_labeling(c.labeling));
    }
    return 0;
}

int cmd_expand(const Options& o) {
    CoreExpr e = load_program(o.program);
    write_output(o, pretty(e) + "\n");
    return 0;
}

int cmd_dot(const Options& o) {
    CoreExpr e = load_program(o.program);
    write_output(o, to_dot(e));
    return 0;
}

int cmd_ctl_check(const Options& o) {
    CtlFormula f = parse_ctl(o.formula);
    Kripke k = make_kripke(read_graph_file(o.kripke));
    RunParams p = run_params(o);
    NodeLabeling sat = check(k, f, p, o.semantics == "sos" ? Semantics::Operational : Semantics::Denotational);
    std::vector<NodeId> states;
    for (NodeId v = 0; v < sat.size(); ++v)
        if (sat[v].as_bool()) states.push_back(v);

    int rc = 0;
    std::optional<bool> agrees;
    if (o.oracle) {
        agrees = identical(sat, oracle(k, f));
        if (!*agrees) rc = 1;
    }
    if (o.json) {
        nlohmann::json j{{"formula", to_string(f)}, {"states", k.graph.node_count()}, {"satisfying", states}};
        if (agrees) j["oracle_agrees"] = *agrees;
        std::cout << j.dump() << '\n';
    } else {
        fmt::print("{}: {} of {} states\n", to_string(f), states.size(), k.graph.node_count());
        fmt::print("{}\n", fmt::join(states, " "));
        if (agrees) fmt::print("oracle: {}\n", *agrees ? "agrees" : "MISMATCH");
    }
    return rc;
}

int cmd_ctl_translate(const Options& o) {
    CtlFormula f = parse_ctl(o.formula);
    fmt::print("{}\n", pretty(translate(eliminate_derived(f))));
    return 0;
}

int cmd_ctl_gen(const Options& o) {
    std::mt19937_64 rng(o.seed);
    Kripke k = random_kripke(o.states, o.degree, rng);
    write_output(o, graph_to_json(k.graph, k.labels).dump() + "\n");
    return 0;
}

int cmd_gnn(const Options& o) {
    Arch a = parse_arch(o.arch);
    WeightBundle w = WeightBundle::from_json(read_json_file(o.weights));
    LabeledGraph lg = read_graph_file(o.graph);
    if (lg.graph.node_count() > 0 && lg.labels.type().kind() != LabelType::Kind::Vec)
        throw Error(ErrorKind::Structural, "node features must be vectors, found " + to_string(lg.labels.type()));
    std::size_t n = lg.graph.node_count() > 0 ? lg.labels.type().vec_size() : w.matrix(a == Arch::Gcn ? "theta" : "theta1").rows;
    RunParams p = run_params(o);
    GnnModel m = build_model(a, w, n, o.heads, p.epsilon);
    if (o.emit_program) {
        write_output(o, pretty(m.program) + "\n");
        return 0;
    }
    CoreExpr e = expand(m.program);
    std::optional<LabelType> edge;
    if (lg.graph.edge_count() > 0) edge = lg.graph.edge_type();
    infer(e, m.in_type, m.registry, edge);
    NodeLabeling in = lg.graph.node_count() > 0 ? lg.labels : NodeLabeling({}, m.in_type);
    NodeLabeling out = eval_denot(e, lg.graph, in, m.registry, p);
    write_output(o, graph_to_json(lg.graph, out).dump(2) + "\n");
    return 0;
}

int cmd_diff(const Options& o) {
    std::vector<CorpusProgram> corpus;
    if (!o.corpus.empty()) corpus = load_corpus(o.corpus);
    RunParams p = harness_params();
    if (o.max_iter) p.max_fix_iters = o.max_iter;
    if (o.max_steps) p.max_steps = o.max_steps;
    HarnessReport rep = run_harness(o.count, o.seed, corpus, demo_registry(0.0), p);
    if (o.json) {
        nlohmann::json j{{"cases", rep.cases}, {"agree", rep.agree}, {"undefined", rep.undefined},
                         {"mismatches", rep.mismatches}};
        if (o.verbose) j["lines"] = rep.lines;
        std::cout << j.dump() << '\n';
    } else {
        for (const std::string& line : rep.lines)
            if (o.verbose || line.find("MISMATCH") != std::string::npos) std::cout << line << '\n';
        fmt::print("{} cases: {} agree, {} both undefined, {} mismatches\n", rep.cases, rep.agree, rep.undefined,
                   rep.mismatches);
    }
    return rep.mismatches == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"mu-G: a language for graph neural networks"};
    app.require_subcommand(1);
    app.add_flag("--json", o.json, "machine-readable diagnostics and reports");
    app.add_option("--seed", o.seed, "seed for every random choice");
    app.add_option("--registry", o.registry, "function registry")->check(CLI::IsMember({"demo", "ctl", "gnn"}));
    app.add_option("--arch", o.arch, "architecture of the gnn registry")->check(CLI::IsMember({"gcn", "gat", "gin", "orig"}));
    app.add_option("--weights", o.weights, "weights JSON for the gnn registry");
    app.add_option("--heads", o.heads, "GAT heads (default: as many as the weights define)");

    auto budgets = [&](CLI::App* c) {
        c->add_option("--epsilon", o.epsilon, "tolerance of the fixpoint test")->check(CLI::NonNegativeNumber);
        c->add_option("--max-iter", o.max_iter, "star iterations before giving up")->check(CLI::PositiveNumber);
        c->add_option("--max-steps", o.max_steps, "machine steps before giving up")->check(CLI::PositiveNumber);
    };
    auto out_opt = [&](CLI::App* c) { c->add_option("--out", o.out, "output file (default: stdout)"); };

    CLI::App* check_cmd = app.add_subcommand("check", "type-check a program");
    check_cmd->add_option("program", o.program)->required();
    check_cmd->add_option("--in-type", o.in_type, "input label type")->required();
    check_cmd->add_option("--graph", o.graph, "graph fixing the edge label type");

    CLI::App* run_cmd = app.add_subcommand("run", "run a program on a graph");
    run_cmd->add_option("program", o.program)->required();
    run_cmd->add_option("--graph", o.graph)->required();
    run_cmd->add_option("--semantics", o.semantics)->check(CLI::IsMember({"denot", "sos"}));
    run_cmd->add_option("--schedule", o.schedule)->check(CLI::IsMember({"left", "right", "random"}));
    budgets(run_cmd);
    out_opt(run_cmd);

    CLI::App* trace_cmd = app.add_subcommand("trace", "print the first steps of the machine");
    trace_cmd->add_option("program", o.program)->required();
    trace_cmd->add_option("--graph", o.graph)->required();
    trace_cmd->add_option("--steps", o.steps);
    trace_cmd->add_option("--schedule", o.schedule)->check(CLI::IsMember({"left", "right", "random"}));
    budgets(trace_cmd);

    CLI::App* expand_cmd = app.add_subcommand("expand", "print the program with macros expanded");
    expand_cmd->add_option("program", o.program)->required();
    out_opt(expand_cmd);

    CLI::App* dot_cmd = app.add_subcommand("dot", "export the program as a Graphviz diagram");
    dot_cmd->add_option("program", o.program)->required();
    out_opt(dot_cmd);

    CLI::App* ctl_cmd = app.add_subcommand("ctl", "CTL model checking");
    ctl_cmd->require_subcommand(1);
    CLI::App* ctl_check = ctl_cmd->add_subcommand("check", "label the states of a Kripke structure");
    ctl_check->add_option("--kripke", o.kripke)->required();
    ctl_check->add_option("--formula", o.formula)->required();
    ctl_check->add_flag("--oracle", o.oracle, "compare with the explicit-state labeling");
    ctl_check->add_option("--semantics", o.semantics)->check(CLI::IsMember({"denot", "sos"}));
    ctl_check->add_option("--max-iter", o.max_iter)->check(CLI::PositiveNumber);
    CLI::App* ctl_translate = ctl_cmd->add_subcommand("translate", "print the mu-G program of a formula");
    ctl_translate->add_option("--formula", o.formula)->required();
    CLI::App* ctl_gen = ctl_cmd->add_subcommand("gen", "random Kripke structure");
    ctl_gen->add_option("--states", o.states)->check(CLI::PositiveNumber);
    ctl_gen->add_option("--degree", o.degree, "average out-degree");
    ctl_gen->add_option("--seed", o.seed);
    out_opt(ctl_gen);

    CLI::App* gnn_cmd = app.add_subcommand("gnn", "run a GNN layer from the zoo");
    gnn_cmd->add_option("arch", o.arch)->required()->check(CLI::IsMember({"gcn", "gat", "gin", "orig"}));
    gnn_cmd->add_option("--graph", o.graph)->required();
    gnn_cmd->add_option("--weights", o.weights)->required();
    gnn_cmd->add_option("--heads", o.heads);
    gnn_cmd->add_flag("--emit-program", o.emit_program, "print the mu-G program instead of running it");
    budgets(gnn_cmd);
    out_opt(gnn_cmd);

    CLI::App* diff_cmd = app.add_subcommand("diff", "differential test of the two semantics");
    diff_cmd->add_option("--count", o.count, "generated programs");
    diff_cmd->add_option("--seed", o.seed);
    diff_cmd->add_option("--corpus", o.corpus, "directory of .mg programs");
    diff_cmd->add_option("--max-iter", o.max_iter)->check(CLI::PositiveNumber);
    diff_cmd->add_option("--max-steps", o.max_steps)->check(CLI::PositiveNumber);
    diff_cmd->add_flag("--verbose", o.verbose, "print every verdict");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (check_cmd->parsed()) return cmd_check(o);
        if (run_cmd->parsed()) return cmd_run(o);
        if (trace_cmd->parsed()) return cmd_trace(o);
        if (expand_cmd->parsed()) return cmd_expand(o);
        if (dot_cmd->parsed()) return cmd_dot(o);
        if (ctl_check->parsed()) return cmd_ctl_check(o);
        if (ctl_translate->parsed()) return cmd_ctl_translate(o);
        if (ctl_gen->parsed()) return cmd_ctl_gen(o);
        if (gnn_cmd->parsed()) return cmd_gnn(o);
        if (diff_cmd->parsed()) return cmd_diff(o);
    } catch (const Error& e) {
        report(o, e);
        return exit_code(e.kind());
    }
    return 1;
}
