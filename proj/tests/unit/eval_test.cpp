#include <doctest.h>

#include <mug/diff.hpp>
#include <mug/error.hpp>
#include <mug/eval.hpp>
#include <mug/generate.hpp>
#include <mug/syntax.hpp>
#include <mug/typecheck.hpp>

#include <atomic>

using namespace mug;

namespace {

NodeLabeling nums(std::vector<double> xs) {
    std::vector<Value> vs(xs.begin(), xs.end());
    return NodeLabeling(std::move(vs), LabelType::num());
}

std::vector<double> values(const NodeLabeling& eta) {
    std::vector<double> out;
    for (const Value& v : eta.values()) out.push_back(v.as_num());
    return out;
}

// Evaluates with both semantics, requires them to agree and returns the result.
std::vector<double> run(std::string_view text, const Graph& g, std::vector<double> xs, RunParams p = {}) {
    CoreExpr e = parse_core(text);
    Registry r = demo_registry(p.epsilon);
    NodeLabeling d = eval_denot(e, g, nums(xs), r, p);
    NodeLabeling s = run_sos(e, g, nums(xs), r, p);
    CHECK(identical(d, s));
    return values(d);
}

ErrorKind failure(std::string_view text, const Graph& g, std::vector<double> xs, RunParams p, bool sos) {
    CoreExpr e = parse_core(text);
    try {
        if (sos)
            run_sos(e, g, nums(xs), demo_registry(0.0), p);
        else
            eval_denot(e, g, nums(xs), demo_registry(0.0), p);
    } catch (const Error& err) {
        return err.kind();
    }
    FAIL("expected a failure");
    return ErrorKind::Usage;
}

const Graph cycle3(3, {{0, 1}, {1, 2}, {2, 0}});

} // namespace

TEST_CASE("worked example on a 3-cycle") {
    // psi1 = 2x, psi2 = x+1, psi3 = x1-x2, phi = i+j, sigma = x + sum
    // after psi3: [0, 1, 2]; node v receives (x_u + x_v) from its predecessor u
    CHECK(run("(psi1||psi2);psi3;pre[phi,sigma]", cycle3, {1, 2, 3}) == std::vector<double>{2, 2, 5});
}

TEST_CASE("pre-image reads incoming edges, post-image outgoing ones") {
    Graph g(2, {{0, 1}});
    CHECK(run("pre[phi,sum]", g, {1, 10}) == std::vector<double>{0, 11});
    CHECK(run("post[phi,sum]", g, {1, 10}) == std::vector<double>{11, 0});
    CHECK(run("pre[dif,sum]", g, {1, 10}) == std::vector<double>{0, -9});
    CHECK(run("post[dif,sum]", g, {1, 10}) == std::vector<double>{9, 0});
    Graph weighted(2, {{0, 1}, {0, 1}}, {Value(2.0), Value(-1.0)});
    CHECK(run("pre[w,sum]", weighted, {3, 0}) == std::vector<double>{0, 3});
}

TEST_CASE("psi functions see the whole multiset") {
    CHECK(run("gsum", cycle3, {1, 2, 3}) == std::vector<double>{6, 6, 6});
    CHECK(run("gmax;(psi1||id);psi3", cycle3, {1, 5, 3}) == std::vector<double>{5, 5, 5});
}

TEST_CASE("choice needs every guard true") {
    CHECK(run("(pos||id);(inc (+) dec)", cycle3, {1, 2, 3}) == std::vector<double>{2, 3, 4});
    CHECK(run("(pos||id);(inc (+) dec)", cycle3, {1, -2, 3}) == std::vector<double>{0, -3, 2});
    // vacuous on the empty graph
    CoreExpr e = parse_core("(pos||id);(inc (+) dec)");
    NodeLabeling empty({}, LabelType::num());
    CHECK(eval_denot(e, Graph(), empty, demo_registry(0.0)).size() == 0);
    CHECK(guard_all_true(NodeLabeling({}, LabelType::prod(LabelType::boolean(), LabelType::num()))));
}

TEST_CASE("star iterates to a fixpoint") {
    CHECK(run("step_to_zero*", cycle3, {3, -2, 0}) == std::vector<double>{0, 0, 0});
    // the guard is global: decrement stops for everyone once one label reaches 0
    CHECK(run("((pos||id);(dec (+) id))*", cycle3, {4, 1, 2}) == std::vector<double>{3, 0, 1});
    CHECK(run("psi1*", cycle3, {0, 0, 0}) == std::vector<double>{0, 0, 0});
    // max-propagation along the cycle
    CHECK(run("pre[id3,max]*", cycle3, {1, 7, 2}) == std::vector<double>{7, 7, 7});
}

TEST_CASE("divergence is reported by both semantics") {
    RunParams p;
    p.max_fix_iters = 50;
    CHECK(failure("psi1*", cycle3, {1, 1, 1}, p, false) == ErrorKind::FixpointDivergence);
    CHECK(failure("psi1*", cycle3, {1, 1, 1}, p, true) == ErrorKind::FixpointDivergence);
    p.max_steps = 20;
    p.max_fix_iters = 100000;
    CHECK(failure("inc*", cycle3, {1, 1, 1}, p, true) == ErrorKind::StepsExhausted);
}

TEST_CASE("epsilon loosens the fixpoint test") {
    RunParams p;
    p.epsilon = 1.0;
    // inc changes every label by exactly 1, which is within epsilon
    CHECK(run("inc*", cycle3, {1, 2, 3}, p) == std::vector<double>{1, 2, 3});
    CHECK(run("(id||inc);eqeps;b2n", cycle3, {1, 2, 3}, p) == std::vector<double>{1, 1, 1});
    CHECK(run("(id||inc);eqeps;b2n", cycle3, {1, 2, 3}) == std::vector<double>{0, 0, 0});
}

TEST_CASE("the star body runs once per iteration") {
    std::atomic<int> calls{0};
    RegistryBuilder b = demo_builder(0.0);
    b.add(PsiFun::mono("tick", LabelType::num(), LabelType::num(), [&calls](std::span<const Value>, const Value& x) {
        ++calls;
        return Value(x.as_num() > 0 ? x.as_num() - 1 : 0.0);
    }));
    Registry r = std::move(b).build();
    Graph one(1, {});
    eval_denot(parse_core("tick*"), one, nums({3}), r);
    // 3 -> 2 -> 1 -> 0 -> 0: four evaluations, the last confirms the fixpoint
    CHECK(calls == 4);

    std::vector<double> iterates;
    Observer obs;
    obs.on_fix_iterate = [&](const CoreExpr&, const NodeLabeling& eta) { iterates.push_back(eta[0].as_num()); };
    eval_denot(parse_core("tick*"), one, nums({3}), r, {}, &obs);
    CHECK(iterates == std::vector<double>{3, 2, 1, 0});
}

TEST_CASE("machine steps one rule at a time") {
    Registry r = demo_registry(0.0);
    Machine m(cycle3, r, {});
    Config c{parse_core("inc;dec"), nums({1, 2, 3})};
    StepResult s1 = m.step(c);
    REQUIRE_FALSE(s1.is_final());
    CHECK(pretty(s1.next->expr) == "id;dec");
    CHECK(values(s1.next->labeling) == std::vector<double>{2, 3, 4});
    StepResult s2 = m.step(*s1.next);
    CHECK(pretty(s2.next->expr) == "dec");
    StepResult s3 = m.step(*s2.next);
    CHECK(s3.next->expr.is_id());
    StepResult s4 = m.step(*s3.next);
    REQUIRE(s4.is_final());
    CHECK(values(*s4.final) == std::vector<double>{1, 2, 3});
}

TEST_CASE("split pairs the labeling and merge joins it") {
    Registry r = demo_registry(0.0);
    Machine m(cycle3, r, {});
    StepResult s = m.step(Config{parse_core("inc||dec"), nums({1, 2, 3})});
    CHECK(s.next->expr.kind() == CoreExpr::Kind::Prod);
    CHECK(s.next->labeling.type() == LabelType::prod(LabelType::num(), LabelType::num()));
}

TEST_CASE("an ill-typed configuration gets stuck or fails") {
    Registry r = demo_registry(0.0);
    Machine m(cycle3, r, {});
    CHECK_THROWS_AS(m.step(Config{parse_core("pL"), nums({1, 2, 3})}), Error);
}

TEST_CASE("schedules reach the same result") {
    CoreExpr e = parse_core("(inc||pre[phi,sigma]);add2;(psi1||step_to_zero*)");
    NodeLabeling in = nums({1, 2, 3});
    Registry r = demo_registry(0.0);
    DiffReport d = confluence_check(e, cycle3, in, r, {}, 20, 9);
    CHECK(d.verdict == Verdict::Agree);
}

TEST_CASE("random schedules are reproducible from the seed") {
    CoreExpr e = parse_core("(inc||dec)||(psi1||psi2)");
    Registry r = demo_registry(0.0);
    auto trace = [&](std::uint64_t seed) {
        RunParams p;
        p.schedule = Schedule::random(seed);
        std::vector<std::string> out;
        Observer obs;
        obs.on_step = [&](const Config& c) { out.push_back(pretty(c.expr)); };
        run_sos(e, cycle3, nums({1, 2, 3}), r, p, &obs);
        return out;
    };
    CHECK(trace(4) == trace(4));
}

TEST_CASE("differential harness on a small budget") {
    HarnessReport rep = run_harness(60, 3, {}, demo_registry(0.0), harness_params());
    CHECK(rep.cases == 60);
    CHECK(rep.mismatches == 0);
    CHECK(rep.agree + rep.undefined == 60);
}

TEST_CASE("the harness catches an order-sensitive sigma") {
    RegistryBuilder b = demo_builder(0.0);
    b.add(SigmaFun::mono("first", LabelType::num(), LabelType::num(), LabelType::num(),
                         [](std::span<const Value> ms, const Value& x) { return ms.empty() ? x : ms.front(); }));
    Registry r = std::move(b).build();
    CorpusProgram prog{"first", parse_core("pre[phi,first]"), LabelType::num()};
    HarnessReport rep = run_harness(0, 1, {prog}, r, harness_params());
    CHECK(rep.mismatches >= 1);
}

TEST_CASE("an empty harness run passes") {
    HarnessReport rep = run_harness(0, 1, {}, demo_registry(0.0), harness_params());
    CHECK(rep.cases == 0);
    CHECK(rep.mismatches == 0);
}

TEST_CASE("a corpus directory loads in name order") {
    std::vector<CorpusProgram> c = load_corpus(MUG_SOURCE_DIR "/programs/corpus");
    REQUIRE(c.size() >= 3);
    for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i - 1].name < c[i].name);
    Registry r = demo_registry(0.0);
    for (const CorpusProgram& p : c) {
        INFO(p.name);
        CHECK_NOTHROW(infer(p.program, p.in_type, r));
    }
    CHECK_THROWS_AS(load_corpus("/nonexistent"), Error);
}
