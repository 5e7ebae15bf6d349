#include <doctest.h>

#include <mug/error.hpp>
#include <mug/generate.hpp>
#include <mug/syntax.hpp>
#include <mug/typecheck.hpp>

using namespace mug;

namespace {

const LabelType N = LabelType::num();
const LabelType B = LabelType::boolean();

GnnType type_of(std::string_view text, const LabelType& in) { return infer(parse_core(text), in, demo_registry(0.0)); }

Error error_of(std::string_view text, const LabelType& in, std::optional<LabelType> edge = std::nullopt) {
    try {
        infer(parse_core(text), in, demo_registry(0.0), edge);
    } catch (const Error& e) {
        return e;
    }
    FAIL("expected a type error for " << text);
    return Error(ErrorKind::Usage, "");
}

} // namespace

TEST_CASE("worked example types num -> num") {
    GnnType t = type_of("(psi1||psi2);psi3;pre[phi,sigma]", N);
    CHECK(t.input == N);
    CHECK(t.output == N);
    CHECK(to_string(t) == "num -> num");
}

TEST_CASE("products, projections and choice") {
    CHECK(type_of("psi1||pos", N).output == LabelType::prod(N, B));
    CHECK(type_of("(pos||id);(psi1 (+) psi2)", N).output == N);
    CHECK(type_of("(pos||psi1);(neg (+) abs)", N).output == N);
    CHECK(type_of("id*", B).output == B);
    CHECK(type_of("(psi1||psi2);eqeps", N).output == B);
}

TEST_CASE("mismatches name the offending subexpression") {
    Error e = error_of("psi1;pos;psi2", N);
    CHECK(e.kind() == ErrorKind::TypeMismatch);
    CHECK(std::string(e.what()).find("psi2") != std::string::npos);
    CHECK(std::string(e.what()).find("bool") != std::string::npos);
    CHECK(e.span().known());

    CHECK(error_of("(psi1||psi2);(psi1 (+) psi2)", N).kind() == ErrorKind::NonBooleanGuard);
    CHECK(error_of("psi1 (+) psi2", N).kind() == ErrorKind::TypeMismatch);
    CHECK(error_of("(pos||id);(psi1 (+) pos)", N).kind() == ErrorKind::TypeMismatch);
    CHECK(error_of("pos*", N).kind() == ErrorKind::TypeMismatch);
    CHECK(error_of("(psi1||psi2);eqeps", B).kind() == ErrorKind::TypeMismatch);
    CHECK(error_of("nosuch", N).kind() == ErrorKind::UnknownSymbol);
    CHECK(error_of("pre[w,sigma]", N, LabelType::boolean()).kind() == ErrorKind::TypeMismatch);
}

TEST_CASE("edge types are checked only with a graph") {
    CHECK(infer(parse_core("pre[w,sigma]"), N, demo_registry(0.0)).output == N);
    CHECK(infer(parse_core("pre[w,sigma]"), N, demo_registry(0.0), N).output == N);
    CHECK_THROWS_AS(infer(parse_core("pre[w,sigma]"), N, demo_registry(0.0), LabelType::unit()), Error);
}

TEST_CASE("unfolding a star preserves its type") {
    Registry r = demo_registry(0.0);
    for (const char* body : {"step_to_zero", "(pos||id);(id (+) dec)", "pre[phi,max];clamp"}) {
        CoreExpr n = parse_core(body);
        CoreExpr star = CoreExpr::star(n);
        CoreExpr unfolded = CoreExpr::seq(
            CoreExpr::par(CoreExpr::seq(CoreExpr::par(CoreExpr::id(), n), CoreExpr::psi("eqeps")), CoreExpr::id()),
            CoreExpr::choice(CoreExpr::id(), CoreExpr::seq(n, star)));
        CHECK(infer(star, N, r) == infer(unfolded, N, r));
    }
}

TEST_CASE("generated programs type-check at their generated types") {
    ProgramGenerator gen(5);
    Registry r = demo_registry(0.0);
    for (int i = 0; i < 200; ++i) {
        GenCase c = gen.next_case();
        CHECK(c.program.depth() <= 6);
        CHECK(infer(c.program, c.in_type, r) == GnnType{c.in_type, c.out_type});
    }
}
