#include <doctest.h>

#include <mug/diff.hpp>
#include <mug/generate.hpp>
#include <mug/registry.hpp>

using namespace mug;

namespace {
const LabelType N = LabelType::num();
const LabelType B = LabelType::boolean();

Value apply(const Registry& r, const std::string& psi, const Value& x) {
    std::vector<Value> all{x};
    return r.lookup_psi(psi).apply(all, x);
}
} // namespace

TEST_CASE("lookups name the missing symbol") {
    Registry r = builtin_registry(0.0);
    try {
        r.lookup_psi("nope");
        FAIL("expected UnknownSymbol");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownSymbol);
        CHECK(std::string(e.what()).find("nope") != std::string::npos);
        CHECK(std::string(e.what()).find("psi") != std::string::npos);
    }
    CHECK_THROWS_AS(r.lookup_sigma("sum"), Error);
    CHECK_FALSE(r.has_phi("phi"));
}

TEST_CASE("duplicate names are rejected per namespace") {
    RegistryBuilder b = builtin_builder(0.0);
    CHECK_THROWS_AS(b.add(PsiFun::mono("succ", N, N, [](auto, const Value& x) { return x; })), Error);
    // `or` is both a psi and a sigma builtin; namespaces are separate.
    CHECK(builtin_registry(0.0).has_psi("or"));
    CHECK(builtin_registry(0.0).has_sigma("or"));
}

TEST_CASE("partial sigma functions cannot be registered") {
    SigmaFun s = SigmaFun::mono("first", N, N, N, [](std::span<const Value> ms, const Value&) { return ms.front(); });
    s.total = false;
    RegistryBuilder b;
    CHECK_THROWS_AS(b.add(s), Error);
}

TEST_CASE("lt_k is available for every k") {
    Registry r = builtin_registry(0.0);
    CHECK(r.has_psi("lt_3"));
    CHECK(r.has_psi("lt_0"));
    CHECK_FALSE(r.has_psi("lt_x"));
    CHECK(apply(r, "lt_3", Value(2.0)).as_bool());
    CHECK_FALSE(apply(r, "lt_3", Value(3.0)).as_bool());
    CHECK(lt_name(5) == "lt_5");
}

TEST_CASE("builtins") {
    Registry r = builtin_registry(0.0);
    Value p = Value::pair(Value(1.0), Value(true));
    CHECK(apply(r, "pL", p).as_num() == 1.0);
    CHECK(apply(r, "pR", p).as_bool());
    CHECK(apply(r, "succ", Value(4.0)).as_num() == 5.0);
    CHECK(apply(r, "zero", Value(true)).as_num() == 0.0);
    CHECK(apply(r, "and", Value::pair(Value(true), Value(false))).as_bool() == false);
    CHECK(apply(r, "or", Value::pair(Value(true), Value(false))).as_bool());
    CHECK(apply(r, "not", Value(true)).as_bool() == false);
    Value v = apply(r, "concat", Value::pair(Value(Vec{1, 2}), Value::pair(Value(3.0), Value(Vec{4}))));
    CHECK(v.as_vec() == Vec{1, 2, 3, 4});
    CHECK(r.lookup_psi("concat").signature(LabelType::prod(LabelType::vec(2), N)) == LabelType::vec(3));
    CHECK_FALSE(r.lookup_psi("concat").signature(LabelType::prod(N, B)).has_value());
    CHECK_FALSE(r.lookup_sigma("or").apply({}, Value(0.0)).as_bool());
}

TEST_CASE("eqeps compares up to epsilon") {
    CHECK(eps_equal(Value(1.0), Value(1.0005), 0.001));
    CHECK_FALSE(eps_equal(Value(1.0), Value(1.01), 0.001));
    CHECK(eps_equal(Value::pair(Value(Vec{1, 2}), Value(true)), Value::pair(Value(Vec{1, 2}), Value(true)), 0.0));
    CHECK_FALSE(eps_equal(Value::pair(Value(1.0), Value(true)), Value::pair(Value(1.0), Value(false)), 10.0));
    CHECK_THROWS_AS(eps_equal(Value(1.0), Value(true), 0.0), Error);

    Registry r = builtin_registry(0.5);
    CHECK(r.epsilon() == 0.5);
    CHECK(apply(r, "eqeps", Value::pair(Value(1.0), Value(1.4))).as_bool());
    Registry strict = r.with_epsilon(0.0);
    CHECK_FALSE(apply(strict, "eqeps", Value::pair(Value(1.0), Value(1.4))).as_bool());
    CHECK(r.lookup_psi("eqeps").signature(LabelType::prod(N, N)) == B);
    CHECK_FALSE(r.lookup_psi("eqeps").signature(LabelType::prod(N, B)).has_value());
}

TEST_CASE("declared signatures match runtime behavior") {
    std::mt19937_64 rng(7);
    Registry r = demo_registry(0.0);
    for (const std::string& name : r.psi_names()) {
        const PsiFun& f = r.lookup_psi(name);
        if (!f.in_type) continue;
        for (int i = 0; i < 50; ++i) {
            std::vector<Value> all{random_value(*f.in_type, rng), random_value(*f.in_type, rng)};
            INFO(name);
            CHECK(has_type(f.apply(all, all[0]), *f.out_type));
        }
    }
    for (const std::string& name : r.sigma_names()) {
        const SigmaFun& f = r.lookup_sigma(name);
        if (!f.msg_type || !f.node_type) continue;
        for (int i = 0; i < 50; ++i) {
            std::vector<Value> msgs;
            for (long k = uniform_int(rng, 0, 4); k > 0; --k) msgs.push_back(random_value(*f.msg_type, rng));
            INFO(name);
            CHECK(has_type(f.apply(msgs, random_value(*f.node_type, rng)), *f.out_type));
        }
    }
    CHECK(contract_violations(r, 11).empty());
}

TEST_CASE("an order-sensitive sigma is reported") {
    RegistryBuilder b = demo_builder(0.0);
    b.add(SigmaFun::mono("last", N, N, N, [](std::span<const Value> ms, const Value& x) {
        return ms.empty() ? x : ms.back();
    }));
    auto v = contract_violations(std::move(b).build(), 3);
    REQUIRE(v.size() == 1);
    CHECK(v[0].find("last") != std::string::npos);
}
