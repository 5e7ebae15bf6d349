#include <mug/generate.hpp>

#include <algorithm>
#include <cmath>

namespace mug {

namespace {

using Fn1 = double (*)(double);

PsiFun num_map(std::string name, Fn1 f) {
    return PsiFun::mono(std::move(name), LabelType::num(), LabelType::num(),
                        [f](std::span<const Value>, const Value& x) { return Value(f(x.as_num())); });
}

} // namespace

RegistryBuilder demo_builder(double eps) {
    const LabelType B = LabelType::boolean();
    const LabelType N = LabelType::num();
    const LabelType NN = LabelType::prod(N, N);
    RegistryBuilder b = builtin_builder(eps);

    // The worked example's symbols.
    b.add(num_map("psi1", [](double x) { return 2 * x; }));
    b.add(num_map("psi2", [](double x) { return x + 1; }));
    b.add(PsiFun::mono("psi3", NN, N, [](std::span<const Value>, const Value& x) {
        return Value(x.left().as_num() - x.right().as_num());
    }));
    b.add(PhiFun::mono_any_edge("phi", N, N, [](const Value& i, const Value&, const Value& j) {
        return Value(i.as_num() + j.as_num());
    }));
    b.add(SigmaFun::mono("sigma", N, N, N, [](std::span<const Value> m, const Value& x) {
        double s = x.as_num();
        for (const Value& v : m) s += v.as_num();
        return Value(s);
    }));

    // Integer-preserving library for the program generator.
    b.add(num_map("inc", [](double x) { return x + 1; }));
    b.add(num_map("dec", [](double x) { return x - 1; }));
    b.add(num_map("neg", [](double x) { return -x; }));
    b.add(num_map("abs", [](double x) { return std::fabs(x); }));
    b.add(num_map("relu", [](double x) { return std::max(x, 0.0); }));
    b.add(num_map("clamp", [](double x) { return std::clamp(x, -4.0, 4.0); }));
    b.add(num_map("step_to_zero", [](double x) { return x > 0 ? x - 1 : (x < 0 ? x + 1 : 0.0); }));
    b.add(PsiFun::mono("gmax", N, N, [](std::span<const Value> all, const Value& x) {
        double m = x.as_num();
        for (const Value& v : all) m = std::max(m, v.as_num());
        return Value(m);
    }));
    b.add(PsiFun::mono("gmin", N, N, [](std::span<const Value> all, const Value& x) {
        double m = x.as_num();
        for (const Value& v : all) m = std::min(m, v.as_num());
        return Value(m);
    }));
    b.add(PsiFun::mono("gsum", N, N, [](std::span<const Value> all, const Value&) {
        double s = 0;
        for (const Value& v : all) s += v.as_num();
        return Value(s);
    }));
    b.add(PsiFun::mono("pos", N, B, [](std::span<const Value>, const Value& x) { return Value(x.as_num() > 0); }));
    b.add(PsiFun::mono("iszero", N, B, [](std::span<const Value>, const Value& x) { return Value(x.as_num() == 0); }));
    b.add(PsiFun::mono("b2n", B, N, [](std::span<const Value>, const Value& x) { return Value(x.as_bool() ? 1.0 : 0.0); }));
    b.add(PsiFun::mono("add2", NN, N, [](std::span<const Value>, const Value& x) {
        return Value(x.left().as_num() + x.right().as_num());
    }));
    b.add(PsiFun::mono("max2", NN, N, [](std::span<const Value>, const Value& x) {
        return Value(std::max(x.left().as_num(), x.right().as_num()));
    }));
    b.add(PsiFun::mono("min2", NN, N, [](std::span<const Value>, const Value& x) {
        return Value(std::min(x.left().as_num(), x.right().as_num()));
    }));
    b.add(PsiFun::mono("lt2", NN, B, [](std::span<const Value>, const Value& x) {
        return Value(x.left().as_num() < x.right().as_num());
    }));

    b.add(PhiFun::mono("w", N, N, N, [](const Value& i, const Value& e, const Value&) {
        return Value(i.as_num() * e.as_num());
    }));
    b.add(PhiFun::mono_any_edge("dif", N, N, [](const Value& i, const Value&, const Value& j) {
        return Value(i.as_num() - j.as_num());
    }));

    b.add(SigmaFun::mono_any_node("sum", N, N, [](std::span<const Value> m, const Value&) {
        double s = 0;
        for (const Value& v : m) s += v.as_num();
        return Value(s);
    }));
    b.add(SigmaFun::mono("max", N, N, N, [](std::span<const Value> m, const Value& x) {
        double r = x.as_num();
        for (const Value& v : m) r = std::max(r, v.as_num());
        return Value(r);
    }));
    b.add(SigmaFun::mono("min", N, N, N, [](std::span<const Value> m, const Value& x) {
        double r = x.as_num();
        for (const Value& v : m) r = std::min(r, v.as_num());
        return Value(r);
    }));
    b.add(SigmaFun::poly(
        "count", [](const LabelType&, const LabelType&) -> std::optional<LabelType> { return LabelType::num(); },
        [](std::span<const Value> m, const Value&) { return Value(static_cast<double>(m.size())); }));
    b.add(SigmaFun::mono_any_node("all", B, B, [](std::span<const Value> m, const Value&) {
        for (const Value& v : m)
            if (!v.as_bool()) return Value(false);
        return Value(true);
    }));
    return b;
}

Registry demo_registry(double eps) { return demo_builder(eps).build(); }

} // namespace mug
