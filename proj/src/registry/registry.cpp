#include <mug/registry.hpp>

#include <mug/error.hpp>

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <mutex>

namespace mug {

PsiFun PsiFun::mono(std::string name, LabelType in, LabelType out, Apply f) {
    PsiFun p;
    p.name = std::move(name);
    p.signature = [in, out](const LabelType& t) -> std::optional<LabelType> {
        if (t == in) return out;
        return std::nullopt;
    };
    p.apply = std::move(f);
    p.in_type = std::move(in);
    p.out_type = std::move(out);
    return p;
}

PsiFun PsiFun::poly(std::string name, Signature sig, Apply f) {
    PsiFun p;
    p.name = std::move(name);
    p.signature = std::move(sig);
    p.apply = std::move(f);
    return p;
}

PhiFun PhiFun::mono(std::string name, LabelType node, LabelType edge, LabelType out, Apply f) {
    PhiFun p;
    p.name = std::move(name);
    p.signature = [node, edge, out](const LabelType& n, const std::optional<LabelType>& e) -> std::optional<LabelType> {
        if (!(n == node)) return std::nullopt;
        if (e && !(*e == edge)) return std::nullopt;
        return out;
    };
    p.apply = std::move(f);
    p.node_type = std::move(node);
    p.edge_type = std::move(edge);
    p.out_type = std::move(out);
    return p;
}

PhiFun PhiFun::mono_any_edge(std::string name, LabelType node, LabelType out, Apply f) {
    PhiFun p;
    p.name = std::move(name);
    p.signature = [node, out](const LabelType& n, const std::optional<LabelType>&) -> std::optional<LabelType> {
        if (!(n == node)) return std::nullopt;
        return out;
    };
    p.apply = std::move(f);
    p.node_type = std::move(node);
    p.out_type = std::move(out);
    return p;
}

PhiFun PhiFun::poly(std::string name, Signature sig, Apply f) {
    PhiFun p;
    p.name = std::move(name);
    p.signature = std::move(sig);
    p.apply = std::move(f);
    return p;
}

SigmaFun SigmaFun::mono(std::string name, LabelType msg, LabelType node, LabelType out, Apply f) {
    SigmaFun s;
    s.name = std::move(name);
    s.signature = [msg, node, out](const LabelType& m, const LabelType& n) -> std::optional<LabelType> {
        if (!(m == msg) || !(n == node)) return std::nullopt;
        return out;
    };
    s.apply = std::move(f);
    s.msg_type = std::move(msg);
    s.node_type = std::move(node);
    s.out_type = std::move(out);
    return s;
}

SigmaFun SigmaFun::mono_any_node(std::string name, LabelType msg, LabelType out, Apply f) {
    SigmaFun s;
    s.name = std::move(name);
    s.signature = [msg, out](const LabelType& m, const LabelType&) -> std::optional<LabelType> {
        if (!(m == msg)) return std::nullopt;
        return out;
    };
    s.apply = std::move(f);
    s.msg_type = std::move(msg);
    s.out_type = std::move(out);
    return s;
}

SigmaFun SigmaFun::poly(std::string name, Signature sig, Apply f) {
    SigmaFun s;
    s.name = std::move(name);
    s.signature = std::move(sig);
    s.apply = std::move(f);
    return s;
}

std::string_view namespace_name(Namespace ns) {
    switch (ns) {
        case Namespace::Psi: return "psi";
        case Namespace::Phi: return "phi";
        case Namespace::Sigma: return "sigma";
    }
    return "?";
}

std::string lt_name(long k) { return fmt::format("{}{}", kLtPrefix, k); }

// ---------------------------------------------------------------------------

struct Registry::Tables {
    std::map<std::string, PsiFun> psis;
    std::map<std::string, PhiFun> phis;
    std::map<std::string, SigmaFun> sigmas;
    double eps = 0.0;
    bool has_builtins = false;

    // lt_k functions are minted on first lookup; std::map keeps references stable.
    mutable std::mutex minted_mu;
    mutable std::map<std::string, PsiFun> minted;
};

namespace {

template <class Map, class Fn>
void insert_unique(Map& m, Fn f, Namespace ns) {
    if (f.name.empty()) throw Error(ErrorKind::Registration, "function with an empty name");
    if (!f.signature || !f.apply)
        throw Error(ErrorKind::Registration, fmt::format("{} '{}' lacks a signature or body", namespace_name(ns), f.name));
    auto name = f.name;
    if (!m.emplace(name, std::move(f)).second)
        throw Error(ErrorKind::Registration, fmt::format("duplicate {} symbol '{}'", namespace_name(ns), name));
}

std::optional<long> lt_bound(const std::string& name) {
    if (name.size() <= kLtPrefix.size() || name.compare(0, kLtPrefix.size(), kLtPrefix) != 0) return std::nullopt;
    long k = 0;
    const char* first = name.data() + kLtPrefix.size();
    const char* last = name.data() + name.size();
    auto [p, ec] = std::from_chars(first, last, k);
    if (ec != std::errc{} || p != last) return std::nullopt;
    return k;
}

PsiFun make_lt(long k) {
    double bound = static_cast<double>(k);
    return PsiFun::mono(lt_name(k), LabelType::num(), LabelType::boolean(),
                        [bound](std::span<const Value>, const Value& x) { return Value(x.as_num() < bound); });
}

[[noreturn]] void unknown(const std::string& name, Namespace ns) {
    throw Error(ErrorKind::UnknownSymbol, fmt::format("unknown {} symbol '{}'", namespace_name(ns), name));
}

} // namespace

RegistryBuilder::RegistryBuilder(const Registry& base)
    : psis_(base.t_->psis), phis_(base.t_->phis), sigmas_(base.t_->sigmas), eps_(base.t_->eps),
      has_builtins_(base.t_->has_builtins) {}

RegistryBuilder& RegistryBuilder::add(PsiFun f) {
    insert_unique(psis_, std::move(f), Namespace::Psi);
    return *this;
}
RegistryBuilder& RegistryBuilder::add(PhiFun f) {
    insert_unique(phis_, std::move(f), Namespace::Phi);
    return *this;
}
RegistryBuilder& RegistryBuilder::add(SigmaFun f) {
    if (!f.total)
        throw Error(ErrorKind::Registration,
                    fmt::format("sigma '{}' is marked partial; aggregators must accept the empty message list", f.name));
    insert_unique(sigmas_, std::move(f), Namespace::Sigma);
    return *this;
}
RegistryBuilder& RegistryBuilder::replace(PsiFun f) {
    psis_.erase(f.name);
    return add(std::move(f));
}
RegistryBuilder& RegistryBuilder::replace(PhiFun f) {
    phis_.erase(f.name);
    return add(std::move(f));
}
RegistryBuilder& RegistryBuilder::replace(SigmaFun f) {
    sigmas_.erase(f.name);
    return add(std::move(f));
}

Registry RegistryBuilder::build() && {
    auto t = std::make_shared<Registry::Tables>();
    t->psis = std::move(psis_);
    t->phis = std::move(phis_);
    t->sigmas = std::move(sigmas_);
    t->eps = eps_;
    t->has_builtins = has_builtins_;
    Registry r;
    r.t_ = std::move(t);
    return r;
}

Registry::Registry() : t_(std::make_shared<Tables>()) {}

const PsiFun& Registry::lookup_psi(const std::string& name) const {
    if (auto it = t_->psis.find(name); it != t_->psis.end()) return it->second;
    if (t_->has_builtins) {
        if (auto k = lt_bound(name)) {
            std::lock_guard lock(t_->minted_mu);
            auto it = t_->minted.find(name);
            if (it == t_->minted.end()) it = t_->minted.emplace(name, make_lt(*k)).first;
            return it->second;
        }
    }
    unknown(name, Namespace::Psi);
}

const PhiFun& Registry::lookup_phi(const std::string& name) const {
    if (auto it = t_->phis.find(name); it != t_->phis.end()) return it->second;
    unknown(name, Namespace::Phi);
}

const SigmaFun& Registry::lookup_sigma(const std::string& name) const {
    if (auto it = t_->sigmas.find(name); it != t_->sigmas.end()) return it->second;
    unknown(name, Namespace::Sigma);
}

bool Registry::has_psi(const std::string& name) const {
    return t_->psis.count(name) > 0 || (t_->has_builtins && lt_bound(name).has_value());
}
bool Registry::has_phi(const std::string& name) const { return t_->phis.count(name) > 0; }
bool Registry::has_sigma(const std::string& name) const { return t_->sigmas.count(name) > 0; }

namespace {
template <class Map>
std::vector<std::string> keys(const Map& m) {
    std::vector<std::string> out;
    for (const auto& [k, _] : m) out.push_back(k);
    return out;
}
} // namespace

std::vector<std::string> Registry::psi_names() const { return keys(t_->psis); }
std::vector<std::string> Registry::phi_names() const { return keys(t_->phis); }
std::vector<std::string> Registry::sigma_names() const { return keys(t_->sigmas); }

double Registry::epsilon() const { return t_->eps; }

namespace {
PsiFun make_eqeps(double eps);
}

Registry Registry::with_epsilon(double eps) const {
    if (!t_->has_builtins || eps == t_->eps) return *this;
    RegistryBuilder b(*this);
    b.eps_ = eps;
    b.replace(make_eqeps(eps));
    return std::move(b).build();
}

// ---------------------------------------------------------------------------

bool eps_equal(const Value& a, const Value& b, double eps) {
    LabelType ta = a.type();
    if (!(ta == b.type()))
        throw Error(ErrorKind::Structural,
                    fmt::format("comparing labels of different types {} and {}", to_string(ta), to_string(b.type())));
    if (a == b) return true;
    if (!ta.is_numeric()) return false;
    std::vector<double> x, y;
    flatten_numeric(a, x);
    flatten_numeric(b, y);
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(std::fabs(x[i] - y[i]) <= eps)) return false;
    return true;
}

namespace {

std::optional<LabelType> concat_type(const LabelType& t) {
    if (t.kind() == LabelType::Kind::Vec) return t;
    if (t.is_prod() && t.is_numeric()) return LabelType::vec(t.numeric_width());
    return std::nullopt;
}

PsiFun make_eqeps(double eps) {
    return PsiFun::poly(
        "eqeps",
        [](const LabelType& t) -> std::optional<LabelType> {
            if (t.is_prod() && t.left() == t.right()) return LabelType::boolean();
            return std::nullopt;
        },
        [eps](std::span<const Value>, const Value& x) { return Value(eps_equal(x.left(), x.right(), eps)); });
}

PsiFun constant_bool(std::string name, bool b) {
    return PsiFun::poly(
        std::move(name), [](const LabelType&) -> std::optional<LabelType> { return LabelType::boolean(); },
        [b](std::span<const Value>, const Value&) { return Value(b); });
}

} // namespace

RegistryBuilder builtin_builder(double eps) {
    const LabelType B = LabelType::boolean();
    const LabelType N = LabelType::num();
    const LabelType BB = LabelType::prod(B, B);

    RegistryBuilder b;
    b.eps_ = eps;
    b.has_builtins_ = true;

    b.add(PsiFun::poly(
        "pL", [](const LabelType& t) -> std::optional<LabelType> { return t.is_prod() ? std::optional(t.left()) : std::nullopt; },
        [](std::span<const Value>, const Value& x) { return x.left(); }));
    b.add(PsiFun::poly(
        "pR", [](const LabelType& t) -> std::optional<LabelType> { return t.is_prod() ? std::optional(t.right()) : std::nullopt; },
        [](std::span<const Value>, const Value& x) { return x.right(); }));
    b.add(make_eqeps(eps));
    b.add(PsiFun::poly(
        "zero", [](const LabelType&) -> std::optional<LabelType> { return LabelType::num(); },
        [](std::span<const Value>, const Value&) { return Value(0.0); }));
    b.add(PsiFun::mono("succ", N, N, [](std::span<const Value>, const Value& x) { return Value(x.as_num() + 1.0); }));
    b.add(PsiFun::mono("not", B, B, [](std::span<const Value>, const Value& x) { return Value(!x.as_bool()); }));
    b.add(PsiFun::mono("and", BB, B, [](std::span<const Value>, const Value& x) {
        return Value(x.left().as_bool() && x.right().as_bool());
    }));
    b.add(PsiFun::mono("or", BB, B, [](std::span<const Value>, const Value& x) {
        return Value(x.left().as_bool() || x.right().as_bool());
    }));
    b.add(constant_bool("tt", true));
    b.add(constant_bool("ff", false));
    b.add(constant_bool("true", true));
    b.add(constant_bool("false", false));
    b.add(PsiFun::poly("concat", concat_type, [](std::span<const Value>, const Value& x) {
        Vec out;
        flatten_numeric(x, out);
        return Value(std::move(out));
    }));

    b.add(PhiFun::poly(
        "id3", [](const LabelType& node, const std::optional<LabelType>&) -> std::optional<LabelType> { return node; },
        [](const Value& i, const Value&, const Value&) { return i; }));

    b.add(SigmaFun::mono_any_node("or", B, B, [](std::span<const Value> msgs, const Value&) {
        for (const Value& m : msgs)
            if (m.as_bool()) return Value(true);
        return Value(false);
    }));
    return b;
}

Registry builtin_registry(double eps) { return builtin_builder(eps).build(); }

} // namespace mug
