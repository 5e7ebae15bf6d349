#pragma once

#include <mug/value.hpp>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mug {

/// psi: f(eta(V), eta(v)). The signature maps an input label type to the output
/// type, or nullopt when the input type is not accepted.
struct PsiFun {
    using Signature = std::function<std::optional<LabelType>(const LabelType& in)>;
    using Apply = std::function<Value(std::span<const Value> all, const Value& x)>;

    std::string name;
    Signature signature;
    Apply apply;
    /// Declared T1 -> T2 for monomorphic functions; empty for polymorphic builtins.
    std::optional<LabelType> in_type, out_type;

    static PsiFun mono(std::string name, LabelType in, LabelType out, Apply f);
    static PsiFun poly(std::string name, Signature sig, Apply f);
};

/// phi: message f(eta(u), xi(edge), eta(v)).
struct PhiFun {
    /// `edge` is nullopt when no concrete graph fixes T_e.
    using Signature = std::function<std::optional<LabelType>(const LabelType& node, const std::optional<LabelType>& edge)>;
    using Apply = std::function<Value(const Value& i, const Value& e, const Value& j)>;

    std::string name;
    Signature signature;
    Apply apply;
    std::optional<LabelType> node_type, edge_type, out_type;

    static PhiFun mono(std::string name, LabelType node, LabelType edge, LabelType out, Apply f);
    /// Accepts any edge type.
    static PhiFun mono_any_edge(std::string name, LabelType node, LabelType out, Apply f);
    static PhiFun poly(std::string name, Signature sig, Apply f);
};

/// sigma: aggregate f(messages, eta(v)); must be total on the empty message list.
struct SigmaFun {
    using Signature = std::function<std::optional<LabelType>(const LabelType& msg, const LabelType& node)>;
    using Apply = std::function<Value(std::span<const Value> messages, const Value& x)>;

    std::string name;
    Signature signature;
    Apply apply;
    std::optional<LabelType> msg_type, node_type, out_type;
    /// Implementers mark partial aggregators; registration rejects them.
    bool total = true;

    static SigmaFun mono(std::string name, LabelType msg, LabelType node, LabelType out, Apply f);
    /// Accepts any node label type.
    static SigmaFun mono_any_node(std::string name, LabelType msg, LabelType out, Apply f);
    static SigmaFun poly(std::string name, Signature sig, Apply f);
};

enum class Namespace { Psi, Phi, Sigma };
std::string_view namespace_name(Namespace ns);

class Registry;
class RegistryBuilder;
RegistryBuilder builtin_builder(double eps);

/// Collects functions; names must be unique within each namespace.
class RegistryBuilder {
public:
    RegistryBuilder() = default;
    /// Starts from the contents of an existing registry.
    explicit RegistryBuilder(const Registry& base);

    RegistryBuilder& add(PsiFun f);
    RegistryBuilder& add(PhiFun f);
    RegistryBuilder& add(SigmaFun f);
    /// Like add, but replaces an existing entry of the same name.
    RegistryBuilder& replace(PsiFun f);
    RegistryBuilder& replace(PhiFun f);
    RegistryBuilder& replace(SigmaFun f);

    Registry build() &&;

private:
    friend class Registry;
    friend RegistryBuilder builtin_builder(double eps);
    std::map<std::string, PsiFun> psis_;
    std::map<std::string, PhiFun> phis_;
    std::map<std::string, SigmaFun> sigmas_;
    double eps_ = 0.0;
    bool has_builtins_ = false;
};

/// Immutable table of psi/phi/sigma implementations; cheap to copy and safe to share.
class Registry {
public:
    Registry();

    /// Throws Error(UnknownSymbol) naming the symbol and namespace.
    const PsiFun& lookup_psi(const std::string& name) const;
    const PhiFun& lookup_phi(const std::string& name) const;
    const SigmaFun& lookup_sigma(const std::string& name) const;

    bool has_psi(const std::string& name) const;
    bool has_phi(const std::string& name) const;
    bool has_sigma(const std::string& name) const;

    std::vector<std::string> psi_names() const;
    std::vector<std::string> phi_names() const;
    std::vector<std::string> sigma_names() const;

    /// The epsilon baked into `eqeps` (0 when there are no builtins).
    double epsilon() const;
    /// Same table with `eqeps` rebound to `eps`; returns *this unchanged when it already matches
    /// or when the registry carries no builtins.
    Registry with_epsilon(double eps) const;

private:
    friend class RegistryBuilder;
    struct Tables;
    std::shared_ptr<const Tables> t_;
};

/// eta-equality up to eps: exact equality, or componentwise |a_i - b_i| <= eps on numeric types.
/// Throws Error(Structural) when a and b have different types.
bool eps_equal(const Value& a, const Value& b, double eps);

/// Builtins needed by the semantics and the macros:
///   psi  pL, pR, eqeps, zero, succ, lt_<k> (any k >= 0), not, and, or, tt, ff, true, false, concat
///   phi  id3
///   sigma or
RegistryBuilder builtin_builder(double eps);
Registry builtin_registry(double eps);

/// Sentinel name prefix of the on-demand `lt_k` family.
inline constexpr std::string_view kLtPrefix = "lt_";
std::string lt_name(long k);

} // namespace mug
