#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mug {

class LabelType;

/// The label type algebra: base types plus a binary product.
class LabelType {
public:
    enum class Kind { Bool, Num, Vec, SymSet, Unit, Prod };

    static LabelType boolean();
    static LabelType num();
    static LabelType vec(std::size_t n);
    static LabelType symset();
    static LabelType unit();
    static LabelType prod(LabelType left, LabelType right);

    Kind kind() const { return kind_; }
    bool is_prod() const { return kind_ == Kind::Prod; }
    std::size_t vec_size() const { return n_; }
    const LabelType& left() const;
    const LabelType& right() const;

    /// True for NumT, VecT and products whose leaves are all numeric.
    bool is_numeric() const;
    /// Number of scalar components when numeric.
    std::size_t numeric_width() const;

    friend bool operator==(const LabelType& a, const LabelType& b);

private:
    LabelType(Kind k, std::size_t n = 0) : kind_(k), n_(n) {}

    Kind kind_;
    std::size_t n_ = 0;
    std::shared_ptr<const std::pair<LabelType, LabelType>> children_;
};

/// Renders in the type-expression syntax: `bool | num | vec(n) | symset | unit | (T,T)`.
std::string to_string(const LabelType& t);
/// Parses the type-expression syntax; throws Error(Syntax).
LabelType parse_label_type(const std::string& text);

struct Unit {
    friend bool operator==(Unit, Unit) { return true; }
};

/// Sorted, duplicate-free set of identifiers. Shared and immutable, so copies are cheap.
class SymSet {
public:
    SymSet();
    explicit SymSet(std::vector<std::string> items);

    bool contains(const std::string& s) const;
    const std::vector<std::string>& items() const { return *items_; }
    std::size_t size() const { return items_->size(); }

    friend bool operator==(const SymSet& a, const SymSet& b);

private:
    std::shared_ptr<const std::vector<std::string>> items_;
};

class Value;
using Vec = std::vector<double>;

/// A single node or edge label.
class Value {
public:
    Value() : v_(Unit{}) {}
    Value(bool b) : v_(b) {}
    Value(double x) : v_(x) {}
    Value(int x) : v_(static_cast<double>(x)) {}
    Value(Vec v) : v_(std::move(v)) {}
    Value(SymSet s) : v_(std::move(s)) {}
    Value(Unit u) : v_(u) {}

    static Value pair(Value left, Value right);

    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_num() const { return std::holds_alternative<double>(v_); }
    bool is_vec() const { return std::holds_alternative<Vec>(v_); }
    bool is_symset() const { return std::holds_alternative<SymSet>(v_); }
    bool is_unit() const { return std::holds_alternative<Unit>(v_); }
    bool is_pair() const { return std::holds_alternative<PairPtr>(v_); }

    // Accessors throw Error(Structural) on a variant mismatch.
    bool as_bool() const;
    double as_num() const;
    const Vec& as_vec() const;
    const SymSet& as_symset() const;
    const Value& left() const;
    const Value& right() const;

    /// Structural type of this value (total).
    LabelType type() const;

    /// Exact equality; doubles compare with ==.
    friend bool operator==(const Value& a, const Value& b);

private:
    using PairPtr = std::shared_ptr<const std::pair<Value, Value>>;
    std::variant<Unit, bool, double, Vec, SymSet, PairPtr> v_;
};

/// Bitwise identity: doubles are compared by their bit patterns.
bool identical(const Value& a, const Value& b);

/// True iff `v` structurally inhabits `t`.
bool has_type(const Value& v, const LabelType& t);

/// Appends the scalar leaves of a numeric value in left-to-right order.
void flatten_numeric(const Value& v, std::vector<double>& out);

std::string to_string(const Value& v);

} // namespace mug
