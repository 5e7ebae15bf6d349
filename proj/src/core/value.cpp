#include <mug/value.hpp>

#include <mug/error.hpp>

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>

#include <fmt/format.h>

namespace mug {

// ---------------------------------------------------------------------------
// LabelType

LabelType LabelType::boolean() { return LabelType(Kind::Bool); }
LabelType LabelType::num() { return LabelType(Kind::Num); }
LabelType LabelType::vec(std::size_t n) { return LabelType(Kind::Vec, n); }
LabelType LabelType::symset() { return LabelType(Kind::SymSet); }
LabelType LabelType::unit() { return LabelType(Kind::Unit); }

LabelType LabelType::prod(LabelType left, LabelType right) {
    LabelType t(Kind::Prod);
    t.children_ = std::make_shared<const std::pair<LabelType, LabelType>>(std::move(left), std::move(right));
    return t;
}

const LabelType& LabelType::left() const {
    if (!is_prod()) throw Error(ErrorKind::NonProductLabel, "left component of non-product type " + to_string(*this));
    return children_->first;
}

const LabelType& LabelType::right() const {
    if (!is_prod()) throw Error(ErrorKind::NonProductLabel, "right component of non-product type " + to_string(*this));
    return children_->second;
}

bool LabelType::is_numeric() const {
    switch (kind_) {
        case Kind::Num:
        case Kind::Vec: return true;
        case Kind::Prod: return left().is_numeric() && right().is_numeric();
        default: return false;
    }
}

std::size_t LabelType::numeric_width() const {
    switch (kind_) {
        case Kind::Num: return 1;
        case Kind::Vec: return n_;
        case Kind::Prod: return left().numeric_width() + right().numeric_width();
        default: return 0;
    }
}

bool operator==(const LabelType& a, const LabelType& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
        case LabelType::Kind::Vec: return a.n_ == b.n_;
        case LabelType::Kind::Prod:
            return a.children_ == b.children_ || (a.left() == b.left() && a.right() == b.right());
        default: return true;
    }
}

std::string to_string(const LabelType& t) {
    switch (t.kind()) {
        case LabelType::Kind::Bool: return "bool";
        case LabelType::Kind::Num: return "num";
        case LabelType::Kind::Vec: return fmt::format("vec({})", t.vec_size());
        case LabelType::Kind::SymSet: return "symset";
        case LabelType::Kind::Unit: return "unit";
        case LabelType::Kind::Prod: return fmt::format("({},{})", to_string(t.left()), to_string(t.right()));
    }
    return "?";
}

namespace {

class TypeParser {
public:
    explicit TypeParser(const std::string& s) : s_(s) {}

    LabelType parse_all() {
        LabelType t = parse();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return t;
    }

private:
    LabelType parse() {
        skip_ws();
        if (accept('(')) {
            LabelType l = parse();
            expect(',');
            LabelType r = parse();
            expect(')');
            return LabelType::prod(std::move(l), std::move(r));
        }
        std::string word;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) word += s_[pos_++];
        if (word == "bool") return LabelType::boolean();
        if (word == "num") return LabelType::num();
        if (word == "symset") return LabelType::symset();
        if (word == "unit") return LabelType::unit();
        if (word == "vec") {
            expect('(');
            skip_ws();
            std::size_t n = 0;
            bool any = false;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                n = n * 10 + static_cast<std::size_t>(s_[pos_++] - '0');
                any = true;
            }
            if (!any) fail("expected vector length");
            expect(')');
            return LabelType::vec(n);
        }
        fail(word.empty() ? "expected a type" : "unknown type '" + word + "'");
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(fmt::format("expected '{}'", c));
    }
    [[noreturn]] void fail(const std::string& what) {
        throw Error(ErrorKind::Syntax, fmt::format("type expression '{}' at offset {}: {}", s_, pos_, what));
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

LabelType parse_label_type(const std::string& text) { return TypeParser(text).parse_all(); }

// ---------------------------------------------------------------------------
// SymSet

SymSet::SymSet() : items_(std::make_shared<const std::vector<std::string>>()) {}

SymSet::SymSet(std::vector<std::string> items) {
    std::sort(items.begin(), items.end());
    items.erase(std::unique(items.begin(), items.end()), items.end());
    items_ = std::make_shared<const std::vector<std::string>>(std::move(items));
}

bool SymSet::contains(const std::string& s) const {
    return std::binary_search(items_->begin(), items_->end(), s);
}

bool operator==(const SymSet& a, const SymSet& b) { return a.items_ == b.items_ || *a.items_ == *b.items_; }

// ---------------------------------------------------------------------------
// Value

Value Value::pair(Value left, Value right) {
    Value v;
    v.v_ = std::make_shared<const std::pair<Value, Value>>(std::move(left), std::move(right));
    return v;
}

namespace {
[[noreturn]] void wrong_variant(const char* want, const Value& v) {
    throw Error(ErrorKind::Structural, fmt::format("expected {} label, found {}", want, to_string(v)));
}
} // namespace

bool Value::as_bool() const {
    if (auto p = std::get_if<bool>(&v_)) return *p;
    wrong_variant("bool", *this);
}

double Value::as_num() const {
    if (auto p = std::get_if<double>(&v_)) return *p;
    wrong_variant("num", *this);
}

const Vec& Value::as_vec() const {
    if (auto p = std::get_if<Vec>(&v_)) return *p;
    wrong_variant("vec", *this);
}

const SymSet& Value::as_symset() const {
    if (auto p = std::get_if<SymSet>(&v_)) return *p;
    wrong_variant("symset", *this);
}

const Value& Value::left() const {
    if (auto p = std::get_if<PairPtr>(&v_)) return (*p)->first;
    throw Error(ErrorKind::NonProductLabel, "left projection of non-pair label " + to_string(*this));
}

const Value& Value::right() const {
    if (auto p = std::get_if<PairPtr>(&v_)) return (*p)->second;
    throw Error(ErrorKind::NonProductLabel, "right projection of non-pair label " + to_string(*this));
}

LabelType Value::type() const {
    switch (v_.index()) {
        case 0: return LabelType::unit();
        case 1: return LabelType::boolean();
        case 2: return LabelType::num();
        case 3: return LabelType::vec(std::get<Vec>(v_).size());
        case 4: return LabelType::symset();
        default: return LabelType::prod(left().type(), right().type());
    }
}

bool operator==(const Value& a, const Value& b) {
    if (a.v_.index() != b.v_.index()) return false;
    if (a.is_pair()) return a.left() == b.left() && a.right() == b.right();
    return a.v_ == b.v_;
}

bool identical(const Value& a, const Value& b) {
    if (a.is_num() && b.is_num())
        return std::bit_cast<std::uint64_t>(a.as_num()) == std::bit_cast<std::uint64_t>(b.as_num());
    if (a.is_vec() && b.is_vec()) {
        const Vec& x = a.as_vec();
        const Vec& y = b.as_vec();
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (std::bit_cast<std::uint64_t>(x[i]) != std::bit_cast<std::uint64_t>(y[i])) return false;
        return true;
    }
    if (a.is_pair() && b.is_pair()) return identical(a.left(), b.left()) && identical(a.right(), b.right());
    return a == b;
}

bool has_type(const Value& v, const LabelType& t) {
    switch (t.kind()) {
        case LabelType::Kind::Bool: return v.is_bool();
        case LabelType::Kind::Num: return v.is_num();
        case LabelType::Kind::Vec: return v.is_vec() && v.as_vec().size() == t.vec_size();
        case LabelType::Kind::SymSet: return v.is_symset();
        case LabelType::Kind::Unit: return v.is_unit();
        case LabelType::Kind::Prod: return v.is_pair() && has_type(v.left(), t.left()) && has_type(v.right(), t.right());
    }
    return false;
}

void flatten_numeric(const Value& v, std::vector<double>& out) {
    if (v.is_num()) {
        out.push_back(v.as_num());
    } else if (v.is_vec()) {
        const Vec& x = v.as_vec();
        out.insert(out.end(), x.begin(), x.end());
    } else if (v.is_pair()) {
        flatten_numeric(v.left(), out);
        flatten_numeric(v.right(), out);
    } else {
        throw Error(ErrorKind::Structural, "non-numeric label " + to_string(v));
    }
}

std::string to_string(const Value& v) {
    if (v.is_unit()) return "()";
    if (v.is_bool()) return v.as_bool() ? "true" : "false";
    if (v.is_num()) return fmt::format("{}", v.as_num());
    if (v.is_vec()) return fmt::format("[{}]", fmt::join(v.as_vec(), ","));
    if (v.is_symset()) return fmt::format("{{{}}}", fmt::join(v.as_symset().items(), ","));
    return fmt::format("<{},{}>", to_string(v.left()), to_string(v.right()));
}

} // namespace mug
