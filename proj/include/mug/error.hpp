#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mug {

/// Position in a `.mg` source text. Line and column are 1-based; 0 means unknown.
struct Span {
    int line = 0;
    int col = 0;

    bool known() const { return line > 0; }
    friend bool operator==(const Span&, const Span&) = default;
};

std::string to_string(Span s);

enum class ErrorKind {
    Structural,
    NonProductLabel,
    UnknownSymbol,
    Registration,
    Syntax,
    UnboundVariable,
    ArityMismatch,
    VariablePosition,
    TypeMismatch,
    NonBooleanGuard,
    FixpointDivergence,
    StepsExhausted,
    Stuck,
    Io,
    Usage,
};

std::string_view kind_name(ErrorKind k);

/// Every failure in the toolkit is reported as an Error carrying its kind and,
/// when it originates from program text, the source span.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message, Span span = {});

    ErrorKind kind() const { return kind_; }
    Span span() const { return span_; }
    /// The message without kind prefix or location.
    const std::string& detail() const { return detail_; }

    bool is_budget() const {
        return kind_ == ErrorKind::FixpointDivergence || kind_ == ErrorKind::StepsExhausted;
    }

private:
    ErrorKind kind_;
    Span span_;
    std::string detail_;
};

} // namespace mug
