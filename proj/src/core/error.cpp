#include <mug/error.hpp>

#include <fmt/format.h>

namespace mug {

std::string to_string(Span s) {
    if (!s.known()) return "?";
    return fmt::format("{}:{}", s.line, s.col);
}

std::string_view kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Structural: return "StructuralError";
        case ErrorKind::NonProductLabel: return "NonProductLabel";
        case ErrorKind::UnknownSymbol: return "UnknownSymbol";
        case ErrorKind::Registration: return "RegistrationError";
        case ErrorKind::Syntax: return "SyntaxError";
        case ErrorKind::UnboundVariable: return "UnboundVariable";
        case ErrorKind::ArityMismatch: return "ArityMismatch";
        case ErrorKind::VariablePosition: return "VariablePosition";
        case ErrorKind::TypeMismatch: return "TypeMismatch";
        case ErrorKind::NonBooleanGuard: return "NonBooleanGuard";
        case ErrorKind::FixpointDivergence: return "FixpointDivergence";
        case ErrorKind::StepsExhausted: return "StepsExhausted";
        case ErrorKind::Stuck: return "Stuck";
        case ErrorKind::Io: return "IoError";
        case ErrorKind::Usage: return "UsageError";
    }
    return "Error";
}

namespace {
std::string render(ErrorKind kind, const std::string& message, Span span) {
    if (span.known()) return fmt::format("{}: {}: {}", to_string(span), kind_name(kind), message);
    return fmt::format("{}: {}", kind_name(kind), message);
}
} // namespace

Error::Error(ErrorKind kind, const std::string& message, Span span)
    : std::runtime_error(render(kind, message, span)), kind_(kind), span_(span), detail_(message) {}

} // namespace mug
