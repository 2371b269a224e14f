#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sl {

/// 1-based position in a source file; 0/0 means "no position".
struct SourceLoc {
    int line = 0;
    int col = 0;
};

enum class Severity { Error, Warning };

struct Diagnostic {
    SourceLoc loc;
    Severity sev = Severity::Error;
    std::string message;
};

/// Renders "file:line:col: severity: message".
std::string render_diag(const Diagnostic& d, const std::string& filename);

/// Thrown by the lexer/parsers on the first error; carries the diagnostic.
struct ParseError : std::runtime_error {
    Diagnostic diag;
    explicit ParseError(Diagnostic d) : std::runtime_error(d.message), diag(std::move(d)) {}
};

/// Thrown by meta-evaluation and the engine on genuine runtime faults
/// (unmatched aux clause, recursion depth exceeded, malformed value).
struct EvalError : std::runtime_error {
    explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

inline std::string render_diag(const Diagnostic& d, const std::string& filename) {
    std::string out = filename;
    out += ':';
    out += std::to_string(d.loc.line);
    out += ':';
    out += std::to_string(d.loc.col);
    out += d.sev == Severity::Error ? ": error: " : ": warning: ";
    out += d.message;
    return out;
}

} // namespace sl
