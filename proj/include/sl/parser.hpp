#pragma once

#include <string>
#include <vector>

#include "sl/ast.hpp"
#include "sl/diag.hpp"

namespace sl {

/// Parses a full specification (SIGNATURE + SPECIFICATION sections).
/// Throws ParseError on the first error. Non-fatal notes (e.g. ignored
/// `#open` directives) are appended to `warnings` when provided.
Spec parse_spec(const std::string& src, std::vector<Diagnostic>* warnings = nullptr);

} // namespace sl
