#pragma once

#include <string>

#include "sl/ast.hpp"

namespace sl {

/// Renders with minimal parentheses; the output parses back to an
/// equivalent AST (ignoring source locations).
std::string pretty_pattern(const PatternPtr& p);
std::string pretty_expr(const MetaExprPtr& e);

/// Renders a full specification file (SIGNATURE + SPECIFICATION).
/// Specification items are ordered by their source locations so a parsed
/// spec prints in its original interleaving.
std::string pretty_spec(const Spec& spec);

/// Escapes and quotes a string literal ("\"" and "\\" escapes only).
std::string quote_string(const std::string& s);

} // namespace sl
