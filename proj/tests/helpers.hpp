#pragma once

// Shared shorthand for the tests: run a source string through the
// front half of the pipeline and either demand success or collect the
// diagnostics for inspection.

#include <string>

#include "doctest.h"
#include "sl/compile.hpp"
#include "sl/corpus.hpp"
#include "sl/parser.hpp"
#include "sl/typecheck.hpp"

namespace slt {

inline sl::Spec parse_ok(const std::string& src) {
    return sl::parse_spec(src);
}

inline sl::CheckedSpec check_ok(const std::string& src) {
    sl::CheckResult res = sl::check_spec(sl::parse_spec(src));
    for (const auto& d : res.diags)
        if (d.sev == sl::Severity::Error) FAIL("unexpected error: " << d.message);
    return res.checked;
}

inline sl::CompiledSpec compile_ok(const std::string& src) {
    return sl::compile_spec(check_ok(src));
}

/// All error messages the pipeline produces for `src`, one per line; a
/// parse error yields just its own message.
inline std::string check_errors(const std::string& src) {
    try {
        sl::CheckResult res = sl::check_spec(sl::parse_spec(src));
        std::string out;
        for (const auto& d : res.diags) {
            if (d.sev != sl::Severity::Error) continue;
            if (!out.empty()) out += '\n';
            out += d.message;
        }
        return out;
    } catch (const sl::ParseError& e) {
        return e.diag.message;
    }
}

inline std::string corpus_dir() {
    return SL_CORPUS_DIR;
}

inline std::string corpus_source(const std::string& name) {
    return sl::read_text_file(corpus_dir() + "/" + name + ".sl");
}

} // namespace slt
