#pragma once

// The bundled example theories: each entry pairs a specification file
// with an input term and the expected evaluation trace.

#include <string>
#include <vector>

namespace sl {

struct CorpusEntry {
    std::string name;
    std::string spec_path;
    std::string input_path;
    std::string golden_path;
};

/// The entries under a corpus directory, in a fixed order.
std::vector<CorpusEntry> corpus_entries(const std::string& root);

/// Whole-file read; throws std::runtime_error when unreadable.
std::string read_text_file(const std::string& path);

} // namespace sl
