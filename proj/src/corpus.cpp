#include "sl/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sl {

std::vector<CorpusEntry> corpus_entries(const std::string& root) {
    std::vector<CorpusEntry> out;
    for (const char* name : {"cbv", "cbn", "arith", "overlap"}) {
        CorpusEntry e;
        e.name = name;
        e.spec_path = root + "/" + name + ".sl";
        e.input_path = root + "/" + name + ".input";
        e.golden_path = root + "/" + name + ".golden";
        out.push_back(std::move(e));
    }
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace sl
