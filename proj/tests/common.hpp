#pragma once
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wpo/frontend.hpp"

namespace wpo::test {

inline std::string corpus(const std::string& rel) { return std::string(WPO_CORPUS_DIR) + "/" + rel; }

inline Program load(const std::string& rel) { return load_program_file(corpus(rel)); }

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<std::string> corpus_files(const std::string& sub) {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(corpus(sub))) {
        auto ext = e.path().extension();
        if (ext == ".litmus" || ext == ".mc") out.push_back(e.path().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace wpo::test
