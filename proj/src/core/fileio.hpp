#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "core/error.hpp"

namespace dualweb {

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_io("cannot open for reading: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw_io("read failed: " + path);
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw_io("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw_io("write failed: " + path);
}

} // namespace dualweb
