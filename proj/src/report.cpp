#include "llab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "llab/errors.hpp"

namespace llab {

std::string digest_hex(const std::string& bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw error("cannot write " + tmp);
        out << contents;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw error("cannot rename " + tmp + " to " + path);
}

void stamp_report(nlohmann::json& report, const std::string& input_bytes) {
    report["tool_version"] = kToolVersion;
    report["input_digest"] = digest_hex(input_bytes);
}

}  // namespace llab
