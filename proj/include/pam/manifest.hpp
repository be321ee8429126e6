#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "pam/errors.hpp"

namespace pam {

/// FNV-1a over the raw bytes of a file.
inline std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ull;
        }
    }
    return hash;
}

/// Key-value run record: config echo plus input hashes. Holds nothing
/// run-dependent, so reruns of the same config write identical bytes.
struct Manifest {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value) {
        entries.emplace_back(key, value);
    }
    void add(const std::string& key, const char* value) { entries.emplace_back(key, value); }
    void add(const std::string& key, double value) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", value);
        entries.emplace_back(key, buf);
    }
    template <class Int>
    void add(const std::string& key, Int value) {
        entries.emplace_back(key, std::to_string(value));
    }
    void add_file(const std::string& key, const std::string& path) {
        add(key, path);
        char buf[32];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(fnv1a_file(path)));
        entries.emplace_back(key + "_fnv1a", buf);
    }

    void save(std::ostream& out) const {
        for (const auto& [key, value] : entries) out << key << '\t' << value << '\n';
    }
};

} // namespace pam
