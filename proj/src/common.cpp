#include "gvbench/common.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace gvbench {

std::uint64_t hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StageError(concat("cannot open file for hashing: ", path));
    std::uint64_t h = 0xcbf29ce484222325ull;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        std::streamsize got = in.gcount();
        if (got > 0) h = fnv1a64(buf, std::size_t(got), h);
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StageError(concat("cannot open file: ", path));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::vector<unsigned char> read_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    if (!in) throw StageError(concat("cannot open file: ", path));
    std::streamsize size = in.tellg();
    in.seekg(0);
    std::vector<unsigned char> data(std::size_t(size));
    if (size > 0 && !in.read(reinterpret_cast<char*>(data.data()), size))
        throw StageError(concat("short read: ", path));
    return data;
}

void ensure_parent_dir(const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

void write_text_file(const std::string& path, const std::string& content) {
    ensure_parent_dir(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StageError(concat("cannot open file for writing: ", path));
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw StageError(concat("write failed: ", path));
}

void write_binary_file(const std::string& path, const void* data, std::size_t len) {
    ensure_parent_dir(path);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw StageError(concat("cannot open file for writing: ", path));
    out.write(static_cast<const char*>(data), std::streamsize(len));
    if (!out) throw StageError(concat("write failed: ", path));
}

}  // namespace gvbench
