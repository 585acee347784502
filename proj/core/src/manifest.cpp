#include "tgc/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tgc {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void RunManifest::set(std::string_view key, std::string_view value) {
    for (auto& [k, v] : entries_) {
        if (k == key) {
            v = std::string(value);
            return;
        }
    }
    entries_.emplace_back(std::string(key), std::string(value));
}

void RunManifest::set(std::string_view key, std::uint64_t value) {
    set(key, std::string_view(std::to_string(value)));
}

void RunManifest::set(std::string_view key, std::int64_t value) {
    set(key, std::string_view(std::to_string(value)));
}

void RunManifest::set(std::string_view key, double value) {
    set(key, std::string_view(format_double(value)));
}

const std::string* RunManifest::find(std::string_view key) const {
    for (const auto& [k, v] : entries_)
        if (k == key) return &v;
    return nullptr;
}

const std::string& RunManifest::at(std::string_view key) const {
    if (const std::string* v = find(key)) return *v;
    throw std::out_of_range("manifest key not found: " + std::string(key));
}

void RunManifest::write(std::ostream& out) const {
    for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
}

void RunManifest::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest file: " + path);
    write(out);
    out.flush();
    if (!out) throw std::runtime_error("failed writing manifest file: " + path);
}

RunManifest RunManifest::read(std::istream& in) {
    RunManifest m;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                     ": expected key=value, got '" + line + "'");
        m.set(std::string_view(line).substr(0, eq), std::string_view(line).substr(eq + 1));
    }
    return m;
}

RunManifest RunManifest::read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open manifest file: " + path);
    return read(in);
}

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for hashing: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return fnv1a(buf.str());
}

}  // namespace tgc
