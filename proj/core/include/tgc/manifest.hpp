#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tgc {

// Ordered `key=value` record written beside every command's artifacts. Holds
// the resolved configuration, input hashes and output paths, enough to replay
// the run and compare results.
class RunManifest {
public:
    // Inserts or overwrites; insertion order is preserved on write.
    void set(std::string_view key, std::string_view value);
    void set(std::string_view key, std::uint64_t value);
    void set(std::string_view key, std::int64_t value);
    void set(std::string_view key, double value);

    // Null when the key is absent.
    const std::string* find(std::string_view key) const;
    const std::string& at(std::string_view key) const;  // throws on absence

    const std::vector<std::pair<std::string, std::string>>& entries() const {
        return entries_;
    }

    void write(std::ostream& out) const;
    void write_file(const std::string& path) const;
    static RunManifest read(std::istream& in);
    static RunManifest read_file(const std::string& path);

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

// FNV-1a content hashes used for the manifest's input/config fingerprints.
std::uint64_t fnv1a(std::string_view data);
std::uint64_t fnv1a_file(const std::string& path);

}  // namespace tgc
