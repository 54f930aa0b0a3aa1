#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace streetpoll {

// Minimal `key = value` file with optional `[section]` blocks and `#`
// comments. Used by the corpus manifest and the run config.
struct KvEntry {
    std::string key;
    std::string value;
    int line = 0;
};

struct KvSection {
    std::string name;
    std::vector<KvEntry> entries;
    int line = 0;

    std::optional<std::string> get(std::string_view key) const;
};

struct KvFile {
    KvSection top; // entries before the first section header
    std::vector<KvSection> sections;
};

KvFile parse_kvfile(std::string_view text);

} // namespace streetpoll
