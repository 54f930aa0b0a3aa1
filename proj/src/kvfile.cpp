#include "streetpoll/kvfile.hpp"

#include "streetpoll/text.hpp"

#include <stdexcept>

namespace streetpoll {

std::optional<std::string> KvSection::get(std::string_view key) const {
    for (const KvEntry& e : entries) {
        if (e.key == key) return e.value;
    }
    return std::nullopt;
}

KvFile parse_kvfile(std::string_view text) {
    KvFile file;
    KvSection* current = &file.top;
    int line_no = 0;
    for (const std::string& raw_line : split_lines(text)) {
        ++line_no;
        std::string line = trim(raw_line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            KvSection section;
            section.name = trim(line.substr(1, line.size() - 2));
            section.line = line_no;
            file.sections.push_back(std::move(section));
            current = &file.sections.back();
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected `key = value`");
        }
        KvEntry entry;
        entry.key = trim(line.substr(0, eq));
        entry.value = trim(line.substr(eq + 1));
        entry.line = line_no;
        if (entry.key.empty()) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": empty key");
        }
        current->entries.push_back(std::move(entry));
    }
    return file;
}

} // namespace streetpoll
