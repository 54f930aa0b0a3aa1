#include "streetpoll/merge_map.hpp"

#include "streetpoll/text.hpp"

#include <stdexcept>

namespace streetpoll {

MergeMap parse_merge_map(std::string_view text) {
    MergeMap merge;
    int line_no = 0;
    for (const std::string& raw_line : split_lines(text)) {
        ++line_no;
        std::string line = trim(raw_line);
        if (line.empty() || line[0] == '#') continue;
        size_t arrow = line.find("=>");
        if (arrow == std::string::npos) {
            throw std::runtime_error("merge map line " + std::to_string(line_no) +
                                     ": expected `raw string => CanonicalName`");
        }
        std::string key = fold(trim(line.substr(0, arrow)));
        std::string target = trim(line.substr(arrow + 2));
        if (key.empty() || target.empty()) {
            throw std::runtime_error("merge map line " + std::to_string(line_no) +
                                     ": empty side");
        }
        std::optional<Concept> parsed_concept = concept_from_name(target);
        if (!parsed_concept) {
            throw std::runtime_error("merge map line " + std::to_string(line_no) +
                                     ": unknown canonical name `" + target + "`");
        }
        merge.entries[key] = std::string(concept_name(*parsed_concept));
    }
    return merge;
}

MergeMap load_merge_map(const std::string& path) {
    return parse_merge_map(read_file(path));
}

ConceptLabel canonicalize_concept(std::string_view raw, const MergeMap& merge,
                                  const ConceptInventory& inventory) {
    ConceptLabel label;
    label.raw_text = trim(raw);
    std::string folded = fold(label.raw_text);
    if (folded == "undecided") {
        label.value = Concept::Undecided;
        return label;
    }
    if (folded == "other" || folded.empty()) {
        label.value = Concept::Other;
        return label;
    }
    if (std::optional<Concept> hit = inventory.match(folded)) {
        label.value = *hit;
        return label;
    }
    auto it = merge.entries.find(folded);
    if (it != merge.entries.end()) {
        // Targets were validated at load time.
        label.value = *concept_from_name(it->second);
        return label;
    }
    label.value = Concept::Other;
    return label;
}

} // namespace streetpoll
