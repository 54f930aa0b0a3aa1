#pragma once

#include "streetpoll/corpus.hpp"

#include <map>
#include <string>
#include <string_view>

namespace streetpoll {

// Reviewed table collapsing free-form concept strings into canonical
// inventory names. This is data, never inferred: keys are stored
// case-folded, targets must name a known concept.
struct MergeMap {
    std::map<std::string, std::string> entries; // folded raw -> canonical name

    bool operator==(const MergeMap&) const = default;
};

// File format: one `raw string => CanonicalName` per line, `#` comments.
MergeMap parse_merge_map(std::string_view text);
MergeMap load_merge_map(const std::string& path);

// Case-fold + trim; "other"/"undecided" markers first, then exact
// inventory match, then merge-map lookup, else Other. raw_text is
// preserved verbatim (trimmed) for audit.
ConceptLabel canonicalize_concept(std::string_view raw, const MergeMap& merge,
                                  const ConceptInventory& inventory);

} // namespace streetpoll
