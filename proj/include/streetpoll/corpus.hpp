#pragma once

#include "streetpoll/captions.hpp"

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace streetpoll {

// The four-class stance space. "Other" and "Undecided" are one merged
// class throughout; metrics never distinguish them.
enum class Candidate { Rte, Kk, Ince, OtherUndecided };

inline constexpr Candidate kCandidates[] = {Candidate::Rte, Candidate::Kk, Candidate::Ince,
                                            Candidate::OtherUndecided};

std::string_view candidate_token(Candidate c);   // RTE / KK / INCE / OTHER
std::string_view candidate_display(Candidate c); // RTE / KK / Ince / Other
std::optional<Candidate> candidate_from_token(std::string_view token);

// The 12 inventory concepts plus the implicit "Other" and "Undecided"
// markers. "Persistence" is the canonical spelling internally.
enum class Concept {
    Leadership,
    Change,
    Economy,
    Development,
    Honesty,
    Stability,
    Intimacy,
    Reliable,
    Persistence,
    HadEnough,
    Justice,
    Faith,
    Other,
    Undecided,
};

inline constexpr int kNamedConceptCount = 12;

std::string_view concept_name(Concept c);
// Report spelling; differs from concept_name only for Persistence,
// which the published table spells "Persistance".
std::string_view concept_table_name(Concept c);
// Maps names case-insensitively, ignoring spaces/underscores/hyphens,
// and accepts the "Persistance" spelling.
std::optional<Concept> concept_from_name(std::string_view name);

struct ConceptLabel {
    Concept value = Concept::Other;
    std::string raw_text; // backend's original string, verbatim

    bool operator==(const ConceptLabel&) const = default;
};

// Per-video candidate remapping (identity unless configured). The one
// known use is a video whose on-screen counter folded Ince into Other.
struct LabelSpace {
    std::map<Candidate, Candidate> overrides;

    Candidate apply(Candidate label) const;
    bool is_idempotent() const;
    bool operator==(const LabelSpace&) const = default;
};

struct CitizenKey {
    int interview = 0; // 1-based
    int citizen = 0;   // 1-based, restarts per interview

    auto operator<=>(const CitizenKey&) const = default;
};

struct GroundTruthRecord {
    std::string video_id;
    CitizenKey key;
    Candidate candidate = Candidate::OtherUndecided;
    std::optional<Concept> concept_label; // absent: respondent gave no reason
    std::string reason;             // empty = absent

    bool operator==(const GroundTruthRecord&) const = default;
};

struct CaptionSources {
    std::string raw;       // path or URL; empty = unavailable
    std::string processed; // path or URL; empty = unavailable

    bool operator==(const CaptionSources&) const = default;
};

struct VideoRecord {
    std::string video_id;
    std::string channel;
    std::string location;
    CaptionSources captions;
    LabelSpace label_space;

    bool operator==(const VideoRecord&) const = default;
};

struct ConceptEntry {
    std::string name; // as listed in the inventory file (prompt order)
    std::string explanation;
    Concept value = Concept::Other;

    bool operator==(const ConceptEntry&) const = default;
};

struct ConceptInventory {
    std::vector<ConceptEntry> entries;

    bool contains(Concept c) const;
    std::optional<Concept> match(std::string_view folded_name) const;
    bool operator==(const ConceptInventory&) const = default;
};

struct Corpus {
    std::filesystem::path root;
    std::vector<VideoRecord> videos;
    std::vector<GroundTruthRecord> ground_truth;
    ConceptInventory inventory;
    std::string merge_map_path; // resolved; empty if the corpus ships none

    const VideoRecord* find_video(std::string_view video_id) const;
    std::vector<GroundTruthRecord> truth_for(std::string_view video_id) const;

    bool operator==(const Corpus&) const = default;
};

// Validation failure carrying one finding per offending entry, each with
// file/line provenance where available.
class CorpusValidationError : public std::runtime_error {
public:
    explicit CorpusValidationError(std::vector<std::string> findings);
    const std::vector<std::string>& findings() const { return findings_; }

private:
    std::vector<std::string> findings_;
};

// Loads manifest.txt, the ground-truth table, and the concept inventory
// from `root`. Throws std::runtime_error if the manifest is missing and
// CorpusValidationError for structural findings.
Corpus load_corpus(const std::filesystem::path& root);

ConceptInventory parse_inventory(std::string_view text);

Candidate apply_label_space(Candidate label, const VideoRecord& video);

// Per-candidate fractions over a slice of ground truth, computed after
// each record's label-space override. Fractions sum to 1; rounding to
// whole percent happens at display time only.
std::map<Candidate, double> candidate_shares(std::span<const GroundTruthRecord> slice,
                                             const Corpus& corpus);

// Caption files parsed per video (local files only; URL sources are
// fetched by the annotate pipeline, never here).
struct LoadedCaptions {
    std::map<std::string, RawCaptionDocument> raw;
    std::map<std::string, ProcessedTranscript> processed;
};

LoadedCaptions load_captions(const Corpus& corpus);

// Cross-checks ground-truth citizen keys against the processed
// transcripts. Returns findings; empty means consistent.
std::vector<std::string> cross_validate(const Corpus& corpus, const LoadedCaptions& captions);

} // namespace streetpoll
