#pragma once

#include "streetpoll/captions.hpp"
#include "streetpoll/corpus.hpp"
#include "streetpoll/merge_map.hpp"
#include "streetpoll/prompt.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace streetpoll {

struct ChatTurn {
    enum class Role { User, Assistant };
    Role role = Role::User;
    std::string text;

    bool operator==(const ChatTurn&) const = default;
};

// Row reference as emitted by the backend: a per-video citizen number,
// optionally qualified by an interview number.
struct CitizenRef {
    std::optional<int> interview;
    int citizen = 0;

    auto operator<=>(const CitizenRef&) const = default;
};

struct AnnotationRow {
    CitizenRef ref;
    std::optional<Candidate> candidate; // nullopt = no prediction
    bool undecided = false;             // candidate field said "undecided"
    std::string reason;                 // empty = backend gave none
    ConceptLabel concept_label;

    bool operator==(const AnnotationRow&) const = default;
};

struct AnnotationBatch {
    std::string video_id;
    int declared_count = 0; // backend's Answer 1
    std::vector<AnnotationRow> rows;
    int turns_used = 0;
    std::string backend_id;

    bool operator==(const AnnotationBatch&) const = default;
};

class AnnotateError : public std::runtime_error {
public:
    enum class Kind { Incomplete, Malformed, Transport, MissingFixture };

    AnnotateError(Kind kind, std::string message, std::optional<AnnotationBatch> partial = {},
                  std::string raw = "")
        : std::runtime_error(std::move(message)),
          kind_(kind),
          partial_(std::move(partial)),
          raw_(std::move(raw)) {}

    Kind kind() const { return kind_; }
    bool retryable() const { return kind_ == Kind::Transport; }
    const std::optional<AnnotationBatch>& partial() const { return partial_; }
    const std::string& raw() const { return raw_; }

private:
    Kind kind_;
    std::optional<AnnotationBatch> partial_;
    std::string raw_;
};

// Candidate strings as a backend may spell them (names, surnames,
// speech-to-text variants). Extensible from a config file; the
// "undecided" markers are tracked so the concept can be forced to
// Undecided per the prompt rule.
struct SynonymTable {
    std::map<std::string, Candidate> entries; // folded string -> label
    std::set<std::string> undecided_markers;  // folded strings

    static SynonymTable defaults();
    void add(std::string_view raw, Candidate label, bool undecided = false);
    // File format: `string => RTE|KK|INCE|OTHER|UNDECIDED` per line.
    void load(const std::string& path);

    struct Match {
        Candidate label;
        bool undecided;
    };
    std::optional<Match> find(std::string_view raw) const;
};

struct ParseContext {
    const SynonymTable* synonyms = nullptr;
    const MergeMap* merge = nullptr;
    const ConceptInventory* inventory = nullptr;
    bool strict = false;
};

struct ParsedResponse {
    std::optional<int> declared_count;
    std::vector<AnnotationRow> rows;
    std::vector<std::string> warnings;
};

// Extracts the Answer-1 count and the CSV block from an assistant reply,
// ignoring surrounding prose and an optional header line. Lenient mode
// skips wrong-arity rows with a warning; strict mode throws Malformed.
ParsedResponse parse_response(std::string_view reply, const ParseContext& ctx);

// Renders a batch back into reply shape (Answer 1 + CSV). Concept cells
// carry raw_text, so parse_response(render_reply(b)) reproduces b.
std::string render_reply(const AnnotationBatch& batch);

class Backend; // see backend.hpp

inline constexpr std::string_view kContinuationPhrase = "Continue with the remaining citizens.";

// Sends the prompt, then re-prompts with the continuation phrase until
// the parsed rows cover the declared respondent count, deduplicating by
// citizen ref (first occurrence wins). Uses at most 1 + max_continuations
// backend turns; throws Incomplete with the partial batch past that.
AnnotationBatch annotate_video(const PromptInstance& prompt, Backend& backend,
                               const ParseContext& ctx, std::string video_id,
                               int max_continuations,
                               std::vector<ChatTurn>* conversation_out = nullptr);

// Deterministic rule-based annotator standing in for a live model:
// scans each citizen's utterances for candidate/concept keywords and
// emits a well-formed reply. With probability error_rate per row the
// candidate is corrupted to a different label (seeded).
std::string mock_annotate(const ProcessedTranscript& transcript, double error_rate,
                          std::uint64_t seed);

// Batch files are JSON, one per video and condition. Rows keep both the
// canonical concept and the verbatim raw string, so reading needs no
// parse context.
std::string batch_to_json(const AnnotationBatch& batch);
AnnotationBatch batch_from_json(std::string_view json_text);

} // namespace streetpoll
