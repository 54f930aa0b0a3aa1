#pragma once

#include "streetpoll/annotate.hpp"
#include "streetpoll/corpus.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace streetpoll {

enum class OutcomeClass { Correct, Wrong, Missing };

enum class ConceptOutcome { Correct, Wrong, Missing, NotApplicable };

// Verdict for one ground-truth respondent. The stored truth record
// carries the post-override candidate, so downstream tallies never
// reapply the label space.
struct Outcome {
    GroundTruthRecord truth;
    OutcomeClass candidate_outcome = OutcomeClass::Missing;
    ConceptOutcome concept_outcome = ConceptOutcome::Missing;
    int segment_tokens = -1; // token count of the interview segment; -1 = unknown

    bool operator==(const Outcome&) const = default;
};

struct EvalCounts {
    int tp = 0;
    int fp = 0; // wrong predictions only; a missing prediction is never a false positive
    int fn = 0; // wrong + missing

    bool operator==(const EvalCounts&) const = default;
};

struct Metrics {
    EvalCounts counts;
    std::optional<double> precision; // absent when nothing was predicted (tp + fp = 0)
    double recall = 0.0;
    bool zero_denominator = false; // no in-scope respondents at all

    bool operator==(const Metrics&) const = default;
};

Metrics metrics_from_counts(EvalCounts counts);

enum class Task { Candidate, Concept };

struct MatchResult {
    std::vector<Outcome> outcomes; // one per ground-truth respondent, truth order
    std::vector<std::string> warnings;
};

// Aligns batch rows to the video's ground truth. When every row carries
// an interview index the (interview, citizen) key is matched directly;
// otherwise rows pair with respondents by order of appearance (truth
// sorted by key, matching the prompt's caption order). Candidates on
// both sides pass through the video's label space. Respondents with no
// row become MISSING; rows with no respondent are spurious warnings.
// segment_tokens, when provided, maps interview index -> token count.
MatchResult match_batch(const AnnotationBatch& batch,
                        const std::vector<GroundTruthRecord>& truth, const VideoRecord& video,
                        const std::map<int, int>* segment_tokens = nullptr);

// Micro-averaged counts: tp = CORRECT, fp = WRONG, fn = WRONG + MISSING.
// For the concept task, NOT_APPLICABLE respondents are out of scope.
Metrics compute_metrics(const std::vector<Outcome>& outcomes, Task task);

struct ConceptSupport {
    int rte = 0;
    int kk = 0;
    int ince = 0;

    int total() const { return rte + kk + ince; }
    bool operator==(const ConceptSupport&) const = default;
};

struct ConceptMetricsRow {
    Concept value = Concept::Other;
    ConceptSupport support;
    Metrics metrics;
};

// One row per inventory concept with nonzero ground-truth support, in
// inventory order: support split by (post-override) candidate plus
// Metrics restricted to respondents whose true concept matches.
std::vector<ConceptMetricsRow> per_concept_metrics(const std::vector<Outcome>& outcomes);

// All matched outcomes for one caption condition, keyed by video.
struct ConditionOutcomes {
    std::map<std::string, std::vector<Outcome>> by_video;
    std::set<std::string> absent; // corpus videos with no batch (warned, row left empty)

    std::vector<Outcome> flatten(const Corpus& corpus) const; // corpus video order
};

struct SliceCells {
    bool present = false; // condition supplied and at least one batch covered the slice
    Metrics candidate_metrics;
    Metrics concept_metrics;
};

struct ReportRow {
    std::string label;
    int total = 0; // respondents in the slice
    int rte = 0, kk = 0, ince = 0, other = 0; // ground-truth counts, post-override
    SliceCells raw;
    SliceCells processed;
};

struct ConceptReportRow {
    Concept value = Concept::Other;
    std::string explanation;
    ConceptSupport support;
    std::optional<Metrics> raw;
    std::optional<Metrics> processed;
};

struct EvalReport {
    std::vector<ReportRow> videos;   // corpus order, labeled by location
    std::vector<ReportRow> channels; // first-appearance order
    ReportRow overall;               // label "All"
    std::vector<ConceptReportRow> concepts;
    std::vector<std::string> warnings;
};

// Builds the report over every slice (video, channel, overall) for the
// supplied conditions; either may be null. Candidate-share columns come
// from the ground truth alone, so they are filled even for videos whose
// batch is absent.
EvalReport slice_report(const Corpus& corpus, const ConditionOutcomes* raw,
                        const ConditionOutcomes* processed);

// Tab-separated tables; `*` marks the processed-caption condition.
// Fractions print with 2 decimals (half-up); undefined or absent cells
// print "—"; share columns print as whole percents.
std::string render_table1(const EvalReport& report);
std::string render_table2(const EvalReport& report);

} // namespace streetpoll
