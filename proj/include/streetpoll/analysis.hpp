#pragma once

#include "streetpoll/eval.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace streetpoll {

struct SaturationCurve {
    // (sample size, distinct concept strings so far), one point per interview
    std::vector<std::pair<int, int>> points;
};

// Cumulative distinct (case-folded) concept strings over the first k
// interviews, for k = 1..N. Input order is the analysis order.
SaturationCurve saturation_curve(const std::vector<std::vector<std::string>>& per_interview);

// Smallest n with distinct(n) = distinct(n + window): no new concept
// appears across the next `window` interviews. Absent when the curve
// never flattens for that long (or is shorter than window + 1).
std::optional<int> stable_point(const SaturationCurve& curve, int window);

// Fraction of respondents with a stated motivation (concept present and
// not Undecided) whose concept is one of the named inventory entries.
double coverage_fraction(const std::vector<GroundTruthRecord>& records);

struct SweepCell {
    int respondents_retained = 0;
    double predicted_fraction = 0.0; // (CORRECT + WRONG) / retained, candidate task
    Metrics candidate_metrics;
    Metrics concept_metrics;

    bool operator==(const SweepCell&) const = default;
};

struct SweepRow {
    int min_tokens = 0;
    std::optional<SweepCell> raw;
    std::optional<SweepCell> processed;

    int respondents_retained() const {
        if (raw) return raw->respondents_retained;
        if (processed) return processed->respondents_retained;
        return 0;
    }
};

// Restricts outcomes to respondents whose interview segment has at
// least min_tokens tokens and recomputes both tasks' metrics.
SweepCell sweep_cell(const std::vector<Outcome>& outcomes, int min_tokens);

// One row per threshold; either condition may be null. Outcomes must
// carry segment_tokens (match_batch with a token map).
std::vector<SweepRow> threshold_sweep(const std::vector<Outcome>* raw,
                                      const std::vector<Outcome>* processed,
                                      const std::vector<int>& thresholds);

// Default threshold grid: 0 plus the deciles of the observed
// segment-token distribution, deduplicated and ascending.
std::vector<int> decile_thresholds(const std::vector<Outcome>& outcomes);

// Plot-ready tab-separated emissions.
std::string render_curve(const SaturationCurve& curve);
std::string render_sweep(const std::vector<SweepRow>& rows);

} // namespace streetpoll
