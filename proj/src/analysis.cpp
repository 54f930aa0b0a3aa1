#include "streetpoll/analysis.hpp"

#include "streetpoll/text.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace streetpoll {

SaturationCurve saturation_curve(const std::vector<std::vector<std::string>>& per_interview) {
    SaturationCurve curve;
    std::set<std::string> seen;
    int k = 0;
    for (const std::vector<std::string>& concepts : per_interview) {
        ++k;
        for (const std::string& raw : concepts) {
            std::string key = fold(trim(raw));
            if (!key.empty()) seen.insert(std::move(key));
        }
        curve.points.emplace_back(k, static_cast<int>(seen.size()));
    }
    return curve;
}

std::optional<int> stable_point(const SaturationCurve& curve, int window) {
    if (window < 1) throw std::invalid_argument("stable_point: window must be >= 1");
    const auto& pts = curve.points;
    for (size_t i = 0; i + window < pts.size(); ++i) {
        if (pts[i].second == pts[i + window].second) return pts[i].first;
    }
    return std::nullopt;
}

double coverage_fraction(const std::vector<GroundTruthRecord>& records) {
    int motivated = 0;
    int named = 0;
    for (const GroundTruthRecord& rec : records) {
        if (!rec.concept_label || *rec.concept_label == Concept::Undecided) continue;
        ++motivated;
        if (*rec.concept_label != Concept::Other) ++named;
    }
    if (motivated == 0) return 0.0;
    return static_cast<double>(named) / motivated;
}

SweepCell sweep_cell(const std::vector<Outcome>& outcomes, int min_tokens) {
    std::vector<Outcome> retained;
    for (const Outcome& o : outcomes) {
        // threshold 0 means unfiltered, so unknown lengths (-1) stay; any
        // positive threshold drops them along with the short segments
        if (min_tokens <= 0 || o.segment_tokens >= min_tokens) retained.push_back(o);
    }
    SweepCell cell;
    cell.respondents_retained = static_cast<int>(retained.size());
    cell.candidate_metrics = compute_metrics(retained, Task::Candidate);
    cell.concept_metrics = compute_metrics(retained, Task::Concept);
    if (!retained.empty()) {
        int predicted = cell.candidate_metrics.counts.tp + cell.candidate_metrics.counts.fp;
        cell.predicted_fraction = static_cast<double>(predicted) / retained.size();
    }
    return cell;
}

std::vector<SweepRow> threshold_sweep(const std::vector<Outcome>* raw,
                                      const std::vector<Outcome>* processed,
                                      const std::vector<int>& thresholds) {
    std::vector<SweepRow> rows;
    for (int t : thresholds) {
        SweepRow row;
        row.min_tokens = t;
        if (raw) row.raw = sweep_cell(*raw, t);
        if (processed) row.processed = sweep_cell(*processed, t);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<int> decile_thresholds(const std::vector<Outcome>& outcomes) {
    std::vector<int> tokens;
    for (const Outcome& o : outcomes) {
        if (o.segment_tokens >= 0) tokens.push_back(o.segment_tokens);
    }
    std::sort(tokens.begin(), tokens.end());
    std::vector<int> thresholds{0};
    if (!tokens.empty()) {
        for (int k = 1; k <= 9; ++k) {
            size_t idx = k * (tokens.size() - 1) / 10;
            thresholds.push_back(tokens[idx]);
        }
    }
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    return thresholds;
}

std::string render_curve(const SaturationCurve& curve) {
    std::ostringstream out;
    out << "sample_size\tdistinct_concepts\n";
    for (const auto& [n, distinct] : curve.points) {
        out << n << '\t' << distinct << '\n';
    }
    return out.str();
}

namespace {

constexpr const char* kDash = "—";

std::string cell_metric(const std::optional<SweepCell>& cell, Task task, bool precision) {
    if (!cell) return kDash;
    const Metrics& m = task == Task::Candidate ? cell->candidate_metrics : cell->concept_metrics;
    if (precision) return m.precision ? format_fixed(*m.precision, 2) : kDash;
    return m.zero_denominator ? kDash : format_fixed(m.recall, 2);
}

std::string cell_fraction(const std::optional<SweepCell>& cell) {
    if (!cell) return kDash;
    if (cell->respondents_retained == 0) return kDash;
    return format_fixed(cell->predicted_fraction, 2);
}

} // namespace

std::string render_sweep(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "min_tokens\tretained\tpredicted\tpredicted*\tPrec\tPrec*\tRec\tRec*\t"
           "CoP\tCoP*\tCoR\tCoR*\n";
    for (const SweepRow& row : rows) {
        out << row.min_tokens << '\t' << row.respondents_retained();
        out << '\t' << cell_fraction(row.raw);
        out << '\t' << cell_fraction(row.processed);
        out << '\t' << cell_metric(row.raw, Task::Candidate, true);
        out << '\t' << cell_metric(row.processed, Task::Candidate, true);
        out << '\t' << cell_metric(row.raw, Task::Candidate, false);
        out << '\t' << cell_metric(row.processed, Task::Candidate, false);
        out << '\t' << cell_metric(row.raw, Task::Concept, true);
        out << '\t' << cell_metric(row.processed, Task::Concept, true);
        out << '\t' << cell_metric(row.raw, Task::Concept, false);
        out << '\t' << cell_metric(row.processed, Task::Concept, false);
        out << '\n';
    }
    return out.str();
}

} // namespace streetpoll
