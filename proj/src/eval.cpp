#include "streetpoll/eval.hpp"

#include "streetpoll/text.hpp"

#include <algorithm>
#include <sstream>

namespace streetpoll {

Metrics metrics_from_counts(EvalCounts counts) {
    Metrics m;
    m.counts = counts;
    if (counts.tp + counts.fp > 0) {
        m.precision = static_cast<double>(counts.tp) / (counts.tp + counts.fp);
    }
    int denom = counts.tp + counts.fn;
    if (denom > 0) {
        m.recall = static_cast<double>(counts.tp) / denom;
    } else {
        m.zero_denominator = true;
    }
    return m;
}

namespace {

std::string ref_string(const CitizenRef& ref) {
    std::string s;
    if (ref.interview) s += "interview " + std::to_string(*ref.interview) + " ";
    s += "citizen " + std::to_string(ref.citizen);
    return s;
}

} // namespace

MatchResult match_batch(const AnnotationBatch& batch,
                        const std::vector<GroundTruthRecord>& truth, const VideoRecord& video,
                        const std::map<int, int>* segment_tokens) {
    std::vector<GroundTruthRecord> ordered = truth;
    std::sort(ordered.begin(), ordered.end(),
              [](const GroundTruthRecord& a, const GroundTruthRecord& b) { return a.key < b.key; });

    bool keyed = !batch.rows.empty() &&
                 std::all_of(batch.rows.begin(), batch.rows.end(),
                             [](const AnnotationRow& r) { return r.ref.interview.has_value(); });

    MatchResult result;
    std::map<CitizenKey, const AnnotationRow*> by_key;
    if (keyed) {
        for (const AnnotationRow& row : batch.rows) {
            CitizenKey key{*row.ref.interview, row.ref.citizen};
            if (!by_key.emplace(key, &row).second) {
                result.warnings.push_back(batch.video_id + ": duplicate row for " +
                                          ref_string(row.ref));
            }
        }
        std::set<CitizenKey> known;
        for (const GroundTruthRecord& rec : ordered) known.insert(rec.key);
        for (const AnnotationRow& row : batch.rows) {
            CitizenKey key{*row.ref.interview, row.ref.citizen};
            if (!known.count(key)) {
                result.warnings.push_back(batch.video_id + ": spurious row for " +
                                          ref_string(row.ref));
            }
        }
    } else if (batch.rows.size() > ordered.size()) {
        result.warnings.push_back(batch.video_id + ": " +
                                  std::to_string(batch.rows.size() - ordered.size()) +
                                  " row(s) beyond the respondent count, discarded");
    }

    for (size_t i = 0; i < ordered.size(); ++i) {
        const GroundTruthRecord& rec = ordered[i];
        const AnnotationRow* row = nullptr;
        if (keyed) {
            auto it = by_key.find(rec.key);
            if (it != by_key.end()) row = it->second;
        } else if (i < batch.rows.size()) {
            row = &batch.rows[i];
        }

        Outcome outcome;
        outcome.truth = rec;
        outcome.truth.candidate = apply_label_space(rec.candidate, video);
        if (segment_tokens) {
            auto it = segment_tokens->find(rec.key.interview);
            if (it != segment_tokens->end()) outcome.segment_tokens = it->second;
        }

        if (!row || !row->candidate) {
            outcome.candidate_outcome = OutcomeClass::Missing;
        } else {
            Candidate predicted = apply_label_space(*row->candidate, video);
            outcome.candidate_outcome = predicted == outcome.truth.candidate
                                            ? OutcomeClass::Correct
                                            : OutcomeClass::Wrong;
        }

        if (!rec.concept_label) {
            outcome.concept_outcome = ConceptOutcome::NotApplicable;
        } else if (!row || (row->concept_label.raw_text.empty() && row->concept_label.value == Concept::Other)) {
            outcome.concept_outcome = ConceptOutcome::Missing;
        } else {
            outcome.concept_outcome = row->concept_label.value == *rec.concept_label
                                          ? ConceptOutcome::Correct
                                          : ConceptOutcome::Wrong;
        }
        result.outcomes.push_back(std::move(outcome));
    }
    return result;
}

Metrics compute_metrics(const std::vector<Outcome>& outcomes, Task task) {
    EvalCounts counts;
    for (const Outcome& o : outcomes) {
        if (task == Task::Candidate) {
            switch (o.candidate_outcome) {
                case OutcomeClass::Correct: ++counts.tp; break;
                case OutcomeClass::Wrong: ++counts.fp; ++counts.fn; break;
                case OutcomeClass::Missing: ++counts.fn; break;
            }
        } else {
            switch (o.concept_outcome) {
                case ConceptOutcome::Correct: ++counts.tp; break;
                case ConceptOutcome::Wrong: ++counts.fp; ++counts.fn; break;
                case ConceptOutcome::Missing: ++counts.fn; break;
                case ConceptOutcome::NotApplicable: break;
            }
        }
    }
    return metrics_from_counts(counts);
}

std::vector<ConceptMetricsRow> per_concept_metrics(const std::vector<Outcome>& outcomes) {
    std::vector<ConceptMetricsRow> rows;
    for (int i = 0; i < kNamedConceptCount; ++i) {
        Concept value = static_cast<Concept>(i);
        std::vector<Outcome> restricted;
        ConceptSupport support;
        for (const Outcome& o : outcomes) {
            if (!o.truth.concept_label || *o.truth.concept_label != value) continue;
            restricted.push_back(o);
            switch (o.truth.candidate) {
                case Candidate::Rte: ++support.rte; break;
                case Candidate::Kk: ++support.kk; break;
                case Candidate::Ince: ++support.ince; break;
                case Candidate::OtherUndecided: break; // no column in the report
            }
        }
        if (restricted.empty()) continue;
        rows.push_back({value, support, compute_metrics(restricted, Task::Concept)});
    }
    return rows;
}

std::vector<Outcome> ConditionOutcomes::flatten(const Corpus& corpus) const {
    std::vector<Outcome> all;
    for (const VideoRecord& video : corpus.videos) {
        auto it = by_video.find(video.video_id);
        if (it == by_video.end()) continue;
        all.insert(all.end(), it->second.begin(), it->second.end());
    }
    return all;
}

namespace {

void fill_shares(ReportRow& row, const std::vector<const VideoRecord*>& videos,
                 const Corpus& corpus) {
    for (const VideoRecord* video : videos) {
        for (const GroundTruthRecord& rec : corpus.ground_truth) {
            if (rec.video_id != video->video_id) continue;
            ++row.total;
            switch (apply_label_space(rec.candidate, *video)) {
                case Candidate::Rte: ++row.rte; break;
                case Candidate::Kk: ++row.kk; break;
                case Candidate::Ince: ++row.ince; break;
                case Candidate::OtherUndecided: ++row.other; break;
            }
        }
    }
}

SliceCells fill_cells(const std::vector<const VideoRecord*>& videos,
                      const ConditionOutcomes* condition) {
    SliceCells cells;
    if (!condition) return cells;
    std::vector<Outcome> outcomes;
    for (const VideoRecord* video : videos) {
        auto it = condition->by_video.find(video->video_id);
        if (it == condition->by_video.end()) continue;
        cells.present = true;
        outcomes.insert(outcomes.end(), it->second.begin(), it->second.end());
    }
    if (cells.present) {
        cells.candidate_metrics = compute_metrics(outcomes, Task::Candidate);
        cells.concept_metrics = compute_metrics(outcomes, Task::Concept);
    }
    return cells;
}

ReportRow build_row(std::string label, const std::vector<const VideoRecord*>& videos,
                    const Corpus& corpus, const ConditionOutcomes* raw,
                    const ConditionOutcomes* processed) {
    ReportRow row;
    row.label = std::move(label);
    fill_shares(row, videos, corpus);
    row.raw = fill_cells(videos, raw);
    row.processed = fill_cells(videos, processed);
    return row;
}

std::optional<Metrics> concept_condition_metrics(const std::vector<Outcome>* outcomes,
                                                 Concept value) {
    if (!outcomes) return std::nullopt;
    std::vector<Outcome> restricted;
    for (const Outcome& o : *outcomes) {
        if (o.truth.concept_label && *o.truth.concept_label == value) restricted.push_back(o);
    }
    if (restricted.empty()) return std::nullopt;
    return compute_metrics(restricted, Task::Concept);
}

} // namespace

EvalReport slice_report(const Corpus& corpus, const ConditionOutcomes* raw,
                        const ConditionOutcomes* processed) {
    EvalReport report;

    std::vector<const VideoRecord*> all_videos;
    std::vector<std::string> channel_order;
    std::map<std::string, std::vector<const VideoRecord*>> by_channel;
    for (const VideoRecord& video : corpus.videos) {
        all_videos.push_back(&video);
        if (!by_channel.count(video.channel)) channel_order.push_back(video.channel);
        by_channel[video.channel].push_back(&video);
        report.videos.push_back(
            build_row(video.location, {&video}, corpus, raw, processed));
    }
    for (const std::string& channel : channel_order) {
        report.channels.push_back(build_row(channel, by_channel[channel], corpus, raw, processed));
    }
    report.overall = build_row("All", all_videos, corpus, raw, processed);

    std::optional<std::vector<Outcome>> raw_all;
    std::optional<std::vector<Outcome>> processed_all;
    if (raw) raw_all = raw->flatten(corpus);
    if (processed) processed_all = processed->flatten(corpus);

    // Support columns come from the ground truth itself so they are
    // stable even when a batch is missing.
    for (const ConceptEntry& entry : corpus.inventory.entries) {
        ConceptReportRow row;
        row.value = entry.value;
        row.explanation = entry.explanation;
        for (const GroundTruthRecord& rec : corpus.ground_truth) {
            if (!rec.concept_label || *rec.concept_label != entry.value) continue;
            const VideoRecord* video = corpus.find_video(rec.video_id);
            Candidate candidate = video ? apply_label_space(rec.candidate, *video) : rec.candidate;
            switch (candidate) {
                case Candidate::Rte: ++row.support.rte; break;
                case Candidate::Kk: ++row.support.kk; break;
                case Candidate::Ince: ++row.support.ince; break;
                case Candidate::OtherUndecided: break;
            }
        }
        bool any_support = false;
        for (const GroundTruthRecord& rec : corpus.ground_truth) {
            if (rec.concept_label && *rec.concept_label == entry.value) {
                any_support = true;
                break;
            }
        }
        if (!any_support) continue;
        row.raw = concept_condition_metrics(raw_all ? &*raw_all : nullptr, entry.value);
        row.processed =
            concept_condition_metrics(processed_all ? &*processed_all : nullptr, entry.value);
        report.concepts.push_back(std::move(row));
    }

    for (const ConditionOutcomes* condition : {raw, processed}) {
        if (!condition) continue;
        const char* name = condition == raw ? "raw" : "processed";
        for (const std::string& video_id : condition->absent) {
            report.warnings.push_back("no batch for " + video_id + " (" + name + ")");
        }
    }
    return report;
}

namespace {

constexpr const char* kDash = "—"; // em dash for undefined/absent cells

std::string metric_cell(const SliceCells& cells, Task task, bool precision) {
    if (!cells.present) return kDash;
    const Metrics& m = task == Task::Candidate ? cells.candidate_metrics : cells.concept_metrics;
    if (precision) {
        if (!m.precision) return kDash;
        return format_fixed(*m.precision, 2);
    }
    if (m.zero_denominator) return kDash;
    return format_fixed(m.recall, 2);
}

std::string share_cell(int count, int total) {
    if (total == 0) return kDash;
    return std::to_string(percent_round(static_cast<double>(count) / total)) + "%";
}

void render_row(std::ostringstream& out, const ReportRow& row) {
    out << row.label << '\t' << row.total;
    out << '\t' << share_cell(row.rte, row.total);
    out << '\t' << share_cell(row.kk, row.total);
    out << '\t' << share_cell(row.ince, row.total);
    out << '\t' << metric_cell(row.raw, Task::Candidate, true);
    out << '\t' << metric_cell(row.processed, Task::Candidate, true);
    out << '\t' << metric_cell(row.raw, Task::Candidate, false);
    out << '\t' << metric_cell(row.processed, Task::Candidate, false);
    out << '\t' << metric_cell(row.raw, Task::Concept, true);
    out << '\t' << metric_cell(row.processed, Task::Concept, true);
    out << '\t' << metric_cell(row.raw, Task::Concept, false);
    out << '\t' << metric_cell(row.processed, Task::Concept, false);
    out << '\n';
}

std::string optional_metric_cell(const std::optional<Metrics>& m, bool precision) {
    if (!m) return kDash;
    if (precision) {
        if (!m->precision) return kDash;
        return format_fixed(*m->precision, 2);
    }
    if (m->zero_denominator) return kDash;
    return format_fixed(m->recall, 2);
}

} // namespace

std::string render_table1(const EvalReport& report) {
    std::ostringstream out;
    out << "Location\tAll\tRTE\tKK\tInce\tPrec\tPrec*\tRec\tRec*\tCoP\tCoP*\tCoR\tCoR*\n";
    for (const ReportRow& row : report.videos) render_row(out, row);
    for (const ReportRow& row : report.channels) render_row(out, row);
    render_row(out, report.overall);
    return out.str();
}

std::string render_table2(const EvalReport& report) {
    std::ostringstream out;
    out << "Concept\tExplanation\tRTE\tKK\tInce\tPrec\tPrec*\tRec\tRec*\n";
    for (const ConceptReportRow& row : report.concepts) {
        out << concept_table_name(row.value) << '\t' << row.explanation;
        out << '\t' << row.support.rte << '\t' << row.support.kk << '\t' << row.support.ince;
        out << '\t' << optional_metric_cell(row.raw, true);
        out << '\t' << optional_metric_cell(row.processed, true);
        out << '\t' << optional_metric_cell(row.raw, false);
        out << '\t' << optional_metric_cell(row.processed, false);
        out << '\n';
    }
    return out.str();
}

} // namespace streetpoll
