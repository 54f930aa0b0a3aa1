#pragma once

// Shared generators and brute-force oracles for the unit tests and the
// acceptance runner. Everything here recounts from first principles on
// purpose: the point is to disagree with the library if it drifts.

#include "streetpoll/analysis.hpp"
#include "streetpoll/eval.hpp"

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace streetpoll::testsupport {

// ---- random outcome sets --------------------------------------------------

inline Outcome random_outcome(std::mt19937_64& rng, bool allow_missing) {
    std::uniform_int_distribution<int> cand(0, 3);
    std::uniform_int_distribution<int> concept_draw(0, 13);
    std::uniform_int_distribution<int> pct(0, 99);
    std::uniform_int_distribution<int> tokens(4, 60);

    Outcome o;
    o.truth.video_id = "v";
    o.truth.candidate = static_cast<Candidate>(cand(rng));
    if (pct(rng) < 60) o.truth.concept_label = static_cast<Concept>(concept_draw(rng));
    o.segment_tokens = pct(rng) < 10 ? -1 : tokens(rng);

    int c = pct(rng);
    if (allow_missing && c < 20) o.candidate_outcome = OutcomeClass::Missing;
    else if (c < 45) o.candidate_outcome = OutcomeClass::Wrong;
    else o.candidate_outcome = OutcomeClass::Correct;

    if (!o.truth.concept_label) {
        o.concept_outcome = ConceptOutcome::NotApplicable;
    } else {
        int k = pct(rng);
        if (allow_missing && k < 20) o.concept_outcome = ConceptOutcome::Missing;
        else if (k < 45) o.concept_outcome = ConceptOutcome::Wrong;
        else o.concept_outcome = ConceptOutcome::Correct;
    }
    return o;
}

inline std::vector<Outcome> random_outcomes(std::mt19937_64& rng, int n, bool allow_missing) {
    std::vector<Outcome> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(random_outcome(rng, allow_missing));
    return out;
}

// ---- independent metric recount -------------------------------------------

struct Tally {
    int correct = 0;
    int wrong = 0;
    int missing = 0;
};

inline Tally recount(const std::vector<Outcome>& outcomes, Task task) {
    Tally t;
    for (const Outcome& o : outcomes) {
        if (task == Task::Candidate) {
            switch (o.candidate_outcome) {
                case OutcomeClass::Correct: ++t.correct; break;
                case OutcomeClass::Wrong: ++t.wrong; break;
                case OutcomeClass::Missing: ++t.missing; break;
            }
        } else {
            switch (o.concept_outcome) {
                case ConceptOutcome::Correct: ++t.correct; break;
                case ConceptOutcome::Wrong: ++t.wrong; break;
                case ConceptOutcome::Missing: ++t.missing; break;
                case ConceptOutcome::NotApplicable: break;
            }
        }
    }
    return t;
}

inline bool metrics_match(const Metrics& got, const Tally& t) {
    if (got.counts.tp != t.correct || got.counts.fp != t.wrong ||
        got.counts.fn != t.wrong + t.missing) {
        return false;
    }
    int scope = t.correct + t.wrong + t.missing;
    if (got.zero_denominator != (scope == 0)) return false;
    if (t.correct + t.wrong == 0) {
        if (got.precision) return false;
    } else {
        if (!got.precision ||
            *got.precision != static_cast<double>(t.correct) / (t.correct + t.wrong)) {
            return false;
        }
    }
    double want_recall = scope == 0 ? 0.0 : static_cast<double>(t.correct) / scope;
    return got.recall == want_recall;
}

// ---- random corpora with per-video outcomes --------------------------------

struct World {
    Corpus corpus;
    ConditionOutcomes raw;
    ConditionOutcomes processed;
    bool has_raw = true;
    bool has_processed = true;
};

inline World random_world(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> video_count(1, 4);
    std::uniform_int_distribution<int> respondent_count(1, 12);
    std::uniform_int_distribution<int> pct(0, 99);

    World world;
    for (int i = 0; i <= static_cast<int>(Concept::Faith); ++i) {
        Concept c = static_cast<Concept>(i);
        world.corpus.inventory.entries.push_back(
            {std::string(concept_name(c)), "x", c});
    }

    world.has_raw = pct(rng) >= 10;
    world.has_processed = !world.has_raw || pct(rng) >= 10;

    int videos = video_count(rng);
    for (int v = 0; v < videos; ++v) {
        VideoRecord video;
        video.video_id = "v" + std::to_string(v + 1);
        video.location = "loc" + std::to_string(v + 1);
        video.channel = pct(rng) < 50 ? "A" : "B";
        if (pct(rng) < 25) {
            video.label_space.overrides[Candidate::Ince] = Candidate::OtherUndecided;
        }
        world.corpus.videos.push_back(video);

        int n = respondent_count(rng);
        std::vector<Outcome> raw_outcomes, processed_outcomes;
        for (int r = 0; r < n; ++r) {
            Outcome o = random_outcome(rng, true);
            o.truth.video_id = video.video_id;
            o.truth.key = {r / 2 + 1, r % 2 + 1};

            GroundTruthRecord rec = o.truth;
            world.corpus.ground_truth.push_back(rec);

            // outcomes carry the post-override candidate, like match_batch
            o.truth.candidate = video.label_space.apply(o.truth.candidate);
            raw_outcomes.push_back(o);
            Outcome p = o;
            if (pct(rng) < 30) { // conditions disagree sometimes
                p.candidate_outcome =
                    p.candidate_outcome == OutcomeClass::Correct ? OutcomeClass::Wrong
                                                                 : OutcomeClass::Correct;
            }
            processed_outcomes.push_back(p);
        }
        if (pct(rng) < 20) world.raw.absent.insert(video.video_id);
        else world.raw.by_video[video.video_id] = raw_outcomes;
        if (pct(rng) < 20) world.processed.absent.insert(video.video_id);
        else world.processed.by_video[video.video_id] = processed_outcomes;
    }
    return world;
}

// ---- slice-report recount ---------------------------------------------------

inline std::string check_cells(const std::string& where, const SliceCells& cells,
                               const ConditionOutcomes* condition,
                               const std::vector<const VideoRecord*>& slice) {
    if (!condition) {
        if (cells.present) return where + ": cell present without a condition";
        return "";
    }
    std::vector<Outcome> collected;
    bool any = false;
    for (const VideoRecord* video : slice) {
        auto it = condition->by_video.find(video->video_id);
        if (it == condition->by_video.end()) continue;
        any = true;
        collected.insert(collected.end(), it->second.begin(), it->second.end());
    }
    if (cells.present != any) return where + ": present flag mismatch";
    if (!any) return "";
    if (!metrics_match(cells.candidate_metrics, recount(collected, Task::Candidate))) {
        return where + ": candidate metrics disagree with recount";
    }
    if (!metrics_match(cells.concept_metrics, recount(collected, Task::Concept))) {
        return where + ": concept metrics disagree with recount";
    }
    return "";
}

inline std::string check_row(const World& world, const ReportRow& row,
                             const std::vector<const VideoRecord*>& slice) {
    int total = 0, rte = 0, kk = 0, ince = 0, other = 0;
    for (const VideoRecord* video : slice) {
        for (const GroundTruthRecord& rec : world.corpus.ground_truth) {
            if (rec.video_id != video->video_id) continue;
            ++total;
            switch (video->label_space.apply(rec.candidate)) {
                case Candidate::Rte: ++rte; break;
                case Candidate::Kk: ++kk; break;
                case Candidate::Ince: ++ince; break;
                case Candidate::OtherUndecided: ++other; break;
            }
        }
    }
    if (row.total != total || row.rte != rte || row.kk != kk || row.ince != ince ||
        row.other != other) {
        return row.label + ": share counts disagree with recount";
    }
    std::string err = check_cells(row.label + "/raw", row.raw,
                                  world.has_raw ? &world.raw : nullptr, slice);
    if (!err.empty()) return err;
    return check_cells(row.label + "/processed", row.processed,
                       world.has_processed ? &world.processed : nullptr, slice);
}

// Recounts every slice of the report by hand; returns "" when everything
// matches, otherwise a description of the first mismatch.
inline std::string check_report(const World& world, const EvalReport& report) {
    const Corpus& corpus = world.corpus;
    if (report.videos.size() != corpus.videos.size()) return "video row count";

    for (size_t i = 0; i < corpus.videos.size(); ++i) {
        std::string err = check_row(world, report.videos[i], {&corpus.videos[i]});
        if (!err.empty()) return err;
    }

    std::vector<std::string> channel_order;
    std::map<std::string, std::vector<const VideoRecord*>> by_channel;
    for (const VideoRecord& video : corpus.videos) {
        if (!by_channel.count(video.channel)) channel_order.push_back(video.channel);
        by_channel[video.channel].push_back(&video);
    }
    if (report.channels.size() != channel_order.size()) return "channel row count";
    for (size_t i = 0; i < channel_order.size(); ++i) {
        if (report.channels[i].label != channel_order[i]) return "channel order";
        std::string err = check_row(world, report.channels[i], by_channel[channel_order[i]]);
        if (!err.empty()) return err;
    }

    std::vector<const VideoRecord*> all;
    for (const VideoRecord& video : corpus.videos) all.push_back(&video);
    std::string err = check_row(world, report.overall, all);
    if (!err.empty()) return err;

    // concept rows: support from the ground truth, metrics from the
    // flattened outcomes restricted to that true concept
    auto flatten = [&](const ConditionOutcomes& condition) {
        std::vector<Outcome> out;
        for (const VideoRecord& video : corpus.videos) {
            auto it = condition.by_video.find(video.video_id);
            if (it == condition.by_video.end()) continue;
            out.insert(out.end(), it->second.begin(), it->second.end());
        }
        return out;
    };
    std::vector<Outcome> raw_all = flatten(world.raw);
    std::vector<Outcome> processed_all = flatten(world.processed);

    size_t row_index = 0;
    for (const ConceptEntry& entry : corpus.inventory.entries) {
        ConceptSupport support;
        bool any = false;
        for (const GroundTruthRecord& rec : corpus.ground_truth) {
            if (!rec.concept_label || *rec.concept_label != entry.value) continue;
            any = true;
            const VideoRecord* video = corpus.find_video(rec.video_id);
            switch (video->label_space.apply(rec.candidate)) {
                case Candidate::Rte: ++support.rte; break;
                case Candidate::Kk: ++support.kk; break;
                case Candidate::Ince: ++support.ince; break;
                case Candidate::OtherUndecided: break;
            }
        }
        if (!any) continue;
        if (row_index >= report.concepts.size()) return "missing concept row";
        const ConceptReportRow& row = report.concepts[row_index++];
        if (row.value != entry.value) return "concept row order";
        if (!(row.support == support)) return "concept support recount";

        for (int side = 0; side < 2; ++side) {
            bool have = side == 0 ? world.has_raw : world.has_processed;
            const std::vector<Outcome>& pool = side == 0 ? raw_all : processed_all;
            const std::optional<Metrics>& cell = side == 0 ? row.raw : row.processed;
            std::vector<Outcome> restricted;
            for (const Outcome& o : pool) {
                if (o.truth.concept_label && *o.truth.concept_label == entry.value) {
                    restricted.push_back(o);
                }
            }
            if (!have || restricted.empty()) {
                if (cell) return "concept cell should be absent";
            } else if (!cell || !metrics_match(*cell, recount(restricted, Task::Concept))) {
                return "concept cell metrics disagree with recount";
            }
        }
    }
    if (row_index != report.concepts.size()) return "extra concept rows";

    int expected_warnings = 0;
    if (world.has_raw) expected_warnings += static_cast<int>(world.raw.absent.size());
    if (world.has_processed) expected_warnings += static_cast<int>(world.processed.absent.size());
    if (static_cast<int>(report.warnings.size()) != expected_warnings) {
        return "warning count";
    }
    return "";
}

// ---- sweep recount -----------------------------------------------------------

inline std::string check_sweep_cell(const std::vector<Outcome>& outcomes, int min_tokens,
                                    const SweepCell& cell) {
    std::vector<Outcome> kept;
    for (const Outcome& o : outcomes) {
        if (min_tokens <= 0 || o.segment_tokens >= min_tokens) kept.push_back(o);
    }
    if (cell.respondents_retained != static_cast<int>(kept.size())) {
        return "retained count disagrees with recount";
    }
    Tally cand = recount(kept, Task::Candidate);
    if (!metrics_match(cell.candidate_metrics, cand)) {
        return "sweep candidate metrics disagree with recount";
    }
    if (!metrics_match(cell.concept_metrics, recount(kept, Task::Concept))) {
        return "sweep concept metrics disagree with recount";
    }
    double predicted = kept.empty()
                           ? 0.0
                           : static_cast<double>(cand.correct + cand.wrong) / kept.size();
    if (cell.predicted_fraction != predicted) return "predicted fraction";
    return "";
}

// ---- saturation fixture --------------------------------------------------------

// 60 interviews, 28 distinct strings, the last new string at interview 45,
// and no 15-interview lull before that.
inline std::vector<std::vector<std::string>> saturation_fixture() {
    std::vector<std::vector<std::string>> interviews;
    int next_id = -1;
    for (int i = 1; i <= 60; ++i) {
        // 23 odd positions up to 45 plus the first 5 even ones: 28 total
        bool fresh = i <= 45 && (i % 2 == 1 || i <= 10);
        if (fresh) interviews.push_back({"c" + std::to_string(++next_id)});
        else interviews.push_back({"c0"});
    }
    return interviews;
}

} // namespace streetpoll::testsupport
