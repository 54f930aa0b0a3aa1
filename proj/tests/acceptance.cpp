// Acceptance runner: one line per criterion, nonzero exit if any fails.
// Everything runs offline against the bundled demo corpus, generated
// fixtures and the brute-force oracles in support.hpp.

#include "streetpoll/analysis.hpp"
#include "streetpoll/annotate.hpp"
#include "streetpoll/backend.hpp"
#include "streetpoll/captions.hpp"
#include "streetpoll/cli.hpp"
#include "streetpoll/corpus.hpp"
#include "streetpoll/eval.hpp"
#include "streetpoll/merge_map.hpp"
#include "streetpoll/prompt.hpp"
#include "streetpoll/text.hpp"

#include "support.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace streetpoll;
using namespace streetpoll::testsupport;

namespace {

const std::string kDemoDir = DEMO_CORPUS_DIR;
const std::string kGoldenDir = GOLDEN_DIR;

std::string fixed2(double v) { return format_fixed(v, 2); }

// ---- shared demo-corpus annotation state ----

struct DemoState {
    Corpus corpus;
    LoadedCaptions captions;
    SynonymTable synonyms;
    MergeMap merge;
    std::vector<PromptInstance> prompts; // one per video, processed captions

    ParseContext ctx() const { return {&synonyms, &merge, &corpus.inventory, false}; }

    // Annotates every video with the mock backend and aligns against the
    // ground truth; outcomes come back in corpus video order.
    ConditionOutcomes annotate_all(double error_rate, std::uint64_t seed) const {
        ConditionOutcomes outcomes;
        for (size_t i = 0; i < corpus.videos.size(); ++i) {
            const VideoRecord& video = corpus.videos[i];
            MockBackend backend(captions.processed.at(video.video_id), error_rate,
                                seed ^ fnv1a(video.video_id));
            AnnotationBatch batch =
                annotate_video(prompts[i], backend, ctx(), video.video_id, 8);
            MatchResult match =
                match_batch(batch, corpus.truth_for(video.video_id), video, nullptr);
            outcomes.by_video[video.video_id] = std::move(match.outcomes);
        }
        return outcomes;
    }
};

DemoState load_demo() {
    DemoState state;
    state.corpus = load_corpus(kDemoDir);
    state.captions = load_captions(state.corpus);
    state.synonyms = SynonymTable::defaults();
    if (!state.corpus.merge_map_path.empty()) {
        state.merge = load_merge_map(state.corpus.merge_map_path);
    }
    for (const VideoRecord& video : state.corpus.videos) {
        state.prompts.push_back(build_prompt(state.captions.processed.at(video.video_id),
                                             state.corpus.inventory, english_template()));
    }
    return state;
}

// Failure detail or empty string; the runner turns it into the PASS/FAIL line.
using Verdict = std::string;

// ---- 1: headline precision/recall fixtures ----

Verdict aggregate_fixtures() {
    Metrics big = metrics_from_counts({313, 9, 12}); // 313 correct, 9 wrong, 3 missing of 325
    if (!big.precision || *big.precision != 313.0 / 322.0 || big.recall != 313.0 / 325.0) {
        return "313/9/3 fixture produced wrong fractions";
    }
    if (fixed2(*big.precision) != "0.97" || fixed2(big.recall) != "0.96") {
        return "313/9/3 fixture rounds to " + fixed2(*big.precision) + "/" + fixed2(big.recall);
    }
    Metrics small = metrics_from_counts({16, 2, 14}); // 16 correct, 2 wrong, 12 missing of 30
    if (!small.precision || *small.precision != 16.0 / 18.0 || small.recall != 16.0 / 30.0) {
        return "16/2/12 fixture produced wrong fractions";
    }
    if (fixed2(*small.precision) != "0.89" || fixed2(small.recall) != "0.53") {
        return "16/2/12 fixture rounds to " + fixed2(*small.precision) + "/" + fixed2(small.recall);
    }
    return "";
}

// ---- 2: per-concept table on the demo corpus ----

Verdict concept_table(const DemoState& demo, const ConditionOutcomes& clean) {
    EvalReport report = slice_report(demo.corpus, nullptr, &clean);
    const ConceptReportRow* justice = nullptr;
    const ConceptReportRow* leadership = nullptr;
    for (const ConceptReportRow& row : report.concepts) {
        if (row.value == Concept::Justice) justice = &row;
        if (row.value == Concept::Leadership) leadership = &row;
    }
    if (!justice || !leadership) return "concept rows missing from the report";
    if (!(justice->support == ConceptSupport{0, 3, 0})) {
        return "Justice support is " + std::to_string(justice->support.total());
    }
    if (!justice->processed || fixed2(*justice->processed->precision) != "1.00" ||
        fixed2(justice->processed->recall) != "1.00") {
        return "Justice metrics are not 1.00/1.00";
    }
    if (!(leadership->support == ConceptSupport{34, 8, 2})) {
        return "Leadership support is " + std::to_string(leadership->support.rte) + "/" +
               std::to_string(leadership->support.kk) + "/" +
               std::to_string(leadership->support.ince);
    }
    return "";
}

// ---- 3: slice report vs brute-force recount ----

Verdict report_oracle() {
    std::mt19937_64 rng(52023);
    for (int trial = 0; trial < 1000; ++trial) {
        World world = random_world(rng);
        EvalReport report = slice_report(world.corpus, world.has_raw ? &world.raw : nullptr,
                                         world.has_processed ? &world.processed : nullptr);
        std::string err = check_report(world, report);
        if (!err.empty()) return "trial " + std::to_string(trial) + ": " + err;
    }
    return "";
}

// ---- 4: missing predictions hurt recall, never precision ----

Verdict missing_semantics() {
    std::mt19937_64 rng(1423);
    std::uniform_int_distribution<int> size(1, 60);
    for (int trial = 0; trial < 1000; ++trial) {
        bool allow_missing = trial % 2 == 0;
        std::vector<Outcome> outcomes = random_outcomes(rng, size(rng), allow_missing);
        for (Task task : {Task::Candidate, Task::Concept}) {
            Metrics m = compute_metrics(outcomes, task);
            Tally t = recount(outcomes, task);
            if (!metrics_match(m, t)) {
                return "trial " + std::to_string(trial) + ": counts disagree with recount";
            }
            if (m.precision && *m.precision < m.recall) {
                return "trial " + std::to_string(trial) + ": precision below recall";
            }
            if (t.missing == 0 && m.precision && *m.precision != m.recall) {
                return "trial " + std::to_string(trial) + ": precision != recall without MISSING";
            }
        }
    }
    return "";
}

// ---- 5: caption parser round trips ----

std::string random_word(std::mt19937& rng) {
    std::uniform_int_distribution<int> len(1, 8);
    std::uniform_int_distribution<int> ch(0, 25);
    std::string w;
    int n = len(rng);
    for (int i = 0; i < n; ++i) w.push_back(static_cast<char>('a' + ch(rng)));
    return w;
}

std::string random_text(std::mt19937& rng) {
    std::uniform_int_distribution<int> words(1, 7);
    std::string text;
    int n = words(rng);
    for (int i = 0; i < n; ++i) {
        if (i) text.push_back(' ');
        text += random_word(rng);
    }
    return text;
}

RawCaptionDocument random_raw_doc(std::mt19937& rng) {
    std::uniform_int_distribution<int> cues(1, 12);
    std::uniform_int_distribution<int> gap(0, 4000);
    RawCaptionDocument doc;
    doc.video_id = "gen";
    int t = 0;
    int n = cues(rng);
    for (int i = 0; i < n; ++i) {
        t += gap(rng);
        doc.cues.push_back({t, random_text(rng)});
    }
    return doc;
}

ProcessedTranscript random_processed_doc(std::mt19937& rng) {
    std::uniform_int_distribution<int> segments(1, 5);
    std::uniform_int_distribution<int> citizens(1, 3);
    std::uniform_int_distribution<int> coin(0, 1);
    ProcessedTranscript t;
    t.video_id = "gen";
    int clock = 0;
    int n = segments(rng);
    for (int s = 0; s < n; ++s) {
        InterviewSegment segment;
        segment.utterances.push_back({0, random_text(rng), clock += 3});
        int k = citizens(rng);
        for (int c = 1; c <= k; ++c) {
            std::optional<int> start;
            if (coin(rng)) start = clock += 2;
            segment.utterances.push_back({c, random_text(rng), start});
        }
        t.segments.push_back(std::move(segment));
    }
    return t;
}

// Blank lines and CRLF endings are legal noise in both formats.
std::string roughen(const std::string& text) {
    std::string out;
    for (const std::string& line : split_lines(text)) {
        out += line;
        out += "\r\n\n";
    }
    return out;
}

Verdict caption_round_trips() {
    std::mt19937 rng(60314);
    for (int trial = 0; trial < 500; ++trial) {
        RawCaptionDocument doc = random_raw_doc(rng);
        std::string rendered = render_raw(doc);
        RawCaptionDocument back = parse_raw(rendered, doc.video_id);
        if (!(back == doc)) return "raw trial " + std::to_string(trial) + ": parse of render";
        if (render_raw(parse_raw(roughen(rendered), doc.video_id)) != rendered) {
            return "raw trial " + std::to_string(trial) + ": render of parse not normalized";
        }
    }
    for (int trial = 0; trial < 500; ++trial) {
        ProcessedTranscript doc = random_processed_doc(rng);
        std::string rendered = render_processed(doc);
        ProcessedTranscript back = parse_processed(rendered, doc.video_id);
        if (!(back == doc)) return "processed trial " + std::to_string(trial) + ": parse of render";
        if (render_processed(parse_processed(roughen(rendered), doc.video_id)) != rendered) {
            return "processed trial " + std::to_string(trial) +
                   ": render of parse not normalized";
        }
    }
    return "";
}

// ---- 6: frozen prompt golden ----

Verdict prompt_golden(const DemoState& demo) {
    PromptInstance prompt = build_prompt(demo.captions.raw.at("v01"), demo.corpus.inventory,
                                         english_template());
    std::string golden = read_file(kGoldenDir + "/prompt_v01_raw.txt");
    if (prompt.final_text != golden) return "assembled prompt differs from the frozen file";
    for (const char* phrase : {"How many citizens were interviewed in total?",
                               "do not indicate the votes of the citizens"}) {
        if (golden.find(phrase) == std::string::npos) {
            return std::string("golden lost the phrase `") + phrase + "`";
        }
    }
    return "";
}

// ---- 7: continuation protocol ----

// Declares `total` respondents and hands out `per_turn` rows per reply.
class DripBackend final : public Backend {
public:
    DripBackend(int total, int per_turn) : total_(total), per_turn_(per_turn) {}

    std::string complete(const std::vector<ChatTurn>& conversation) override {
        int already = 0;
        for (const ChatTurn& turn : conversation) {
            if (turn.role == ChatTurn::Role::Assistant) ++already;
        }
        std::ostringstream out;
        if (already == 0) out << "Answer 1: " << total_ << "\n\n";
        int from = already * per_turn_ + 1;
        int to = std::min(total_, from + per_turn_ - 1);
        for (int i = from; i <= to; ++i) {
            out << "Citizen " << i << ", RTE, lider, leadership\n";
        }
        return out.str();
    }
    std::string id() const override { return "drip"; }

private:
    int total_;
    int per_turn_;
};

// Declares ten respondents but repeats the same two rows forever.
class StuckBackend final : public Backend {
public:
    std::string complete(const std::vector<ChatTurn>&) override {
        return "Answer 1: 10\n\nCitizen 1, RTE, x, other\nCitizen 2, KK, y, other\n";
    }
    std::string id() const override { return "stuck"; }
};

Verdict continuation_protocol(const DemoState& demo) {
    PromptInstance prompt = demo.prompts.front();
    for (int total = 1; total <= 20; ++total) {
        for (int per_turn = 1; per_turn <= 5; ++per_turn) {
            DripBackend backend(total, per_turn);
            AnnotationBatch batch =
                annotate_video(prompt, backend, demo.ctx(), "v", /*max_continuations=*/50);
            int want = (total + per_turn - 1) / per_turn;
            if (batch.turns_used != want || static_cast<int>(batch.rows.size()) != total) {
                return "N=" + std::to_string(total) + " k=" + std::to_string(per_turn) +
                       " used " + std::to_string(batch.turns_used) + " turns";
            }
        }
    }
    for (int max_continuations : {0, 2, 5}) {
        StuckBackend backend;
        try {
            annotate_video(prompt, backend, demo.ctx(), "v", max_continuations);
            return "stuck backend was not flagged incomplete";
        } catch (const AnnotateError& e) {
            if (e.kind() != AnnotateError::Kind::Incomplete) return "wrong error kind";
            if (!e.partial() || e.partial()->turns_used != 1 + max_continuations) {
                return "incomplete after the wrong number of turns";
            }
            if (e.partial()->rows.size() != 2 || e.partial()->declared_count != 10) {
                return "partial batch lost rows";
            }
        }
    }
    return "";
}

// ---- 8: saturation fixture ----

Verdict saturation() {
    SaturationCurve curve = saturation_curve(saturation_fixture());
    if (curve.points.size() != 60) return "curve has the wrong length";
    if (curve.points.back() != std::pair<int, int>{60, 28}) {
        return "curve(60) = " + std::to_string(curve.points.back().second);
    }
    std::optional<int> stable = stable_point(curve, 15);
    if (stable != 45) {
        return "stable point = " + (stable ? std::to_string(*stable) : std::string("none"));
    }
    return "";
}

// ---- 9: token-threshold sweep vs brute force ----

Verdict sweep_oracle() {
    std::mt19937_64 rng(90125);
    std::uniform_int_distribution<int> size(0, 60);
    std::uniform_int_distribution<int> extra(1, 80);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<Outcome> outcomes = random_outcomes(rng, size(rng), true);

        SweepCell unfiltered = sweep_cell(outcomes, 0);
        if (unfiltered.respondents_retained != static_cast<int>(outcomes.size()) ||
            unfiltered.candidate_metrics != compute_metrics(outcomes, Task::Candidate) ||
            unfiltered.concept_metrics != compute_metrics(outcomes, Task::Concept)) {
            return "trial " + std::to_string(trial) + ": threshold 0 filtered something";
        }

        std::vector<int> grid = decile_thresholds(outcomes);
        grid.push_back(extra(rng));
        int last_retained = unfiltered.respondents_retained;
        int last_threshold = 0;
        for (int threshold : grid) {
            SweepCell cell = sweep_cell(outcomes, threshold);
            std::string err = check_sweep_cell(outcomes, threshold, cell);
            if (!err.empty()) return "trial " + std::to_string(trial) + ": " + err;
            if (threshold >= last_threshold && cell.respondents_retained > last_retained) {
                return "trial " + std::to_string(trial) + ": retained grew with the threshold";
            }
            if (threshold >= last_threshold) {
                last_retained = cell.respondents_retained;
                last_threshold = threshold;
            }
        }
    }
    return "";
}

// ---- 10: mock backend error statistics ----

Verdict mock_statistics(const DemoState& demo, const ConditionOutcomes& clean) {
    std::vector<Outcome> all = clean.flatten(demo.corpus);
    Metrics m = compute_metrics(all, Task::Candidate);
    if (!m.precision || *m.precision != 1.0 || m.recall != 1.0) {
        return "error rate 0 is not exact";
    }

    double error_sum = 0.0;
    const int seeds = 30;
    for (int seed = 1; seed <= seeds; ++seed) {
        ConditionOutcomes noisy = demo.annotate_all(0.1, static_cast<std::uint64_t>(seed));
        Metrics nm = compute_metrics(noisy.flatten(demo.corpus), Task::Candidate);
        if (!nm.precision) return "noisy run predicted nothing";
        error_sum += 1.0 - *nm.precision;
    }
    double mean = error_sum / seeds;
    if (std::abs(mean - 0.10) > 0.04) {
        return "mean candidate error " + format_fixed(mean, 3) + " outside 0.10 +/- 0.04";
    }
    return "";
}

// ---- 11: hermeticity ----

Verdict hermeticity() {
    if (!test_mode()) return "test mode is off";
    BackendConfig config;
    config.kind = BackendConfig::Kind::Live;
    config.endpoint = "https://example.invalid/v1/chat/completions";
    try {
        LiveBackend backend{config};
        return "live backend construction was allowed";
    } catch (const std::exception& e) {
        if (std::string(e.what()).find("test mode") == std::string::npos) {
            return std::string("unexpected error: ") + e.what();
        }
    }
    try {
        fetch_source("https://example.invalid/captions.txt");
        return "url fetch was allowed";
    } catch (const std::exception& e) {
        if (std::string(e.what()).find("test mode") == std::string::npos) {
            return std::string("unexpected error: ") + e.what();
        }
    }
    return "";
}

} // namespace

int main() {
    set_test_mode(true); // before anything else: no run below may touch the network

    DemoState demo = load_demo();
    ConditionOutcomes clean = demo.annotate_all(0.0, 2023);

    struct Criterion {
        const char* label;
        Verdict verdict;
    };
    const Criterion criteria[] = {
        {"1. aggregate precision/recall fixtures round to 0.97/0.96 and 0.89/0.53",
         aggregate_fixtures()},
        {"2. per-concept demo table: Justice 3 at 1.00/1.00, Leadership split 34/8/2",
         concept_table(demo, clean)},
        {"3. slice report equals a brute-force recount on 1000 random corpora",
         report_oracle()},
        {"4. missing predictions lower recall, never precision (1000 outcome sets)",
         missing_semantics()},
        {"5. caption parsers round-trip 500 generated documents per format",
         caption_round_trips()},
        {"6. assembled interview prompt is byte-identical to the frozen golden",
         prompt_golden(demo)},
        {"7. continuation protocol uses exactly ceil(N/k) turns and bounds retries",
         continuation_protocol(demo)},
        {"8. saturation fixture: 28 distinct concepts, stable point at 45",
         saturation()},
        {"9. threshold sweep matches brute force; threshold 0 is unfiltered",
         sweep_oracle()},
        {"10. mock backend: error 0 is exact, error 0.1 lands within 0.10 +/- 0.04",
         mock_statistics(demo, clean)},
        {"11. test mode forbids live backends and url fetches",
         hermeticity()},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        if (criterion.verdict.empty()) {
            std::cout << "PASS  " << criterion.label << "\n";
        } else {
            ++failed;
            std::cout << "FAIL  " << criterion.label << " -- " << criterion.verdict << "\n";
        }
    }
    std::cout << (std::size(criteria) - failed) << "/" << std::size(criteria)
              << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
