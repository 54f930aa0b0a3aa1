#include "streetpoll/cli.hpp"

#include "streetpoll/analysis.hpp"
#include "streetpoll/eval.hpp"
#include "streetpoll/kvfile.hpp"
#include "streetpoll/prompt.hpp"
#include "streetpoll/text.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <thread>

namespace streetpoll {

namespace fs = std::filesystem;

std::optional<Condition> condition_from_name(std::string_view name) {
    std::string key = fold(trim(name));
    if (key == "raw") return Condition::Raw;
    if (key == "processed") return Condition::Processed;
    if (key == "both") return Condition::Both;
    return std::nullopt;
}

namespace {

std::string_view condition_name(Condition c) {
    return c == Condition::Raw ? "raw" : "processed";
}

std::vector<Condition> conditions_of(const RunConfig& config) {
    switch (config.condition) {
        case Condition::Raw: return {Condition::Raw};
        case Condition::Processed: return {Condition::Processed};
        case Condition::Both: return {Condition::Raw, Condition::Processed};
    }
    return {};
}

bool parse_bool(const std::string& value, const std::string& key) {
    std::string v = fold(trim(value));
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::runtime_error("config: " + key + " wants a boolean, got `" + value + "`");
}

double parse_double(const std::string& value, const std::string& key) {
    try {
        size_t used = 0;
        double v = std::stod(value, &used);
        if (used == trim(value).size()) return v;
    } catch (...) {
    }
    throw std::runtime_error("config: " + key + " wants a number, got `" + value + "`");
}

long long parse_integer(const std::string& value, const std::string& key) {
    std::optional<long long> v = parse_int(trim(value));
    if (!v) throw std::runtime_error("config: " + key + " wants an integer, got `" + value + "`");
    return *v;
}

void apply_top_entry(RunConfig& config, const KvEntry& entry) {
    if (entry.key == "corpus_root") config.corpus_root = entry.value;
    else if (entry.key == "output_dir") config.output_dir = entry.value;
    else if (entry.key == "locale") config.locale = entry.value;
    else if (entry.key == "condition") {
        std::optional<Condition> c = condition_from_name(entry.value);
        if (!c) throw std::runtime_error("config: unknown condition `" + entry.value + "`");
        config.condition = *c;
    } else if (entry.key == "seed") {
        config.seed = static_cast<std::uint64_t>(parse_integer(entry.value, entry.key));
    } else if (entry.key == "force") {
        config.force = parse_bool(entry.value, entry.key);
    } else if (entry.key == "strict") {
        config.strict_parse = parse_bool(entry.value, entry.key);
    } else if (entry.key == "template") {
        config.template_path = entry.value;
    } else if (entry.key == "synonyms") {
        config.synonyms_path = entry.value;
    } else {
        throw std::runtime_error("config line " + std::to_string(entry.line) + ": unknown key `" +
                                 entry.key + "`");
    }
}

void apply_backend_entry(BackendConfig& backend, const KvEntry& entry) {
    if (entry.key == "kind") {
        std::string v = fold(trim(entry.value));
        if (v == "mock") backend.kind = BackendConfig::Kind::Mock;
        else if (v == "replay") backend.kind = BackendConfig::Kind::Replay;
        else if (v == "live") backend.kind = BackendConfig::Kind::Live;
        else throw std::runtime_error("config: unknown backend kind `" + entry.value + "`");
    } else if (entry.key == "endpoint") {
        backend.endpoint = entry.value;
    } else if (entry.key == "model") {
        backend.model_name = entry.value;
    } else if (entry.key == "credential_env") {
        backend.credential_env = entry.value;
    } else if (entry.key == "cassette") {
        backend.cassette_path = entry.value;
    } else if (entry.key == "max_continuations") {
        backend.max_continuations = static_cast<int>(parse_integer(entry.value, entry.key));
        if (backend.max_continuations < 0) {
            throw std::runtime_error("config: max_continuations must be >= 0");
        }
    } else if (entry.key == "rate_limit_per_min") {
        backend.rate_limit_per_min = parse_double(entry.value, entry.key);
    } else if (entry.key == "concurrency_cap") {
        backend.concurrency_cap = static_cast<int>(parse_integer(entry.value, entry.key));
        if (backend.concurrency_cap < 1) {
            throw std::runtime_error("config: concurrency_cap must be >= 1");
        }
    } else if (entry.key == "mock_error_rate") {
        backend.mock_error_rate = parse_double(entry.value, entry.key);
    } else {
        throw std::runtime_error("config line " + std::to_string(entry.line) +
                                 ": unknown backend key `" + entry.key + "`");
    }
}

} // namespace

RunConfig load_run_config(const std::string& path) {
    KvFile file = parse_kvfile(read_file(path));
    RunConfig config;
    for (const KvEntry& entry : file.top.entries) apply_top_entry(config, entry);
    for (const KvSection& section : file.sections) {
        if (section.name != "backend") {
            throw std::runtime_error("config line " + std::to_string(section.line) +
                                     ": unknown section [" + section.name + "]");
        }
        for (const KvEntry& entry : section.entries) apply_backend_entry(config.backend, entry);
    }
    return config;
}

// ---- shared plumbing ----

namespace {

void ensure_run_dir(const fs::path& dir, bool force) {
    if (dir.empty()) throw std::runtime_error("no output_dir configured");
    if (fs::exists(dir)) {
        if (!fs::is_directory(dir)) {
            throw std::runtime_error(dir.string() + " exists and is not a directory");
        }
        if (!force && !fs::is_empty(dir)) {
            throw std::runtime_error(dir.string() + " is not empty (pass --force to reuse)");
        }
    } else {
        fs::create_directories(dir);
    }
}

PromptTemplate resolve_template(const RunConfig& config, const Corpus& corpus) {
    if (!config.template_path.empty()) {
        return load_template(config.template_path, config.locale);
    }
    if (config.locale == "en") return english_template();
    fs::path local = corpus.root / "templates" / (config.locale + ".txt");
    if (fs::exists(local)) return load_template(local.string(), config.locale);
    throw std::runtime_error("no template for locale `" + config.locale + "` (looked for " +
                             local.string() + ")");
}

// Owns the tables a ParseContext points into; `context()` is only valid
// while this object and the corpus stay alive and in place.
struct PipelineContext {
    SynonymTable synonyms;
    MergeMap merge;
    const Corpus* corpus = nullptr;
    bool strict = false;

    void init(const RunConfig& config, const Corpus& owner) {
        synonyms = SynonymTable::defaults();
        if (!config.synonyms_path.empty()) synonyms.load(config.synonyms_path);
        if (!owner.merge_map_path.empty()) merge = load_merge_map(owner.merge_map_path);
        corpus = &owner;
        strict = config.strict_parse;
    }

    ParseContext context() const { return {&synonyms, &merge, &corpus->inventory, strict}; }
};

std::map<int, int> segment_token_map(const ProcessedTranscript& transcript) {
    std::map<int, int> tokens;
    for (size_t i = 0; i < transcript.segments.size(); ++i) {
        tokens[static_cast<int>(i) + 1] = count_tokens(transcript.segments[i]);
    }
    return tokens;
}

std::string conversation_text(const std::vector<ChatTurn>& conversation) {
    std::string out;
    for (const ChatTurn& turn : conversation) {
        out += turn.role == ChatTurn::Role::User ? "=== user ===\n" : "=== assistant ===\n";
        out += turn.text;
        if (out.empty() || out.back() != '\n') out += '\n';
    }
    return out;
}

std::string batch_filename(const std::string& video_id, Condition condition) {
    return video_id + "." + std::string(condition_name(condition)) + ".json";
}

int validation_failure(std::ostream& err, const std::vector<std::string>& findings) {
    for (const std::string& finding : findings) err << finding << "\n";
    return 1;
}

} // namespace

// ---- validate ----

int cmd_validate(const fs::path& corpus_root, std::ostream& out, std::ostream& err) {
    Corpus corpus;
    try {
        corpus = load_corpus(corpus_root);
    } catch (const CorpusValidationError& e) {
        return validation_failure(err, e.findings());
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }

    std::vector<std::string> findings;
    LoadedCaptions captions;
    try {
        captions = load_captions(corpus);
    } catch (const CaptionParseError& e) {
        err << e.what() << "\n";
        return 1;
    }
    findings = cross_validate(corpus, captions);
    if (!findings.empty()) return validation_failure(err, findings);

    std::set<std::string> channels;
    for (const VideoRecord& video : corpus.videos) channels.insert(video.channel);
    out << corpus.videos.size() << " videos, " << corpus.ground_truth.size() << " respondents, "
        << channels.size() << " channels\n";
    return 0;
}

// ---- process ----

int cmd_process(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        Corpus corpus = load_corpus(config.corpus_root);
        LoadedCaptions captions = load_captions(corpus);
        ensure_run_dir(config.output_dir, config.force);
        int written = 0;
        for (const VideoRecord& video : corpus.videos) {
            if (auto it = captions.raw.find(video.video_id); it != captions.raw.end()) {
                write_file((config.output_dir / (video.video_id + ".raw.txt")).string(),
                           render_raw(it->second));
                ++written;
            }
            if (auto it = captions.processed.find(video.video_id); it != captions.processed.end()) {
                write_file((config.output_dir / (video.video_id + ".processed.txt")).string(),
                           render_processed(it->second));
                ++written;
            }
        }
        out << written << " caption files re-rendered into " << config.output_dir.string() << "\n";
        return 0;
    } catch (const CorpusValidationError& e) {
        return validation_failure(err, e.findings());
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

// ---- prompt ----

namespace {

PromptInstance job_prompt(const VideoRecord& video, Condition condition,
                          const LoadedCaptions& captions, const Corpus& corpus,
                          const PromptTemplate& tmpl) {
    if (condition == Condition::Raw) {
        auto it = captions.raw.find(video.video_id);
        if (it == captions.raw.end()) {
            throw std::runtime_error(video.video_id + ": no raw captions");
        }
        return build_prompt(it->second, corpus.inventory, tmpl);
    }
    auto it = captions.processed.find(video.video_id);
    if (it == captions.processed.end()) {
        throw std::runtime_error(video.video_id + ": no processed captions");
    }
    return build_prompt(it->second, corpus.inventory, tmpl);
}

} // namespace

int cmd_prompt(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        Corpus corpus = load_corpus(config.corpus_root);
        LoadedCaptions captions = load_captions(corpus);
        PromptTemplate tmpl = resolve_template(config, corpus);
        ensure_run_dir(config.output_dir, config.force);
        fs::create_directories(config.output_dir / "prompts");
        int written = 0;
        for (const VideoRecord& video : corpus.videos) {
            for (Condition condition : conditions_of(config)) {
                PromptInstance prompt = job_prompt(video, condition, captions, corpus, tmpl);
                fs::path path = config.output_dir / "prompts" /
                                (video.video_id + "." + std::string(condition_name(condition)) +
                                 ".txt");
                write_file(path.string(), prompt.final_text);
                ++written;
            }
        }
        out << written << " prompts written\n";
        return 0;
    } catch (const CorpusValidationError& e) {
        return validation_failure(err, e.findings());
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

// ---- annotate ----

namespace {

struct Job {
    const VideoRecord* video = nullptr;
    Condition condition = Condition::Processed;
};

struct JobResult {
    std::string video_id;
    Condition condition = Condition::Processed;
    bool ok = false;
    int rows = 0;
    int turns = 0;
    std::string error;
};

} // namespace

int cmd_annotate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    Corpus corpus;
    LoadedCaptions captions;
    PromptTemplate tmpl;
    std::optional<PipelineContext> pipeline;
    try {
        corpus = load_corpus(config.corpus_root);
        captions = load_captions(corpus);
        tmpl = resolve_template(config, corpus);
        pipeline.emplace();
        pipeline->init(config, corpus);
        ensure_run_dir(config.output_dir, config.force);
        fs::create_directories(config.output_dir / "prompts");
        fs::create_directories(config.output_dir / "conversations");
        fs::create_directories(config.output_dir / "batches");
    } catch (const CorpusValidationError& e) {
        return validation_failure(err, e.findings());
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }

    // Shared backend for replay/live; mock builds one per video so each
    // gets its own transcript and derived seed.
    std::unique_ptr<Backend> shared;
    try {
        if (config.backend.kind == BackendConfig::Kind::Replay) {
            if (config.backend.cassette_path.empty()) {
                throw std::runtime_error("replay backend needs a cassette path");
            }
            shared = std::make_unique<ReplayBackend>(Cassette::load(config.backend.cassette_path));
        } else if (config.backend.kind == BackendConfig::Kind::Live) {
            shared = std::make_unique<LiveBackend>(config.backend);
        }
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 2;
    }

    std::vector<Job> jobs;
    for (const VideoRecord& video : corpus.videos) {
        for (Condition condition : conditions_of(config)) {
            jobs.push_back({&video, condition});
        }
    }

    std::vector<JobResult> results(jobs.size());
    std::atomic<size_t> next{0};

    auto run_job = [&](size_t index) {
        const Job& job = jobs[index];
        JobResult& result = results[index];
        result.video_id = job.video->video_id;
        result.condition = job.condition;
        std::string stem =
            job.video->video_id + "." + std::string(condition_name(job.condition));
        try {
            PromptInstance prompt = job_prompt(*job.video, job.condition, captions, corpus, tmpl);
            write_file((config.output_dir / "prompts" / (stem + ".txt")).string(),
                       prompt.final_text);

            std::unique_ptr<Backend> own;
            Backend* backend = shared.get();
            if (config.backend.kind == BackendConfig::Kind::Mock) {
                auto it = captions.processed.find(job.video->video_id);
                if (it == captions.processed.end()) {
                    throw std::runtime_error(job.video->video_id +
                                             ": mock backend needs processed captions");
                }
                own = std::make_unique<MockBackend>(it->second, config.backend.mock_error_rate,
                                                    config.seed ^ fnv1a(job.video->video_id));
                backend = own.get();
            }

            std::vector<ChatTurn> conversation;
            try {
                AnnotationBatch batch =
                    annotate_video(prompt, *backend, pipeline->context(), job.video->video_id,
                                   config.backend.max_continuations, &conversation);
                write_file((config.output_dir / "conversations" / (stem + ".txt")).string(),
                           conversation_text(conversation));
                write_file((config.output_dir / "batches" / (stem + ".json")).string(),
                           batch_to_json(batch));
                if (config.backend.kind == BackendConfig::Kind::Mock &&
                    !config.backend.cassette_path.empty()) {
                    record_conversation(config.backend.cassette_path, conversation);
                }
                result.ok = true;
                result.rows = static_cast<int>(batch.rows.size());
                result.turns = batch.turns_used;
            } catch (const AnnotateError& e) {
                write_file((config.output_dir / "conversations" / (stem + ".txt")).string(),
                           conversation_text(conversation));
                if (e.partial()) {
                    write_file((config.output_dir / "batches" / (stem + ".partial.json")).string(),
                               batch_to_json(*e.partial()));
                }
                result.error = e.what();
            }
        } catch (const std::exception& e) {
            result.error = e.what();
        }
    };

    size_t workers = std::min<size_t>(std::max(1, config.backend.concurrency_cap), jobs.size());
    if (workers <= 1) {
        for (size_t i = 0; i < jobs.size(); ++i) run_job(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                while (true) {
                    size_t i = next.fetch_add(1);
                    if (i >= jobs.size()) return;
                    run_job(i);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    int failures = 0;
    int total_rows = 0;
    for (const JobResult& result : results) {
        std::string stem = result.video_id + "." + std::string(condition_name(result.condition));
        if (result.ok) {
            total_rows += result.rows;
            out << stem << ": " << result.rows << " rows in " << result.turns << " turn(s)\n";
        } else {
            ++failures;
            err << stem << ": " << result.error << "\n";
        }
    }
    out << (results.size() - failures) << "/" << results.size() << " batches written, "
        << total_rows << " rows\n";
    return failures == 0 ? 0 : 2;
}

// ---- eval / sweep / saturation ----

namespace {

struct LoadedRun {
    Corpus corpus;
    LoadedCaptions captions;
    std::map<std::string, std::map<int, int>> tokens_by_video;
    std::optional<ConditionOutcomes> raw;
    std::optional<ConditionOutcomes> processed;
};

std::optional<ConditionOutcomes> load_condition(const Corpus& corpus,
                                                const std::map<std::string, std::map<int, int>>& tokens,
                                                Condition condition, const fs::path& batches_dir) {
    ConditionOutcomes outcomes;
    bool any_file = false;
    for (const VideoRecord& video : corpus.videos) {
        fs::path path = batches_dir / batch_filename(video.video_id, condition);
        if (!fs::exists(path)) {
            outcomes.absent.insert(video.video_id);
            continue;
        }
        any_file = true;
        AnnotationBatch batch = batch_from_json(read_file(path.string()));
        const std::map<int, int>* token_map = nullptr;
        if (auto it = tokens.find(video.video_id); it != tokens.end()) token_map = &it->second;
        MatchResult match =
            match_batch(batch, corpus.truth_for(video.video_id), video, token_map);
        outcomes.by_video[video.video_id] = std::move(match.outcomes);
    }
    if (!any_file) return std::nullopt;
    return outcomes;
}

LoadedRun load_run(const RunConfig& config) {
    LoadedRun run;
    run.corpus = load_corpus(config.corpus_root);
    run.captions = load_captions(run.corpus);
    for (const auto& [video_id, transcript] : run.captions.processed) {
        run.tokens_by_video[video_id] = segment_token_map(transcript);
    }
    fs::path batches_dir = config.output_dir / "batches";
    run.raw = load_condition(run.corpus, run.tokens_by_video, Condition::Raw, batches_dir);
    run.processed = load_condition(run.corpus, run.tokens_by_video, Condition::Processed,
                                   batches_dir);
    return run;
}

} // namespace

int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        LoadedRun run = load_run(config);
        if (!run.raw && !run.processed) {
            err << "no batch files under " << (config.output_dir / "batches").string() << "\n";
            return 1;
        }
        EvalReport report = slice_report(run.corpus, run.raw ? &*run.raw : nullptr,
                                         run.processed ? &*run.processed : nullptr);
        for (const std::string& warning : report.warnings) err << "warning: " << warning << "\n";
        fs::create_directories(config.output_dir / "reports");
        fs::path table1 = config.output_dir / "reports" / "table1.tsv";
        fs::path table2 = config.output_dir / "reports" / "table2.tsv";
        write_file(table1.string(), render_table1(report));
        write_file(table2.string(), render_table2(report));
        out << "wrote " << table1.string() << "\n";
        out << "wrote " << table2.string() << "\n";
        return 0;
    } catch (const CorpusValidationError& e) {
        return validation_failure(err, e.findings());
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int cmd_sweep(const RunConfig& config, const std::vector<int>& thresholds, std::ostream& out,
              std::ostream& err) {
    try {
        LoadedRun run = load_run(config);
        if (!run.raw && !run.processed) {
            err << "no batch files under " << (config.output_dir / "batches").string() << "\n";
            return 1;
        }
        std::optional<std::vector<Outcome>> raw_all;
        std::optional<std::vector<Outcome>> processed_all;
        if (run.raw) raw_all = run.raw->flatten(run.corpus);
        if (run.processed) processed_all = run.processed->flatten(run.corpus);

        std::vector<int> grid = thresholds;
        if (grid.empty()) {
            grid = decile_thresholds(raw_all ? *raw_all : *processed_all);
        }
        std::vector<SweepRow> rows = threshold_sweep(raw_all ? &*raw_all : nullptr,
                                                     processed_all ? &*processed_all : nullptr,
                                                     grid);
        fs::create_directories(config.output_dir / "reports");
        fs::path path = config.output_dir / "reports" / "sweep.tsv";
        write_file(path.string(), render_sweep(rows));
        out << "wrote " << path.string() << "\n";
        return 0;
    } catch (const CorpusValidationError& e) {
        return validation_failure(err, e.findings());
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int cmd_saturation(const RunConfig& config, const SaturationOptions& options, std::ostream& out,
                   std::ostream& err) {
    try {
        if (options.fraction <= 0.0 || options.fraction > 1.0) {
            throw std::runtime_error("saturation fraction must be in (0, 1]");
        }
        LoadedRun run = load_run(config);
        Condition condition =
            config.condition == Condition::Raw ? Condition::Raw : Condition::Processed;
        const std::optional<ConditionOutcomes>& chosen =
            condition == Condition::Raw ? run.raw : run.processed;
        if (!chosen) {
            err << "no " << condition_name(condition) << " batches under "
                << (config.output_dir / "batches").string() << "\n";
            return 1;
        }

        // Free-form concept strings grouped per interview, corpus order.
        fs::path batches_dir = config.output_dir / "batches";
        std::vector<std::vector<std::string>> per_interview;
        for (const VideoRecord& video : run.corpus.videos) {
            fs::path path = batches_dir / batch_filename(video.video_id, condition);
            if (!fs::exists(path)) continue;
            AnnotationBatch batch = batch_from_json(read_file(path.string()));
            std::vector<GroundTruthRecord> truth = run.corpus.truth_for(video.video_id);
            bool keyed = !batch.rows.empty() &&
                         std::all_of(batch.rows.begin(), batch.rows.end(),
                                     [](const AnnotationRow& r) {
                                         return r.ref.interview.has_value();
                                     });
            std::map<int, std::vector<std::string>> by_interview;
            for (const GroundTruthRecord& rec : truth) by_interview[rec.key.interview];
            for (size_t i = 0; i < batch.rows.size(); ++i) {
                const AnnotationRow& row = batch.rows[i];
                std::optional<int> interview;
                if (keyed) interview = *row.ref.interview;
                else if (i < truth.size()) interview = truth[i].key.interview;
                if (!interview) continue;
                if (row.concept_label.value == Concept::Undecided) continue;
                std::string raw = trim(row.concept_label.raw_text);
                if (!raw.empty()) by_interview[*interview].push_back(raw);
            }
            for (auto& [index, concepts] : by_interview) {
                per_interview.push_back(std::move(concepts));
            }
        }
        if (per_interview.empty()) {
            err << "no interviews found in the batches\n";
            return 1;
        }

        if (options.shuffle_seed) {
            std::mt19937_64 rng(*options.shuffle_seed);
            std::shuffle(per_interview.begin(), per_interview.end(), rng);
        }
        size_t keep = static_cast<size_t>(
            std::ceil(options.fraction * static_cast<double>(per_interview.size())));
        keep = std::max<size_t>(1, std::min(keep, per_interview.size()));
        per_interview.resize(keep);

        SaturationCurve curve = saturation_curve(per_interview);
        std::optional<int> stable = stable_point(curve, options.window);

        fs::create_directories(config.output_dir / "reports");
        fs::path path = config.output_dir / "reports" / "saturation.tsv";
        write_file(path.string(), render_curve(curve));
        out << "wrote " << path.string() << "\n";
        out << curve.points.back().second << " distinct concepts after "
            << curve.points.back().first << " interviews\n";
        if (stable) out << "stable point (window " << options.window << "): " << *stable << "\n";
        else out << "stable point (window " << options.window << "): none\n";
        out << "named-concept coverage: "
            << format_fixed(coverage_fraction(run.corpus.ground_truth), 2) << "\n";
        return 0;
    } catch (const CorpusValidationError& e) {
        return validation_failure(err, e.findings());
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return 1;
    }
}

int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err) {
    int status = cmd_eval(config, out, err);
    status = std::max(status, cmd_sweep(config, {}, out, err));
    status = std::max(status, cmd_saturation(config, SaturationOptions{}, out, err));
    return status;
}

} // namespace streetpoll
