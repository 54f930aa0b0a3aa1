#include "streetpoll/cli.hpp"
#include "streetpoll/text.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using streetpoll::RunConfig;

struct CommonOpts {
    std::string config_path;
    std::string corpus;
    std::string out_dir;
    std::string condition;
    std::string locale;
    std::string template_path;
    std::string synonyms;
    std::uint64_t seed = 0;
    bool force = false;
    bool strict = false;

    std::string backend_kind;
    std::string endpoint;
    std::string model;
    std::string credential_env;
    std::string cassette;
    int max_continuations = 0;
    double rate_limit = 0.0;
    int concurrency = 0;
    double mock_error_rate = 0.0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "run config file")->check(CLI::ExistingFile);
    cmd->add_option("--corpus", o.corpus, "corpus root directory");
    cmd->add_option("--out", o.out_dir, "run output directory");
    cmd->add_option("--condition", o.condition, "raw | processed | both");
    cmd->add_option("--locale", o.locale, "prompt locale (default en)");
    cmd->add_option("--template", o.template_path, "prompt template file override");
    cmd->add_option("--synonyms", o.synonyms, "extra candidate-synonym file");
    cmd->add_option("--seed", o.seed, "seed for the mock backend and shuffles");
    cmd->add_flag("--force", o.force, "reuse a non-empty output directory");
    cmd->add_flag("--strict", o.strict, "strict response parsing");

    cmd->add_option("--backend", o.backend_kind, "mock | replay | live");
    cmd->add_option("--endpoint", o.endpoint, "live endpoint URL");
    cmd->add_option("--model", o.model, "live model name");
    cmd->add_option("--credential-env", o.credential_env,
                    "name of the environment variable holding the API key");
    cmd->add_option("--cassette", o.cassette, "cassette file (replay source / recording sink)");
    cmd->add_option("--max-continuations", o.max_continuations,
                    "continuation turns allowed after the first reply");
    cmd->add_option("--rate-limit", o.rate_limit, "live requests per minute");
    cmd->add_option("--concurrency", o.concurrency, "parallel videos during annotate");
    cmd->add_option("--mock-error-rate", o.mock_error_rate, "mock corruption probability");
}

RunConfig build_config(const CLI::App* cmd, const CommonOpts& o) {
    RunConfig config;
    if (cmd->count("--config")) config = streetpoll::load_run_config(o.config_path);
    if (cmd->count("--corpus")) config.corpus_root = o.corpus;
    if (cmd->count("--out")) config.output_dir = o.out_dir;
    if (cmd->count("--condition")) {
        auto c = streetpoll::condition_from_name(o.condition);
        if (!c) throw CLI::ValidationError("--condition", "expected raw, processed or both");
        config.condition = *c;
    }
    if (cmd->count("--locale")) config.locale = o.locale;
    if (cmd->count("--template")) config.template_path = o.template_path;
    if (cmd->count("--synonyms")) config.synonyms_path = o.synonyms;
    if (cmd->count("--seed")) config.seed = o.seed;
    if (o.force) config.force = true;
    if (o.strict) config.strict_parse = true;

    if (cmd->count("--backend")) {
        std::string kind = streetpoll::fold(o.backend_kind);
        if (kind == "mock") config.backend.kind = streetpoll::BackendConfig::Kind::Mock;
        else if (kind == "replay") config.backend.kind = streetpoll::BackendConfig::Kind::Replay;
        else if (kind == "live") config.backend.kind = streetpoll::BackendConfig::Kind::Live;
        else throw CLI::ValidationError("--backend", "expected mock, replay or live");
    }
    if (cmd->count("--endpoint")) config.backend.endpoint = o.endpoint;
    if (cmd->count("--model")) config.backend.model_name = o.model;
    if (cmd->count("--credential-env")) config.backend.credential_env = o.credential_env;
    if (cmd->count("--cassette")) config.backend.cassette_path = o.cassette;
    if (cmd->count("--max-continuations")) {
        config.backend.max_continuations = o.max_continuations;
    }
    if (cmd->count("--rate-limit")) config.backend.rate_limit_per_min = o.rate_limit;
    if (cmd->count("--concurrency")) config.backend.concurrency_cap = o.concurrency;
    if (cmd->count("--mock-error-rate")) config.backend.mock_error_rate = o.mock_error_rate;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"street-interview opinion mining pipeline"};
    app.require_subcommand(1);

    std::string validate_root;
    CLI::App* validate = app.add_subcommand("validate", "check a corpus directory");
    validate->add_option("corpus", validate_root, "corpus root")->required();

    CommonOpts process_opts;
    CLI::App* process = app.add_subcommand("process", "parse and re-render caption files");
    add_common(process, process_opts);

    CommonOpts prompt_opts;
    CLI::App* prompt = app.add_subcommand("prompt", "build annotation prompts");
    add_common(prompt, prompt_opts);

    CommonOpts annotate_opts;
    CLI::App* annotate = app.add_subcommand("annotate", "run the annotation backend");
    add_common(annotate, annotate_opts);

    CommonOpts eval_opts;
    CLI::App* eval = app.add_subcommand("eval", "score batches against the ground truth");
    add_common(eval, eval_opts);

    CommonOpts saturation_opts;
    streetpoll::SaturationOptions sat_options;
    std::uint64_t sat_shuffle_seed = 0;
    CLI::App* saturation =
        app.add_subcommand("saturation", "concept saturation curve over the calibration split");
    add_common(saturation, saturation_opts);
    saturation->add_option("--fraction", sat_options.fraction,
                           "share of interviews in the calibration split");
    saturation->add_option("--window", sat_options.window, "stability window (interviews)");
    saturation->add_option("--shuffle-seed", sat_shuffle_seed,
                           "shuffle interviews before the split (default: collection order)");

    CommonOpts sweep_opts;
    std::vector<int> sweep_thresholds;
    CLI::App* sweep = app.add_subcommand("sweep", "token-count threshold sweep");
    add_common(sweep, sweep_opts);
    sweep->add_option("--thresholds", sweep_thresholds,
                      "explicit token thresholds (default: observed deciles)");

    CommonOpts report_opts;
    CLI::App* report = app.add_subcommand("report", "eval + sweep + saturation in one go");
    add_common(report, report_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (validate->parsed()) {
            return streetpoll::cmd_validate(validate_root, std::cout, std::cerr);
        }
        if (process->parsed()) {
            return streetpoll::cmd_process(build_config(process, process_opts), std::cout,
                                           std::cerr);
        }
        if (prompt->parsed()) {
            return streetpoll::cmd_prompt(build_config(prompt, prompt_opts), std::cout, std::cerr);
        }
        if (annotate->parsed()) {
            return streetpoll::cmd_annotate(build_config(annotate, annotate_opts), std::cout,
                                            std::cerr);
        }
        if (eval->parsed()) {
            return streetpoll::cmd_eval(build_config(eval, eval_opts), std::cout, std::cerr);
        }
        if (saturation->parsed()) {
            if (saturation->count("--shuffle-seed")) sat_options.shuffle_seed = sat_shuffle_seed;
            return streetpoll::cmd_saturation(build_config(saturation, saturation_opts),
                                              sat_options, std::cout, std::cerr);
        }
        if (sweep->parsed()) {
            return streetpoll::cmd_sweep(build_config(sweep, sweep_opts), sweep_thresholds,
                                         std::cout, std::cerr);
        }
        if (report->parsed()) {
            return streetpoll::cmd_report(build_config(report, report_opts), std::cout,
                                          std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
