#pragma once

#include "streetpoll/backend.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace streetpoll {

enum class Condition { Raw, Processed, Both };

std::optional<Condition> condition_from_name(std::string_view name);

struct RunConfig {
    std::filesystem::path corpus_root;
    std::filesystem::path output_dir;
    BackendConfig backend;
    std::string locale = "en";
    Condition condition = Condition::Processed;
    std::uint64_t seed = 2023;
    bool force = false;       // reuse a non-empty output_dir
    bool strict_parse = false;
    std::string template_path; // optional template override
    std::string synonyms_path; // optional candidate-synonym additions
};

// Run config file: `key = value` plus a [backend] section. The API
// credential is read from the environment variable the config *names*;
// no key material ever appears in config or flags.
RunConfig load_run_config(const std::string& path);

// Exit codes: 0 clean, 1 validation/data failure, 2 backend failure.
int cmd_validate(const std::filesystem::path& corpus_root, std::ostream& out, std::ostream& err);
int cmd_process(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_prompt(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_annotate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_eval(const RunConfig& config, std::ostream& out, std::ostream& err);

struct SaturationOptions {
    double fraction = 0.2; // prefix share of interviews fed to the curve
    int window = 15;
    std::optional<std::uint64_t> shuffle_seed; // default: collection order
};

int cmd_saturation(const RunConfig& config, const SaturationOptions& options, std::ostream& out,
                   std::ostream& err);
int cmd_sweep(const RunConfig& config, const std::vector<int>& thresholds, std::ostream& out,
              std::ostream& err);
// eval + sweep + saturation over an existing run directory.
int cmd_report(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace streetpoll
