#pragma once

#include "streetpoll/annotate.hpp"
#include "streetpoll/rate_limiter.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace streetpoll {

struct BackendConfig {
    enum class Kind { Mock, Replay, Live };

    Kind kind = Kind::Mock;
    std::string endpoint;                            // live only
    std::string model_name = "gpt-4";
    std::string credential_env = "STREETPOLL_API_KEY"; // name of the env var, live only
    std::string cassette_path; // replay: lookup source; live: recorded here if set
    int max_continuations = 8;
    double rate_limit_per_min = 3.0; // live default; <= 0 disables
    int concurrency_cap = 2;
    double mock_error_rate = 0.0;
};

// When set, constructing a live backend (or fetching caption URLs)
// throws — the test suites flip this on so no run can touch the network.
void set_test_mode(bool enabled);
bool test_mode();

bool is_url(std::string_view source);

// Returns the content behind a caption source: local files are read
// from disk, http(s) sources fetched with a GET. Network fetches are
// refused in test mode.
std::string fetch_source(const std::string& source);

class Backend {
public:
    virtual ~Backend() = default;
    virtual std::string complete(const std::vector<ChatTurn>& conversation) = 0;
    virtual std::string id() const = 0;
};

class MockBackend final : public Backend {
public:
    MockBackend(ProcessedTranscript transcript, double error_rate, std::uint64_t seed)
        : transcript_(std::move(transcript)), error_rate_(error_rate), seed_(seed) {}

    std::string complete(const std::vector<ChatTurn>& conversation) override;
    std::string id() const override { return "mock"; }

private:
    ProcessedTranscript transcript_;
    double error_rate_;
    std::uint64_t seed_;
};

// Append-only record of exchanges: one JSON object per line with the
// conversation digest and the verbatim response. Later records for the
// same digest win, so re-recording refreshes a cassette in place.
class Cassette {
public:
    static Cassette load(const std::string& path); // missing file -> empty cassette
    static void append(const std::string& path, const std::string& digest,
                       const std::string& response);

    std::optional<std::string> find(const std::string& digest) const;
    size_t size() const { return responses_.size(); }

private:
    std::map<std::string, std::string> responses_;
};

std::string conversation_digest(const std::vector<ChatTurn>& conversation);

// Appends every assistant turn of a finished conversation to the
// cassette, keyed by the digest of the turns before it. Lets a mock or
// hand-written session be replayed later.
void record_conversation(const std::string& cassette_path,
                         const std::vector<ChatTurn>& conversation);

class ReplayBackend final : public Backend {
public:
    explicit ReplayBackend(Cassette cassette, std::string name = "replay")
        : cassette_(std::move(cassette)), name_(std::move(name)) {}

    std::string complete(const std::vector<ChatTurn>& conversation) override;
    std::string id() const override { return name_; }

private:
    Cassette cassette_;
    std::string name_;
};

// Chat-completion HTTP client. The credential comes from the
// environment variable named in the config, never from config values.
// Responses are appended to the cassette when a path is configured.
class LiveBackend final : public Backend {
public:
    explicit LiveBackend(const BackendConfig& config);

    std::string complete(const std::vector<ChatTurn>& conversation) override;
    std::string id() const override { return "live:" + model_name_; }

private:
    std::string endpoint_;
    std::string model_name_;
    std::string api_key_;
    std::string cassette_path_;
    TokenBucket limiter_;
    std::mutex cassette_mutex_;
};

} // namespace streetpoll
