#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "streetpoll/backend.hpp"

#include "streetpoll/text.hpp"

#include <httplib.h>
#include <json.hpp>

#include <atomic>
#include <cstdlib>
#include <fstream>

namespace streetpoll {

using nlohmann::json;

namespace {
std::atomic<bool> g_test_mode{false};
}

void set_test_mode(bool enabled) { g_test_mode.store(enabled); }
bool test_mode() { return g_test_mode.load(); }

bool is_url(std::string_view source) {
    return source.starts_with("http://") || source.starts_with("https://");
}

std::string fetch_source(const std::string& source) {
    if (!is_url(source)) return read_file(source);
    if (test_mode()) {
        throw std::runtime_error("test mode forbids fetching " + source);
    }
    size_t scheme = source.find("://");
    size_t slash = source.find('/', scheme + 3);
    std::string base = slash == std::string::npos ? source : source.substr(0, slash);
    std::string path = slash == std::string::npos ? "/" : source.substr(slash);
    httplib::Client client(base);
    client.set_follow_location(true);
    httplib::Result res = client.Get(path);
    if (!res) {
        throw std::runtime_error("fetching " + source + " failed: " +
                                 httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        throw std::runtime_error("fetching " + source + " failed: HTTP " +
                                 std::to_string(res->status));
    }
    return res->body;
}

// ---- mock ----

std::string MockBackend::complete(const std::vector<ChatTurn>& conversation) {
    if (conversation.empty()) {
        throw std::invalid_argument("mock backend needs at least the opening prompt");
    }
    // The mock always answers in full, so a continuation turn just gets
    // the same complete reply again; dedup upstream makes that a no-op.
    return mock_annotate(transcript_, error_rate_, seed_);
}

// ---- cassette ----

std::string conversation_digest(const std::vector<ChatTurn>& conversation) {
    std::uint64_t h = fnv1a("chat/v1");
    for (const ChatTurn& turn : conversation) {
        h = fnv1a(turn.role == ChatTurn::Role::User ? "u\x1f" : "a\x1f", h);
        h = fnv1a(turn.text, h);
        h = fnv1a("\x1e", h);
    }
    return to_hex(h);
}

Cassette Cassette::load(const std::string& path) {
    Cassette cassette;
    std::ifstream in(path, std::ios::binary);
    if (!in) return cassette; // not recorded yet
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json entry;
        try {
            entry = json::parse(line);
        } catch (const json::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                     ": bad cassette line: " + e.what());
        }
        cassette.responses_[entry.at("digest").get<std::string>()] =
            entry.at("response").get<std::string>();
    }
    return cassette;
}

void Cassette::append(const std::string& path, const std::string& digest,
                      const std::string& response) {
    json entry;
    entry["digest"] = digest;
    entry["response"] = response;
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("cannot append to cassette " + path);
    out << entry.dump() << "\n";
}

std::optional<std::string> Cassette::find(const std::string& digest) const {
    auto it = responses_.find(digest);
    if (it == responses_.end()) return std::nullopt;
    return it->second;
}

void record_conversation(const std::string& cassette_path,
                         const std::vector<ChatTurn>& conversation) {
    std::vector<ChatTurn> prefix;
    for (const ChatTurn& turn : conversation) {
        if (turn.role == ChatTurn::Role::Assistant) {
            Cassette::append(cassette_path, conversation_digest(prefix), turn.text);
        }
        prefix.push_back(turn);
    }
}

std::string ReplayBackend::complete(const std::vector<ChatTurn>& conversation) {
    std::string digest = conversation_digest(conversation);
    if (std::optional<std::string> response = cassette_.find(digest)) {
        return *response;
    }
    throw AnnotateError(AnnotateError::Kind::MissingFixture,
                        "cassette has no response for digest " + digest);
}

// ---- live ----

LiveBackend::LiveBackend(const BackendConfig& config)
    : endpoint_(config.endpoint),
      model_name_(config.model_name),
      cassette_path_(config.cassette_path),
      limiter_(config.rate_limit_per_min) {
    if (test_mode()) {
        throw std::runtime_error("test mode forbids constructing a live backend");
    }
    if (endpoint_.empty() || !is_url(endpoint_)) {
        throw std::runtime_error("live backend needs an http(s) endpoint, got `" + endpoint_ +
                                 "`");
    }
    const char* key = config.credential_env.empty() ? nullptr
                                                    : std::getenv(config.credential_env.c_str());
    if (!key || !*key) {
        throw std::runtime_error("credential environment variable " + config.credential_env +
                                 " is not set");
    }
    api_key_ = key;
}

std::string LiveBackend::complete(const std::vector<ChatTurn>& conversation) {
    json messages = json::array();
    for (const ChatTurn& turn : conversation) {
        messages.push_back({{"role", turn.role == ChatTurn::Role::User ? "user" : "assistant"},
                            {"content", turn.text}});
    }
    json payload;
    payload["model"] = model_name_;
    payload["messages"] = std::move(messages);

    limiter_.acquire();

    size_t scheme = endpoint_.find("://");
    size_t slash = endpoint_.find('/', scheme + 3);
    std::string base = slash == std::string::npos ? endpoint_ : endpoint_.substr(0, slash);
    std::string path = slash == std::string::npos ? "/" : endpoint_.substr(slash);

    httplib::Client client(base);
    client.set_read_timeout(120, 0);
    client.set_bearer_token_auth(api_key_);
    httplib::Result res = client.Post(path, payload.dump(), "application/json");
    if (!res) {
        throw AnnotateError(AnnotateError::Kind::Transport,
                            "POST " + endpoint_ + " failed: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        throw AnnotateError(AnnotateError::Kind::Transport,
                            "POST " + endpoint_ + " failed: HTTP " + std::to_string(res->status),
                            {}, res->body);
    }

    std::string content;
    try {
        json reply = json::parse(res->body);
        content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw AnnotateError(AnnotateError::Kind::Transport,
                            std::string("unexpected completion payload: ") + e.what(), {},
                            res->body);
    }

    if (!cassette_path_.empty()) {
        std::lock_guard<std::mutex> lock(cassette_mutex_);
        Cassette::append(cassette_path_, conversation_digest(conversation), content);
    }
    return content;
}

} // namespace streetpoll
