#include "streetpoll/annotate.hpp"

#include "streetpoll/backend.hpp"
#include "streetpoll/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstring>
#include <random>
#include <set>
#include <sstream>

namespace streetpoll {

using nlohmann::json;

// ---- candidate synonyms ----

SynonymTable SynonymTable::defaults() {
    SynonymTable table;
    for (const char* s : {"rte", "erdoğan", "erdogan", "tayyip", "tayyip erdoğan",
                          "recep tayyip erdoğan"}) {
        table.add(s, Candidate::Rte);
    }
    for (const char* s : {"kk", "kılıçdaroğlu", "kilicdaroglu", "kemal kılıçdaroğlu",
                          "kemal kilicdaroglu"}) {
        table.add(s, Candidate::Kk);
    }
    for (const char* s : {"ince", "İnce", "muharrem ince"}) {
        table.add(s, Candidate::Ince);
    }
    for (const char* s : {"other", "other or undecided", "other/undecided", "diğer", "uzan",
                          "cem uzan", "oğan", "sinan oğan", "demirtaş", "selahattin demirtaş"}) {
        table.add(s, Candidate::OtherUndecided);
    }
    for (const char* s : {"undecided", "kararsız"}) {
        table.add(s, Candidate::OtherUndecided, /*undecided=*/true);
    }
    return table;
}

void SynonymTable::add(std::string_view raw, Candidate label, bool undecided) {
    std::string key = fold(trim(raw));
    entries[key] = label;
    if (undecided) undecided_markers.insert(key);
    else undecided_markers.erase(key);
}

void SynonymTable::load(const std::string& path) {
    int line_no = 0;
    for (const std::string& raw_line : split_lines(read_file(path))) {
        ++line_no;
        std::string line = trim(raw_line);
        if (line.empty() || line[0] == '#') continue;
        size_t arrow = line.find("=>");
        if (arrow == std::string::npos) {
            throw std::runtime_error("synonym file line " + std::to_string(line_no) +
                                     ": expected `string => LABEL`");
        }
        std::string key = trim(line.substr(0, arrow));
        std::string token = fold(trim(line.substr(arrow + 2)));
        if (token == "undecided") {
            add(key, Candidate::OtherUndecided, true);
            continue;
        }
        std::optional<Candidate> label = candidate_from_token(token);
        if (key.empty() || !label) {
            throw std::runtime_error("synonym file line " + std::to_string(line_no) +
                                     ": bad entry");
        }
        add(key, *label);
    }
}

std::optional<SynonymTable::Match> SynonymTable::find(std::string_view raw) const {
    auto it = entries.find(fold(trim(raw)));
    if (it == entries.end()) return std::nullopt;
    return Match{it->second, undecided_markers.count(it->first) > 0};
}

// ---- response parsing ----

namespace {

// Reads the first integer right after the "Answer 1" marker, allowing
// only separators in between so a bare "Answer 1:\nAnswer 2:" does not
// swallow the "2".
std::optional<int> find_declared_count(std::string_view reply) {
    std::string folded = fold(reply);
    size_t pos = folded.find("answer 1");
    if (pos == std::string::npos) return std::nullopt;
    size_t i = pos + 8;
    while (i < folded.size() &&
           (folded[i] == ' ' || folded[i] == ':' || folded[i] == '\t' || folded[i] == '\r' ||
            folded[i] == '\n' || folded[i] == '*')) {
        ++i;
    }
    if (i >= folded.size() || folded[i] < '0' || folded[i] > '9') return std::nullopt;
    long long value = 0;
    while (i < folded.size() && folded[i] >= '0' && folded[i] <= '9') {
        value = value * 10 + (folded[i] - '0');
        ++i;
    }
    return static_cast<int>(value);
}

std::optional<CitizenRef> parse_citizen_ref(std::string_view cell) {
    std::string folded = fold(trim(cell));
    if (folded.empty()) return std::nullopt;

    std::optional<int> interview;
    if (folded.starts_with("interview ")) {
        size_t i = 10;
        size_t start = i;
        while (i < folded.size() && folded[i] >= '0' && folded[i] <= '9') ++i;
        if (i == start) return std::nullopt;
        interview = static_cast<int>(*parse_int(folded.substr(start, i - start)));
        while (i < folded.size() && (folded[i] == ' ' || folded[i] == '-')) ++i;
        folded = folded.substr(i);
    }
    if (folded.starts_with("citizen ")) {
        std::optional<long long> n = parse_int(folded.substr(8));
        if (!n || *n < 1) return std::nullopt;
        return CitizenRef{interview, static_cast<int>(*n)};
    }
    if (interview) return std::nullopt;
    // "i.j" or a bare citizen number
    size_t dot = folded.find('.');
    if (dot != std::string::npos) {
        std::optional<long long> i = parse_int(folded.substr(0, dot));
        std::optional<long long> j = parse_int(folded.substr(dot + 1));
        if (!i || !j || *i < 1 || *j < 1) return std::nullopt;
        return CitizenRef{static_cast<int>(*i), static_cast<int>(*j)};
    }
    std::optional<long long> n = parse_int(folded);
    if (!n || *n < 1) return std::nullopt;
    return CitizenRef{std::nullopt, static_cast<int>(*n)};
}

bool looks_like_header(const std::vector<std::string>& cells) {
    std::string first = fold(trim(cells[0]));
    std::string last = fold(trim(cells.back()));
    bool no_digits = std::none_of(first.begin(), first.end(),
                                  [](char c) { return c >= '0' && c <= '9'; });
    return no_digits && first.find("citizen") != std::string::npos &&
           last.find("concept") != std::string::npos;
}

} // namespace

ParsedResponse parse_response(std::string_view reply, const ParseContext& ctx) {
    if (!ctx.synonyms || !ctx.merge || !ctx.inventory) {
        throw std::invalid_argument("parse_response: incomplete parse context");
    }
    ParsedResponse out;
    out.declared_count = find_declared_count(reply);

    bool header_skipped = false;
    int line_no = 0;
    for (const std::string& line : split_lines(reply)) {
        ++line_no;
        if (line.find(',') == std::string::npos) continue;
        std::vector<std::string> cells = split(line, ',');
        std::optional<CitizenRef> ref = parse_citizen_ref(cells[0]);
        if (!ref) continue; // surrounding prose
        if (cells.size() != 4) {
            if (!header_skipped && looks_like_header(cells)) {
                header_skipped = true;
                continue;
            }
            if (ctx.strict) {
                throw AnnotateError(AnnotateError::Kind::Malformed,
                                    "line " + std::to_string(line_no) + ": expected 4 fields, got " +
                                        std::to_string(cells.size()),
                                    {}, std::string(reply));
            }
            out.warnings.push_back("line " + std::to_string(line_no) + ": skipped row with " +
                                   std::to_string(cells.size()) + " fields");
            continue;
        }
        if (!header_skipped && looks_like_header(cells)) {
            header_skipped = true;
            continue;
        }

        AnnotationRow row;
        row.ref = *ref;
        std::string candidate_cell = trim(cells[1]);
        if (!candidate_cell.empty()) {
            if (std::optional<SynonymTable::Match> match = ctx.synonyms->find(candidate_cell)) {
                row.candidate = match->label;
                row.undecided = match->undecided;
            } else {
                out.warnings.push_back("line " + std::to_string(line_no) +
                                       ": unknown candidate `" + candidate_cell + "`");
            }
        }
        row.reason = trim(cells[2]);
        row.concept_label = canonicalize_concept(cells[3], *ctx.merge, *ctx.inventory);
        if (row.undecided && row.concept_label.value != Concept::Undecided) {
            out.warnings.push_back("line " + std::to_string(line_no) +
                                   ": undecided row had concept `" + row.concept_label.raw_text +
                                   "`, forced to undecided");
            row.concept_label.value = Concept::Undecided;
        }
        out.rows.push_back(std::move(row));
    }

    if (out.rows.empty()) {
        throw AnnotateError(AnnotateError::Kind::Malformed, "no CSV-shaped lines found", {},
                            std::string(reply));
    }
    return out;
}

namespace {

std::string csv_safe(std::string s) {
    std::replace(s.begin(), s.end(), ',', ' ');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

} // namespace

std::string render_reply(const AnnotationBatch& batch) {
    std::ostringstream out;
    out << "Answer 1: " << batch.declared_count << "\n";
    out << "Answer 2:\n";
    for (const AnnotationRow& row : batch.rows) {
        if (row.ref.interview) {
            out << "Interview " << *row.ref.interview << " Citizen " << row.ref.citizen;
        } else {
            out << "Citizen " << row.ref.citizen;
        }
        out << ", ";
        if (row.undecided) out << "Undecided";
        else if (row.candidate) out << candidate_display(*row.candidate);
        else out << "Unknown";
        out << ", " << csv_safe(row.reason) << ", ";
        out << csv_safe(row.concept_label.raw_text.empty() ? std::string(concept_name(row.concept_label.value))
                                                     : row.concept_label.raw_text);
        out << "\n";
    }
    return out.str();
}

// ---- continuation protocol ----

AnnotationBatch annotate_video(const PromptInstance& prompt, Backend& backend,
                               const ParseContext& ctx, std::string video_id,
                               int max_continuations,
                               std::vector<ChatTurn>* conversation_out) {
    std::vector<ChatTurn> conversation{{ChatTurn::Role::User, prompt.final_text}};
    AnnotationBatch batch;
    batch.video_id = std::move(video_id);
    batch.backend_id = backend.id();

    std::set<std::pair<int, int>> seen;
    std::optional<int> declared;
    int turns = 0;

    while (true) {
        std::string reply = backend.complete(conversation);
        ++turns;
        conversation.push_back({ChatTurn::Role::Assistant, reply});
        if (conversation_out) *conversation_out = conversation;

        ParsedResponse parsed = parse_response(reply, ctx);
        if (!declared) {
            if (parsed.declared_count) {
                declared = *parsed.declared_count;
            } else if (ctx.strict) {
                throw AnnotateError(AnnotateError::Kind::Malformed,
                                    "reply carries no Answer 1 count", {}, reply);
            } else {
                declared = static_cast<int>(parsed.rows.size());
            }
        }
        for (AnnotationRow& row : parsed.rows) {
            std::pair<int, int> key{row.ref.interview.value_or(0), row.ref.citizen};
            if (seen.insert(key).second) batch.rows.push_back(std::move(row));
        }
        batch.declared_count = *declared;
        batch.turns_used = turns;

        if (static_cast<int>(batch.rows.size()) >= *declared) break;
        if (turns >= 1 + max_continuations) {
            throw AnnotateError(AnnotateError::Kind::Incomplete,
                                "batch for " + batch.video_id + " still has " +
                                    std::to_string(batch.rows.size()) + " of " +
                                    std::to_string(*declared) + " rows after " +
                                    std::to_string(turns) + " turns",
                                batch);
        }
        conversation.push_back({ChatTurn::Role::User, std::string(kContinuationPhrase)});
        if (conversation_out) *conversation_out = conversation;
    }
    return batch;
}

// ---- mock backend rules ----

namespace {

struct CandidateKeyword {
    const char* keyword;
    Candidate label;
    bool undecided;
};

// Token-prefix keywords; Turkish suffixes ("erdoğana", "inceye") still
// match. All keywords are pre-folded lowercase.
constexpr CandidateKeyword kCandidateKeywords[] = {
    {"erdoğan", Candidate::Rte, false},
    {"tayyip", Candidate::Rte, false},
    {"kılıçdaroğlu", Candidate::Kk, false},
    {"kemal", Candidate::Kk, false},
    {"ince", Candidate::Ince, false},
    {"muharrem", Candidate::Ince, false},
    {"kararsız", Candidate::OtherUndecided, true},
    {"uzan", Candidate::OtherUndecided, false},
    {"oğan", Candidate::OtherUndecided, false},
    {"demirtaş", Candidate::OtherUndecided, false},
};

struct ConceptKeyword {
    const char* keyword;
    const char* emitted; // concept string the mock writes in the CSV
};

// A few entries deliberately emit free-form strings that only the merge
// map folds back into the inventory, mirroring how a live model phrases
// the same concept differently across videos.
constexpr ConceptKeyword kConceptKeywords[] = {
    {"lider", "Leadership"},
    {"karizma", "charisma"},
    {"dünya", "being a world-class leader"},
    {"değişim", "Change"},
    {"yenilik", "fresh start"},
    {"ekonomi", "Economy"},
    {"pahalılık", "cost of living"},
    {"kalkın", "Development"},
    {"dürüst", "Honesty"},
    {"istikrar", "Stability"},
    {"sevgi", "Intimacy"},
    {"güven", "Reliable"},
    {"mücadele", "Persistence"},
    {"bıktık", "Had Enough"},
    {"adalet", "Justice"},
    {"dindar", "Faith"},
    {"inanç", "Faith"},
    {"deprem", "earthquake response"},
    {"göç", "immigration policy"},
    {"eğitim", "education"},
    {"sağlık", "healthcare"},
};

std::vector<std::string> fold_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::istringstream iss{fold(text)};
    std::string tok;
    while (iss >> tok) {
        size_t b = 0;
        size_t e = tok.size();
        while (b < e && std::strchr(".,!?;:\"'()", tok[b])) ++b;
        while (e > b && std::strchr(".,!?;:\"'()", tok[e - 1])) --e;
        if (e > b) tokens.push_back(tok.substr(b, e - b));
    }
    return tokens;
}

struct MockPrediction {
    std::string candidate_cell = "Unknown";
    bool undecided = false;
    Candidate label = Candidate::OtherUndecided;
    bool has_label = false;
    std::string reason;
    std::string concept_cell = "other";
};

MockPrediction scan_citizen(const InterviewSegment& segment, int citizen) {
    MockPrediction pred;
    for (const Utterance& u : segment.utterances) {
        if (u.citizen != citizen) continue;
        for (const std::string& tok : fold_tokens(u.text)) {
            if (!pred.has_label) {
                for (const CandidateKeyword& ck : kCandidateKeywords) {
                    if (tok.starts_with(ck.keyword)) {
                        pred.has_label = true;
                        pred.label = ck.label;
                        pred.undecided = ck.undecided;
                        break;
                    }
                }
            }
            if (pred.concept_cell == "other") {
                for (const ConceptKeyword& ck : kConceptKeywords) {
                    if (tok.starts_with(ck.keyword)) {
                        pred.concept_cell = ck.emitted;
                        pred.reason = csv_safe(u.text);
                        break;
                    }
                }
            }
        }
    }
    if (pred.has_label) {
        pred.candidate_cell =
            pred.undecided ? "Undecided" : std::string(candidate_display(pred.label));
    }
    if (pred.undecided) {
        pred.reason = "undecided";
        pred.concept_cell = "undecided";
    }
    return pred;
}

} // namespace

std::string mock_annotate(const ProcessedTranscript& transcript, double error_rate,
                          std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);

    std::ostringstream csv;
    int total = 0;
    for (const InterviewSegment& segment : transcript.segments) {
        int citizens = segment.citizen_count();
        for (int c = 1; c <= citizens; ++c) {
            ++total;
            MockPrediction pred = scan_citizen(segment, c);
            if (pred.has_label && error_rate > 0.0 && coin(rng) < error_rate) {
                // corrupt to a different label
                std::vector<Candidate> others;
                for (Candidate cand : kCandidates) {
                    if (cand != pred.label) others.push_back(cand);
                }
                std::uniform_int_distribution<size_t> pick(0, others.size() - 1);
                pred.label = others[pick(rng)];
                pred.candidate_cell = std::string(candidate_display(pred.label));
                pred.undecided = false;
            }
            csv << "Citizen " << total << ", " << pred.candidate_cell << ", " << pred.reason
                << ", " << pred.concept_cell << "\n";
        }
    }

    std::ostringstream out;
    out << "Answer 1: " << total << "\n";
    out << "Answer 2:\n";
    out << csv.str();
    return out.str();
}

// ---- batch serialization ----

std::string batch_to_json(const AnnotationBatch& batch) {
    json rows = json::array();
    for (const AnnotationRow& row : batch.rows) {
        json r;
        if (row.ref.interview) r["interview"] = *row.ref.interview;
        else r["interview"] = nullptr;
        r["citizen"] = row.ref.citizen;
        if (row.candidate) r["candidate"] = std::string(candidate_token(*row.candidate));
        else r["candidate"] = nullptr;
        r["undecided"] = row.undecided;
        r["reason"] = row.reason;
        r["concept"] = std::string(concept_name(row.concept_label.value));
        r["concept_raw"] = row.concept_label.raw_text;
        rows.push_back(std::move(r));
    }
    json doc;
    doc["video_id"] = batch.video_id;
    doc["declared_count"] = batch.declared_count;
    doc["turns_used"] = batch.turns_used;
    doc["backend_id"] = batch.backend_id;
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

AnnotationBatch batch_from_json(std::string_view json_text) {
    json doc = json::parse(json_text);
    AnnotationBatch batch;
    batch.video_id = doc.at("video_id").get<std::string>();
    batch.declared_count = doc.at("declared_count").get<int>();
    batch.turns_used = doc.at("turns_used").get<int>();
    batch.backend_id = doc.at("backend_id").get<std::string>();
    for (const json& r : doc.at("rows")) {
        AnnotationRow row;
        if (!r.at("interview").is_null()) row.ref.interview = r.at("interview").get<int>();
        row.ref.citizen = r.at("citizen").get<int>();
        if (!r.at("candidate").is_null()) {
            std::optional<Candidate> c = candidate_from_token(r.at("candidate").get<std::string>());
            if (!c) throw std::runtime_error("batch file: unknown candidate token");
            row.candidate = *c;
        }
        row.undecided = r.at("undecided").get<bool>();
        row.reason = r.at("reason").get<std::string>();
        std::optional<Concept> parsed_concept = concept_from_name(r.at("concept").get<std::string>());
        if (!parsed_concept) throw std::runtime_error("batch file: unknown concept name");
        row.concept_label.value = *parsed_concept;
        row.concept_label.raw_text = r.at("concept_raw").get<std::string>();
        batch.rows.push_back(std::move(row));
    }
    return batch;
}

} // namespace streetpoll
