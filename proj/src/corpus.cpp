#include "streetpoll/corpus.hpp"

#include "streetpoll/kvfile.hpp"
#include "streetpoll/text.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace streetpoll {

namespace fs = std::filesystem;

std::string_view candidate_token(Candidate c) {
    switch (c) {
        case Candidate::Rte: return "RTE";
        case Candidate::Kk: return "KK";
        case Candidate::Ince: return "INCE";
        case Candidate::OtherUndecided: return "OTHER";
    }
    return "OTHER";
}

std::string_view candidate_display(Candidate c) {
    switch (c) {
        case Candidate::Rte: return "RTE";
        case Candidate::Kk: return "KK";
        case Candidate::Ince: return "Ince";
        case Candidate::OtherUndecided: return "Other";
    }
    return "Other";
}

std::optional<Candidate> candidate_from_token(std::string_view token) {
    std::string t = fold(trim(token));
    if (t == "rte") return Candidate::Rte;
    if (t == "kk") return Candidate::Kk;
    if (t == "ince") return Candidate::Ince;
    if (t == "other" || t == "other_undecided" || t == "undecided") {
        return Candidate::OtherUndecided;
    }
    return std::nullopt;
}

std::string_view concept_name(Concept c) {
    switch (c) {
        case Concept::Leadership: return "Leadership";
        case Concept::Change: return "Change";
        case Concept::Economy: return "Economy";
        case Concept::Development: return "Development";
        case Concept::Honesty: return "Honesty";
        case Concept::Stability: return "Stability";
        case Concept::Intimacy: return "Intimacy";
        case Concept::Reliable: return "Reliable";
        case Concept::Persistence: return "Persistence";
        case Concept::HadEnough: return "Had Enough";
        case Concept::Justice: return "Justice";
        case Concept::Faith: return "Faith";
        case Concept::Other: return "Other";
        case Concept::Undecided: return "Undecided";
    }
    return "Other";
}

std::string_view concept_table_name(Concept c) {
    return c == Concept::Persistence ? "Persistance" : concept_name(c);
}

namespace {

// Case-insensitive key ignoring spaces/underscores/hyphens, so
// "Had Enough", "had_enough" and "HadEnough" all collide.
std::string concept_key(std::string_view name) {
    std::string out;
    for (char c : fold(name)) {
        if (c == ' ' || c == '_' || c == '-') continue;
        out.push_back(c);
    }
    return out;
}

} // namespace

std::optional<Concept> concept_from_name(std::string_view name) {
    static const std::map<std::string, Concept> kByKey = [] {
        std::map<std::string, Concept> m;
        for (int i = 0; i <= static_cast<int>(Concept::Undecided); ++i) {
            Concept c = static_cast<Concept>(i);
            m[concept_key(concept_name(c))] = c;
        }
        m["persistance"] = Concept::Persistence; // table-display spelling
        return m;
    }();
    auto it = kByKey.find(concept_key(name));
    if (it == kByKey.end()) return std::nullopt;
    return it->second;
}

Candidate LabelSpace::apply(Candidate label) const {
    auto it = overrides.find(label);
    return it == overrides.end() ? label : it->second;
}

bool LabelSpace::is_idempotent() const {
    for (Candidate c : kCandidates) {
        if (apply(apply(c)) != apply(c)) return false;
    }
    return true;
}

bool ConceptInventory::contains(Concept c) const {
    return std::any_of(entries.begin(), entries.end(),
                       [c](const ConceptEntry& e) { return e.value == c; });
}

std::optional<Concept> ConceptInventory::match(std::string_view folded_name) const {
    for (const ConceptEntry& e : entries) {
        if (fold(e.name) == folded_name) return e.value;
    }
    return std::nullopt;
}

const VideoRecord* Corpus::find_video(std::string_view video_id) const {
    for (const VideoRecord& v : videos) {
        if (v.video_id == video_id) return &v;
    }
    return nullptr;
}

std::vector<GroundTruthRecord> Corpus::truth_for(std::string_view video_id) const {
    std::vector<GroundTruthRecord> out;
    for (const GroundTruthRecord& r : ground_truth) {
        if (r.video_id == video_id) out.push_back(r);
    }
    std::sort(out.begin(), out.end(),
              [](const GroundTruthRecord& a, const GroundTruthRecord& b) {
                  return a.key < b.key;
              });
    return out;
}

CorpusValidationError::CorpusValidationError(std::vector<std::string> findings)
    : std::runtime_error(findings.empty() ? "corpus validation failed"
                                          : "corpus validation failed: " + findings.front() +
                                                (findings.size() > 1
                                                     ? " (+" + std::to_string(findings.size() - 1) +
                                                           " more)"
                                                     : "")),
      findings_(std::move(findings)) {}

ConceptInventory parse_inventory(std::string_view text) {
    ConceptInventory inventory;
    std::set<Concept> seen;
    int line_no = 0;
    for (const std::string& raw_line : split_lines(text)) {
        ++line_no;
        std::string line = trim(raw_line);
        if (line.empty() || line[0] == '#') continue;
        size_t colon = line.find(':');
        if (colon == std::string::npos) {
            throw std::runtime_error("concept inventory line " + std::to_string(line_no) +
                                     ": expected `name: explanation`");
        }
        ConceptEntry entry;
        entry.name = trim(line.substr(0, colon));
        entry.explanation = trim(line.substr(colon + 1));
        std::optional<Concept> value = concept_from_name(entry.name);
        if (!value) {
            throw std::runtime_error("concept inventory line " + std::to_string(line_no) +
                                     ": unknown concept `" + entry.name + "`");
        }
        if (*value == Concept::Other || *value == Concept::Undecided) {
            throw std::runtime_error("concept inventory line " + std::to_string(line_no) +
                                     ": `" + entry.name + "` is implicit and must not be listed");
        }
        if (!seen.insert(*value).second) {
            throw std::runtime_error("concept inventory line " + std::to_string(line_no) +
                                     ": duplicate concept `" + entry.name + "`");
        }
        entry.value = *value;
        inventory.entries.push_back(std::move(entry));
    }
    return inventory;
}

namespace {

bool is_url(std::string_view s) {
    return s.starts_with("http://") || s.starts_with("https://");
}

std::string resolve_source(const fs::path& root, const std::string& source) {
    if (source.empty() || is_url(source)) return source;
    return (root / source).string();
}

std::vector<GroundTruthRecord> parse_ground_truth(std::string_view text,
                                                  const std::string& filename,
                                                  std::vector<std::string>& findings) {
    std::vector<GroundTruthRecord> records;
    int line_no = 0;
    for (const std::string& raw_line : split_lines(text)) {
        ++line_no;
        if (trim(raw_line).empty() || trim(raw_line)[0] == '#') continue;
        std::vector<std::string> cells = split(raw_line, '\t');
        if (line_no == 1 && !cells.empty() && fold(trim(cells[0])) == "video_id") continue;
        std::string where = filename + ":" + std::to_string(line_no);
        if (cells.size() < 4 || cells.size() > 6) {
            findings.push_back(where + ": expected 4-6 tab-separated fields, got " +
                               std::to_string(cells.size()));
            continue;
        }
        GroundTruthRecord rec;
        rec.video_id = trim(cells[0]);
        std::optional<long long> interview = parse_int(cells[1]);
        std::optional<long long> citizen = parse_int(cells[2]);
        if (rec.video_id.empty() || !interview || *interview < 1 || !citizen || *citizen < 1) {
            findings.push_back(where + ": bad respondent key");
            continue;
        }
        rec.key = {static_cast<int>(*interview), static_cast<int>(*citizen)};
        std::optional<Candidate> candidate = candidate_from_token(cells[3]);
        if (!candidate) {
            findings.push_back(where + ": unknown candidate `" + trim(cells[3]) + "`");
            continue;
        }
        rec.candidate = *candidate;
        if (cells.size() >= 5 && !trim(cells[4]).empty()) {
            std::optional<Concept> parsed_concept = concept_from_name(cells[4]);
            if (!parsed_concept) {
                findings.push_back(where + ": unknown concept `" + trim(cells[4]) + "`");
                continue;
            }
            rec.concept_label = *parsed_concept;
        }
        if (cells.size() >= 6) rec.reason = trim(cells[5]);
        records.push_back(std::move(rec));
    }
    return records;
}

} // namespace

Corpus load_corpus(const fs::path& root) {
    fs::path manifest_path = root / "manifest.txt";
    if (!fs::exists(manifest_path)) {
        throw std::runtime_error("no corpus manifest at " + manifest_path.string());
    }

    KvFile manifest;
    try {
        manifest = parse_kvfile(read_file(manifest_path.string()));
    } catch (const std::exception& e) {
        throw std::runtime_error("manifest.txt: " + std::string(e.what()));
    }

    Corpus corpus;
    corpus.root = root;
    std::vector<std::string> findings;

    std::string gt_file = manifest.top.get("ground_truth").value_or("ground_truth.tsv");
    std::string concepts_file = manifest.top.get("concepts").value_or("concepts.txt");
    std::string merge_file = manifest.top.get("merge_map").value_or("merge_map.txt");

    for (const KvSection& section : manifest.sections) {
        if (section.name != "video") {
            findings.push_back("manifest.txt:" + std::to_string(section.line) +
                               ": unknown section [" + section.name + "]");
            continue;
        }
        VideoRecord video;
        video.video_id = section.get("video_id").value_or("");
        video.channel = section.get("channel").value_or("");
        video.location = section.get("location").value_or("");
        std::string where = "manifest.txt:" + std::to_string(section.line);
        if (video.video_id.empty()) {
            findings.push_back(where + ": video without video_id");
            continue;
        }
        if (video.channel.empty() || video.location.empty()) {
            findings.push_back(where + ": video `" + video.video_id +
                               "` needs non-empty channel and location");
        }
        // `captions` is a 1-2 element list: raw[, processed].
        std::vector<std::string> paths = split(section.get("captions").value_or(""), ',');
        std::vector<std::string> cleaned;
        for (std::string& p : paths) {
            std::string t = trim(p);
            if (!t.empty()) cleaned.push_back(t);
        }
        if (cleaned.empty() || cleaned.size() > 2) {
            findings.push_back(where + ": video `" + video.video_id +
                               "` needs `captions = raw[, processed]`");
        } else {
            video.captions.raw = cleaned[0];
            if (cleaned.size() == 2) video.captions.processed = cleaned[1];
        }
        if (auto overrides = section.get("overrides")) {
            for (const std::string& pair : split(*overrides, ',')) {
                if (trim(pair).empty()) continue;
                std::vector<std::string> sides = split(pair, '=');
                std::optional<Candidate> from, to;
                if (sides.size() == 2) {
                    from = candidate_from_token(sides[0]);
                    to = candidate_from_token(sides[1]);
                }
                if (!from || !to) {
                    findings.push_back(where + ": video `" + video.video_id +
                                       "` has bad override `" + trim(pair) + "`");
                    continue;
                }
                video.label_space.overrides[*from] = *to;
            }
        }
        if (!video.label_space.is_idempotent()) {
            findings.push_back(where + ": video `" + video.video_id +
                               "` override mapping is not idempotent");
        }
        corpus.videos.push_back(std::move(video));
    }

    std::set<std::string> video_ids;
    for (const VideoRecord& v : corpus.videos) {
        if (!video_ids.insert(v.video_id).second) {
            findings.push_back("manifest.txt: duplicate video_id `" + v.video_id + "`");
        }
    }
    if (corpus.videos.empty()) {
        findings.push_back("manifest.txt: no [video] sections");
    }

    fs::path gt_path = root / gt_file;
    if (!fs::exists(gt_path)) {
        findings.push_back("missing ground-truth table " + gt_file);
    } else {
        corpus.ground_truth = parse_ground_truth(read_file(gt_path.string()), gt_file, findings);
        std::set<std::pair<std::string, CitizenKey>> keys;
        for (const GroundTruthRecord& r : corpus.ground_truth) {
            if (!video_ids.count(r.video_id)) {
                findings.push_back(gt_file + ": ground-truth row for unknown video `" +
                                   r.video_id + "`");
            }
            if (!keys.insert({r.video_id, r.key}).second) {
                findings.push_back(gt_file + ": duplicate citizen key " + r.video_id + "/" +
                                   std::to_string(r.key.interview) + "." +
                                   std::to_string(r.key.citizen));
            }
        }
    }

    fs::path concepts_path = root / concepts_file;
    if (!fs::exists(concepts_path)) {
        findings.push_back("missing concept inventory " + concepts_file);
    } else {
        try {
            corpus.inventory = parse_inventory(read_file(concepts_path.string()));
        } catch (const std::exception& e) {
            findings.push_back(std::string(e.what()));
        }
    }

    for (VideoRecord& v : corpus.videos) {
        for (std::string* source : {&v.captions.raw, &v.captions.processed}) {
            if (source->empty() || is_url(*source)) continue;
            fs::path p = root / *source;
            if (!fs::exists(p)) {
                findings.push_back("video `" + v.video_id + "`: missing caption file " + *source);
            }
            *source = p.string();
        }
    }

    fs::path merge_path = root / merge_file;
    if (fs::exists(merge_path)) corpus.merge_map_path = merge_path.string();

    if (!findings.empty()) throw CorpusValidationError(std::move(findings));
    return corpus;
}

Candidate apply_label_space(Candidate label, const VideoRecord& video) {
    return video.label_space.apply(label);
}

std::map<Candidate, double> candidate_shares(std::span<const GroundTruthRecord> slice,
                                             const Corpus& corpus) {
    if (slice.empty()) throw std::invalid_argument("empty slice");
    std::map<Candidate, int> counts;
    for (Candidate c : kCandidates) counts[c] = 0;
    for (const GroundTruthRecord& r : slice) {
        const VideoRecord* video = corpus.find_video(r.video_id);
        Candidate label = video ? apply_label_space(r.candidate, *video) : r.candidate;
        ++counts[label];
    }
    std::map<Candidate, double> shares;
    for (Candidate c : kCandidates) {
        shares[c] = static_cast<double>(counts[c]) / static_cast<double>(slice.size());
    }
    return shares;
}

LoadedCaptions load_captions(const Corpus& corpus) {
    LoadedCaptions loaded;
    std::vector<std::string> findings;
    for (const VideoRecord& v : corpus.videos) {
        if (!v.captions.raw.empty() && !is_url(v.captions.raw)) {
            try {
                loaded.raw[v.video_id] = parse_raw(read_file(v.captions.raw), v.video_id);
            } catch (const std::exception& e) {
                findings.push_back("video `" + v.video_id + "` raw captions: " + e.what());
            }
        }
        if (!v.captions.processed.empty() && !is_url(v.captions.processed)) {
            try {
                loaded.processed[v.video_id] =
                    parse_processed(read_file(v.captions.processed), v.video_id);
            } catch (const std::exception& e) {
                findings.push_back("video `" + v.video_id + "` processed captions: " + e.what());
            }
        }
    }
    if (!findings.empty()) throw CorpusValidationError(std::move(findings));
    return loaded;
}

std::vector<std::string> cross_validate(const Corpus& corpus, const LoadedCaptions& captions) {
    std::vector<std::string> findings;
    for (const VideoRecord& v : corpus.videos) {
        auto it = captions.processed.find(v.video_id);
        if (it == captions.processed.end()) continue;
        const ProcessedTranscript& transcript = it->second;
        std::set<CitizenKey> transcript_keys;
        for (size_t s = 0; s < transcript.segments.size(); ++s) {
            int citizens = transcript.segments[s].citizen_count();
            for (int c = 1; c <= citizens; ++c) {
                transcript_keys.insert({static_cast<int>(s) + 1, c});
            }
        }
        std::set<CitizenKey> truth_keys;
        for (const GroundTruthRecord& r : corpus.ground_truth) {
            if (r.video_id == v.video_id) truth_keys.insert(r.key);
        }
        for (const CitizenKey& k : truth_keys) {
            if (!transcript_keys.count(k)) {
                findings.push_back("video `" + v.video_id + "`: ground-truth respondent " +
                                   std::to_string(k.interview) + "." + std::to_string(k.citizen) +
                                   " not present in the processed transcript");
            }
        }
        for (const CitizenKey& k : transcript_keys) {
            if (!truth_keys.count(k)) {
                findings.push_back("video `" + v.video_id + "`: transcript citizen " +
                                   std::to_string(k.interview) + "." + std::to_string(k.citizen) +
                                   " has no ground-truth row");
            }
        }
    }
    return findings;
}

} // namespace streetpoll
