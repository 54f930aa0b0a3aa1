#include "streetpoll/captions.hpp"

#include "streetpoll/text.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace streetpoll {

namespace {

// Accepts MM:SS and HH:MM:SS. Minutes may have one or two digits in the
// short form; seconds (and minutes in the long form) must be < 60.
std::optional<int> parse_timestamp(std::string_view s) {
    std::vector<std::string> parts = split(s, ':');
    if (parts.size() != 2 && parts.size() != 3) return std::nullopt;
    std::vector<int> nums;
    for (const std::string& p : parts) {
        if (p.empty() || p.size() > 3) return std::nullopt;
        for (char c : p) {
            if (c < '0' || c > '9') return std::nullopt;
        }
        nums.push_back(static_cast<int>(*parse_int(p)));
    }
    if (nums.back() >= 60) return std::nullopt;
    if (nums.size() == 2) {
        return nums[0] * 60 + nums[1];
    }
    if (nums[1] >= 60) return std::nullopt;
    return nums[0] * 3600 + nums[1] * 60 + nums[2];
}

} // namespace

std::string format_timestamp(int seconds) {
    char buf[16];
    if (seconds >= 3600) {
        std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", seconds / 3600,
                      (seconds % 3600) / 60, seconds % 60);
    } else {
        std::snprintf(buf, sizeof(buf), "%02d:%02d", seconds / 60, seconds % 60);
    }
    return buf;
}

int InterviewSegment::citizen_count() const {
    int max_index = 0;
    for (const Utterance& u : utterances) max_index = std::max(max_index, u.citizen);
    return max_index;
}

int ProcessedTranscript::total_citizens() const {
    int total = 0;
    for (const InterviewSegment& s : segments) total += s.citizen_count();
    return total;
}

RawCaptionDocument parse_raw(std::string_view text, std::string video_id) {
    if (trim(text).empty()) throw CaptionParseError("empty caption input", 0);
    RawCaptionDocument doc;
    doc.video_id = std::move(video_id);
    int line_no = 0;
    for (const std::string& raw_line : split_lines(text)) {
        ++line_no;
        std::string line = trim(raw_line);
        if (line.empty()) continue;
        size_t space = line.find(' ');
        if (space == std::string::npos) {
            throw CaptionParseError(
                "line " + std::to_string(line_no) + ": expected `MM:SS text`", line_no);
        }
        std::optional<int> ts = parse_timestamp(line.substr(0, space));
        if (!ts) {
            throw CaptionParseError(
                "line " + std::to_string(line_no) + ": unparseable timestamp `" +
                    line.substr(0, space) + "`",
                line_no);
        }
        std::string cue_text = trim(line.substr(space + 1));
        if (cue_text.empty()) {
            throw CaptionParseError("line " + std::to_string(line_no) + ": empty cue text",
                                    line_no);
        }
        if (!doc.cues.empty() && *ts < doc.cues.back().start) {
            throw CaptionParseError("non-monotonic cue at line " + std::to_string(line_no),
                                    line_no);
        }
        doc.cues.push_back({*ts, std::move(cue_text)});
    }
    if (doc.cues.empty()) throw CaptionParseError("empty caption input", 0);
    return doc;
}

std::string render_raw(const RawCaptionDocument& doc) {
    std::ostringstream out;
    for (const CaptionCue& cue : doc.cues) {
        out << format_timestamp(cue.start) << ' ' << cue.text << '\n';
    }
    return out.str();
}

namespace {

void finish_segment(InterviewSegment& segment, std::vector<InterviewSegment>& segments,
                    int line_no) {
    if (segment.utterances.empty()) return;
    bool has_reporter = false;
    bool has_citizen = false;
    for (const Utterance& u : segment.utterances) {
        if (u.is_reporter()) has_reporter = true;
        else has_citizen = true;
    }
    if (!has_citizen) {
        throw CaptionParseError(
            "segment ending at line " + std::to_string(line_no) + " has no Citizen line",
            line_no);
    }
    if (!has_reporter) {
        throw CaptionParseError(
            "segment ending at line " + std::to_string(line_no) + " has no Reporter line",
            line_no);
    }
    segments.push_back(std::move(segment));
    segment = InterviewSegment{};
}

} // namespace

ProcessedTranscript parse_processed(std::string_view text, std::string video_id) {
    if (trim(text).empty()) throw CaptionParseError("empty transcript input", 0);
    ProcessedTranscript transcript;
    transcript.video_id = std::move(video_id);
    InterviewSegment current;
    int max_citizen = 0; // highest citizen index seen in the current segment
    int line_no = 0;
    for (const std::string& raw_line : split_lines(text)) {
        ++line_no;
        std::string line = trim(raw_line);
        if (line.empty()) continue;
        if (line == "---") {
            finish_segment(current, transcript.segments, line_no);
            max_citizen = 0;
            continue;
        }

        Utterance utt;
        std::string_view rest = line;
        if (rest.front() == '[') {
            size_t close = rest.find("] ");
            if (close == std::string_view::npos) {
                throw CaptionParseError(
                    "line " + std::to_string(line_no) + ": unterminated timestamp prefix",
                    line_no);
            }
            std::optional<int> ts = parse_timestamp(rest.substr(1, close - 1));
            if (!ts) {
                throw CaptionParseError(
                    "line " + std::to_string(line_no) + ": bad timestamp prefix", line_no);
            }
            utt.start = *ts;
            rest.remove_prefix(close + 2);
        }

        if (rest.starts_with("Reporter:")) {
            rest.remove_prefix(9);
            utt.citizen = 0;
        } else if (rest.starts_with("Citizen ")) {
            rest.remove_prefix(8);
            size_t colon = rest.find(':');
            if (colon == std::string_view::npos) {
                throw CaptionParseError(
                    "line " + std::to_string(line_no) + ": missing `:` after speaker tag",
                    line_no);
            }
            std::optional<long long> idx = parse_int(rest.substr(0, colon));
            if (!idx || *idx < 1) {
                throw CaptionParseError(
                    "line " + std::to_string(line_no) + ": bad citizen index", line_no);
            }
            utt.citizen = static_cast<int>(*idx);
            if (utt.citizen > max_citizen + 1) {
                throw CaptionParseError(
                    "non-contiguous citizen index at line " + std::to_string(line_no) +
                        " (Citizen " + std::to_string(utt.citizen) + " before Citizen " +
                        std::to_string(max_citizen + 1) + ")",
                    line_no);
            }
            max_citizen = std::max(max_citizen, utt.citizen);
            rest.remove_prefix(colon + 1);
        } else {
            throw CaptionParseError(
                "line " + std::to_string(line_no) + ": unknown speaker tag", line_no);
        }
        if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
        utt.text = trim(rest);
        current.utterances.push_back(std::move(utt));
    }
    finish_segment(current, transcript.segments, line_no);
    if (transcript.segments.empty()) {
        throw CaptionParseError("empty transcript input", 0);
    }
    return transcript;
}

std::string render_processed(const ProcessedTranscript& transcript) {
    std::ostringstream out;
    bool first = true;
    for (const InterviewSegment& segment : transcript.segments) {
        if (!first) out << "---\n";
        first = false;
        for (const Utterance& u : segment.utterances) {
            if (u.start) out << '[' << format_timestamp(*u.start) << "] ";
            if (u.is_reporter()) out << "Reporter:";
            else out << "Citizen " << u.citizen << ':';
            if (!u.text.empty()) out << ' ' << u.text;
            out << '\n';
        }
    }
    return out.str();
}

int count_tokens(const InterviewSegment& segment) {
    int count = 0;
    for (const Utterance& u : segment.utterances) {
        std::istringstream iss(u.text);
        std::string tok;
        while (iss >> tok) ++count;
    }
    return count;
}

} // namespace streetpoll
