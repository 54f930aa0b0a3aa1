#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace streetpoll {

// One timestamped line of auto-generated captions. The raw format carries
// no speaker identity at all.
struct CaptionCue {
    int start = 0; // seconds
    std::string text;

    bool operator==(const CaptionCue&) const = default;
};

struct RawCaptionDocument {
    std::string video_id;
    std::vector<CaptionCue> cues;

    bool operator==(const RawCaptionDocument&) const = default;
};

// Speaker-tagged line of the processed format. citizen == 0 means the
// reporter; n >= 1 means "Citizen n". Text is kept verbatim, including
// speech-to-text mistakes.
struct Utterance {
    int citizen = 0;
    std::string text;
    std::optional<int> start; // seconds, optional in the processed format

    bool is_reporter() const { return citizen == 0; }
    bool operator==(const Utterance&) const = default;
};

struct InterviewSegment {
    std::vector<Utterance> utterances;

    int citizen_count() const;
    bool operator==(const InterviewSegment&) const = default;
};

struct ProcessedTranscript {
    std::string video_id;
    std::vector<InterviewSegment> segments;

    int total_citizens() const;
    bool operator==(const ProcessedTranscript&) const = default;
};

class CaptionParseError : public std::runtime_error {
public:
    CaptionParseError(std::string message, int line)
        : std::runtime_error(std::move(message)), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// Raw format: one `MM:SS text` (or `HH:MM:SS text`) cue per line, cues in
// non-decreasing time order, blank lines ignored.
RawCaptionDocument parse_raw(std::string_view text, std::string video_id = "");
std::string render_raw(const RawCaptionDocument& doc);

// Processed format: `Reporter: text` / `Citizen n: text` lines with an
// optional `[MM:SS] ` prefix; interviews separated by `---` lines.
ProcessedTranscript parse_processed(std::string_view text, std::string video_id = "");
std::string render_processed(const ProcessedTranscript& transcript);

// Whitespace-delimited token count over all utterance texts in a segment.
// Speaker tags and timestamps are not counted.
int count_tokens(const InterviewSegment& segment);

std::string format_timestamp(int seconds);

} // namespace streetpoll
