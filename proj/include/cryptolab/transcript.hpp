#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cryptolab/channel.hpp"

namespace cryptolab {

/// One transcript line: {"seq":..,"delivered":{..}|null,"original":{..},"wall_time":".."}.
/// "original" appears only for substituted or dropped messages; "wall_time"
/// is always last so it can be stripped for golden comparisons.
std::string encode_transcript_line(const TranscriptEntry& entry);
TranscriptEntry decode_transcript_line(std::string_view line);

/// The line without its wall_time field.
std::string strip_wall_time(std::string_view line);

std::vector<TranscriptEntry> read_transcript(const std::filesystem::path& path);

/// Whole file with wall-clock metadata removed, one entry per line.
std::string normalized_transcript(const std::filesystem::path& path);

/// "<room>-<date>.log"
std::string transcript_file_name(const std::string& room, const std::string& date);

/// Returns "YYYY-MM-DD" and an ISO-8601 UTC timestamp for now.
std::string utc_date_today();
std::string utc_timestamp_now();

/// Append-only transcript file; every entry is flushed as it is written.
class TranscriptWriter {
public:
    explicit TranscriptWriter(std::filesystem::path path);

    void append(const TranscriptEntry& entry);
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    std::ofstream out_;
};

}  // namespace cryptolab
