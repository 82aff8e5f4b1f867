#include "cryptolab/transcript.hpp"

#include <chrono>
#include <ctime>
#include <sstream>

namespace cryptolab {

std::string encode_transcript_line(const TranscriptEntry& entry) {
    Json json;
    json["seq"] = entry.seq;
    json["delivered"] = entry.delivered ? to_json(*entry.delivered) : Json(nullptr);
    if (entry.original) json["original"] = to_json(*entry.original);
    json["wall_time"] = entry.wall_time;
    return json.dump();
}

TranscriptEntry decode_transcript_line(std::string_view line) {
    Json json;
    try {
        json = Json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
        throw ProtocolError("transcript line is not JSON");
    }
    if (!json.is_object() || !json.contains("seq")) throw ProtocolError("transcript line lacks 'seq'");
    TranscriptEntry entry;
    entry.seq = json.at("seq").get<std::uint64_t>();
    if (const auto it = json.find("delivered"); it != json.end() && !it->is_null()) {
        entry.delivered = message_from_json(*it);
    }
    if (const auto it = json.find("original"); it != json.end() && !it->is_null()) {
        entry.original = message_from_json(*it);
    }
    if (const auto it = json.find("wall_time"); it != json.end() && it->is_string()) {
        entry.wall_time = it->get<std::string>();
    }
    if (!entry.delivered && !entry.original) throw ProtocolError("transcript line holds no message");
    return entry;
}

std::string strip_wall_time(std::string_view line) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
    const auto pos = line.rfind(",\"wall_time\":");
    if (pos == std::string_view::npos) return std::string(line);
    return std::string(line.substr(0, pos)) + "}";
}

std::vector<TranscriptEntry> read_transcript(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open transcript " + path.string());
    std::vector<TranscriptEntry> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        entries.push_back(decode_transcript_line(line));
    }
    return entries;
}

std::string normalized_transcript(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open transcript " + path.string());
    std::string out;
    std::string line;
    while (std::getline(in, line)) {
        out += strip_wall_time(line);
        out += '\n';
    }
    return out;
}

std::string transcript_file_name(const std::string& room, const std::string& date) {
    return room + "-" + date + ".log";
}

namespace {

std::tm utc_now() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    return tm;
}

}  // namespace

std::string utc_date_today() {
    const std::tm tm = utc_now();
    char buf[16];
    std::strftime(buf, sizeof buf, "%Y-%m-%d", &tm);
    return buf;
}

std::string utc_timestamp_now() {
    const std::tm tm = utc_now();
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

TranscriptWriter::TranscriptWriter(std::filesystem::path path) : path_(std::move(path)) {
    if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
    out_.open(path_, std::ios::app);
    if (!out_) throw Error("cannot open transcript file " + path_.string());
}

void TranscriptWriter::append(const TranscriptEntry& entry) {
    out_ << encode_transcript_line(entry) << '\n';
    out_.flush();
}

}  // namespace cryptolab
