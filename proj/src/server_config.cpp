#include "cryptolab/server_config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>

#include "cryptolab/error.hpp"

namespace cryptolab {
namespace {

std::uint16_t port_value(const Json& v, const std::string& what) {
    if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 65535) {
        throw InvalidKey(what + " must be a port number between 0 and 65535");
    }
    return v.get<std::uint16_t>();
}

std::uint16_t port_from_env(const char* var, std::uint16_t fallback) {
    const char* text = std::getenv(var);
    if (!text || !*text) return fallback;
    char* end = nullptr;
    const long value = std::strtol(text, &end, 10);
    if (*end != '\0' || value < 0 || value > 65535) {
        throw InvalidKey(std::string(var) + "='" + text + "' is not a port number");
    }
    return static_cast<std::uint16_t>(value);
}

ChannelMode mode_from_json(const Json& v, const std::string& room) {
    if (v.is_string() && v.get<std::string>() == "broadcast") return Broadcast{};
    if (v.is_object() && v.contains("relay") && v.at("relay").is_string() && !v.at("relay").get<std::string>().empty()) {
        return Relay{v.at("relay").get<std::string>()};
    }
    throw InvalidKey("room '" + room + "': mode must be \"broadcast\" or {\"relay\": \"<attacker>\"}");
}

BotConfig bot_from_json(const Json& v, const RoomConfig& room, std::uint64_t server_seed) {
    BotConfig bot;
    bot.role = v.at("role").get<std::string>();
    if (bot.role != "peer" && bot.role != "attacker") {
        throw InvalidKey("room '" + room.name + "': bot role must be \"peer\" or \"attacker\"");
    }
    if (bot.role == "attacker") {
        const auto* relay = std::get_if<Relay>(&room.mode);
        if (!relay) throw InvalidKey("room '" + room.name + "' is in broadcast mode and cannot host an attacker");
        bot.name = v.value("name", relay->attacker);
        if (bot.name != relay->attacker) {
            throw InvalidKey("room '" + room.name + "' relays through '" + relay->attacker + "', not '" + bot.name + "'");
        }
    } else {
        bot.name = v.at("name").get<std::string>();
    }
    bot.seed = v.contains("seed") ? v.at("seed").get<std::uint64_t>() : derive_seed(server_seed, room.name, bot.name);
    bot.initiator = v.value("initiator", false);
    bot.strategy = v.value("strategy", bot.strategy);
    if (bot.strategy != "keep-legs-distinct" && bot.strategy != "naive") {
        throw InvalidKey("room '" + room.name + "': unknown attacker strategy '" + bot.strategy + "'");
    }
    return bot;
}

}  // namespace

bool RoomConfig::admits(const std::string& who) const {
    if (pairings.empty()) return true;
    if (const auto* relay = std::get_if<Relay>(&mode); relay && relay->attacker == who) return true;
    return std::any_of(pairings.begin(), pairings.end(), [&](const auto& p) { return p.first == who || p.second == who; });
}

std::string RoomConfig::role_of(const std::string& who) const {
    for (const auto& [first, second] : pairings) {
        if (first == who) return "initiator";
        if (second == who) return "responder";
    }
    return {};
}

std::uint16_t ServerConfig::websocket_port() const {
    if (ws_port) return *ws_port;
    return port == 0 ? 0 : static_cast<std::uint16_t>(port + 1);
}

const RoomConfig* ServerConfig::room(const std::string& name) const {
    for (const auto& r : rooms) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

ServerConfig server_config_from_json(const Json& json, const std::filesystem::path& base_dir) {
    if (!json.is_object()) throw InvalidKey("server config must be a JSON object");
    ServerConfig config;
    try {
        config.listen = json.value("listen", config.listen);
        if (json.contains("port")) config.port = port_value(json.at("port"), "port");
        if (json.contains("ws_port")) config.ws_port = port_value(json.at("ws_port"), "ws_port");
        if (json.contains("transcript_dir")) config.transcript_dir = json.at("transcript_dir").get<std::string>();
        if (config.transcript_dir.is_relative() && !base_dir.empty()) config.transcript_dir = base_dir / config.transcript_dir;
        config.seed = json.value("seed", std::uint64_t{0});

        std::set<std::string> names;
        for (const auto& r : json.at("rooms")) {
            RoomConfig room;
            room.name = r.at("name").get<std::string>();
            if (room.name.empty()) throw InvalidKey("room names cannot be empty");
            if (!names.insert(room.name).second) throw InvalidKey("room '" + room.name + "' is defined twice");
            room.mode = mode_from_json(r.value("mode", Json("broadcast")), room.name);
            if (r.contains("scenario") && !r.at("scenario").is_null()) {
                std::filesystem::path file = r.at("scenario").get<std::string>();
                if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
                if (!std::filesystem::exists(file)) {
                    throw InvalidKey("room '" + room.name + "': scenario file " + file.string() + " does not exist");
                }
                room.scenario = load_scenario(file);
                room.scenario_file = file;
            }
            std::set<std::string> paired;
            for (const auto& p : r.value("pairings", Json::array())) {
                const auto pair = p.get<std::vector<std::string>>();
                if (pair.size() != 2 || pair[0] == pair[1]) {
                    throw InvalidKey("room '" + room.name + "': each pairing names two different participants");
                }
                for (const auto& who : pair) {
                    if (!paired.insert(who).second) {
                        throw InvalidKey("room '" + room.name + "': '" + who + "' appears in more than one pairing");
                    }
                }
                room.pairings.emplace_back(pair[0], pair[1]);
            }
            for (const auto& b : r.value("bots", Json::array())) room.bots.push_back(bot_from_json(b, room, config.seed));
            config.rooms.push_back(std::move(room));
        }
    } catch (const nlohmann::json::exception& e) {
        throw InvalidKey(std::string("server config: ") + e.what());
    }
    if (config.rooms.empty()) throw InvalidKey("server config defines no rooms");
    return config;
}

ServerConfig load_server_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidKey("cannot open server config " + path.string());
    Json json;
    try {
        json = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidKey(path.string() + ": " + e.what());
    }
    return server_config_from_json(json, path.parent_path());
}

void apply_env_overrides(ServerConfig& config) {
    config.port = port_from_env("CRYPTOLAB_PORT", config.port);
    if (std::getenv("CRYPTOLAB_WS_PORT")) config.ws_port = port_from_env("CRYPTOLAB_WS_PORT", config.websocket_port());
}

std::uint64_t derive_seed(std::uint64_t base, const std::string& room, const std::string& name) {
    // FNV-1a over "room/name", mixed with the base seed
    std::uint64_t h = 1469598103934665603ull ^ base;
    for (const char c : room + "/" + name) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace cryptolab
