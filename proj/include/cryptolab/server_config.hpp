#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cryptolab/channel.hpp"
#include "cryptolab/scenario.hpp"

namespace cryptolab {

/// An in-process participant started with the server.
struct BotConfig {
    std::string role;  // "peer" or "attacker"
    std::string name;
    std::uint64_t seed = 0;
    bool initiator = false;
    std::string strategy = "keep-legs-distinct";
};

struct RoomConfig {
    std::string name;
    ChannelMode mode = Broadcast{};
    std::optional<std::filesystem::path> scenario_file;
    std::optional<ScenarioConfig> scenario;
    /// Who works with whom; the first of each pair starts the exchange. When
    /// non-empty, only paired names (and the relay attacker) may join.
    std::vector<std::pair<std::string, std::string>> pairings;
    std::vector<BotConfig> bots;

    bool admits(const std::string& name) const;
    /// "initiator", "responder" or empty when the name is unpaired.
    std::string role_of(const std::string& name) const;
};

struct ServerConfig {
    std::string listen = "127.0.0.1";
    std::uint16_t port = 7400;
    /// WebSocket port; port + 1 when unset, 0 picks a free one.
    std::optional<std::uint16_t> ws_port;
    std::filesystem::path transcript_dir = "transcripts";
    std::uint64_t seed = 0;
    std::vector<RoomConfig> rooms;

    std::uint16_t websocket_port() const;
    const RoomConfig* room(const std::string& name) const;
};

/// Parses and validates a config. Scenario paths are resolved against
/// `base_dir` and loaded. Throws InvalidKey on anything invalid.
ServerConfig server_config_from_json(const Json& json, const std::filesystem::path& base_dir = {});
ServerConfig load_server_config(const std::filesystem::path& path);

/// CRYPTOLAB_PORT and CRYPTOLAB_WS_PORT replace the configured ports.
void apply_env_overrides(ServerConfig& config);

/// Seeds for server-side randomness, all derived from config.seed.
std::uint64_t derive_seed(std::uint64_t base, const std::string& room, const std::string& name);

}  // namespace cryptolab
