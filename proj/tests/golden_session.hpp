#pragma once

// Scripted two-client session against a live server, shared by the server
// tests and the acceptance gate.

#include <filesystem>
#include <regex>
#include <set>
#include <string>
#include <thread>

#include <unistd.h>

#include "cryptolab/frequency.hpp"
#include "cryptolab/line_client.hpp"
#include "cryptolab/server.hpp"
#include "cryptolab/transcript.hpp"

namespace golden {

namespace fs = std::filesystem;
using namespace cryptolab;

// Chosen so neither secret shows up as a number anywhere in the file: publics
// 15 and 81, shared 6, hues 19/56/301/22, seq below 20, and both above 59 so
// no wall-clock field can match either.
inline constexpr std::uint64_t alice_secret = 71;
inline constexpr std::uint64_t bob_secret = 88;
inline constexpr const char* room_name = "golden";

inline fs::path golden_file() { return fs::path(CRYPTOLAB_GOLDEN_DIR) / "dh_broadcast.transcript"; }

// Owns a server running on its own thread; ports are picked by the OS.
class TestServer {
public:
    explicit TestServer(ServerConfig config) : server_(std::move(config)) {
        server_.start();
        thread_ = std::thread([this] { server_.run(); });
    }
    ~TestServer() {
        server_.stop();
        thread_.join();
    }
    Server& server() { return server_; }
    std::uint16_t tcp_port() const { return server_.tcp_port(); }
    std::uint16_t ws_port() const { return server_.ws_port(); }

private:
    Server server_;
    std::thread thread_;
};

inline ServerConfig base_config(const fs::path& transcripts) {
    ServerConfig config;
    config.port = 0;
    config.transcript_dir = transcripts;
    RoomConfig room;
    room.name = room_name;
    config.rooms.push_back(room);
    return config;
}

inline fs::path fresh_dir(const std::string& tag) {
    const auto dir = fs::temp_directory_path() / ("cryptolab_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

inline std::unique_ptr<LineConnection> connect(std::uint16_t tcp, std::uint16_t ws, bool websocket) {
    return websocket ? connect_ws("127.0.0.1", ws) : connect_tcp("127.0.0.1", tcp);
}

struct Run {
    std::string raw;
    std::string normalized;
    ParticipantState alice;
    ParticipantState bob;
};

inline Run run_session(bool websocket, const std::string& tag) {
    const auto dir = fresh_dir(tag);
    Run run;
    {
        TestServer ts(base_config(dir));
        std::vector<ScriptedClient> clients;
        const auto params = DhParams::classroom_default();
        clients.push_back({connect(ts.tcp_port(), ts.ws_port(), websocket),
                           HonestPeer({"alice", room_name, true, params, alice_secret, 0}), Json::object(), {}});
        clients.push_back({connect(ts.tcp_port(), ts.ws_port(), websocket),
                           HonestPeer({"bob", room_name, false, params, bob_secret, 0}), Json::object(), {}});
        run_scripted_session(clients);
        run.alice = clients[0].peer.state();
        run.bob = clients[1].peer.state();
    }
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().filename().string().rfind(std::string(room_name) + "-", 0) == 0) {
            run.raw = read_text_file(entry.path());
            run.normalized = normalized_transcript(entry.path());
        }
    }
    fs::remove_all(dir);
    return run;
}

// Every bare integer token in the text.
inline std::set<std::uint64_t> numeric_tokens(const std::string& text) {
    std::set<std::uint64_t> out;
    static const std::regex number(R"((^|[^0-9A-Za-z#])([0-9]+)(?![0-9A-Za-z]))");
    for (auto it = std::sregex_iterator(text.begin(), text.end(), number); it != std::sregex_iterator(); ++it) {
        out.insert(std::stoull((*it)[2].str()));
    }
    return out;
}

inline bool leaks_secret(const std::string& text) {
    if (text.find("secret") != std::string::npos) return true;
    const auto tokens = numeric_tokens(text);
    return tokens.count(alice_secret) > 0 || tokens.count(bob_secret) > 0;
}

}  // namespace golden
