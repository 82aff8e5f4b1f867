#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cryptolab/channel.hpp"
#include "cryptolab/dh_session.hpp"
#include "cryptolab/mitm.hpp"
#include "cryptolab/server_config.hpp"

namespace cryptolab {

/// The listening socket could not be opened (typically: port in use).
class BindError : public Error {
public:
    using Error::Error;
};

/// Hosts the configured rooms over two bindings of the same line protocol:
/// newline-delimited JSON over TCP, and one JSON line per WebSocket text frame.
///
/// Everything (sockets, rooms, transcripts) runs on one io_context driven by
/// the thread that calls run(), so each room has exactly one executor.
class Server {
public:
    explicit Server(ServerConfig config, std::ostream* log = nullptr);
    ~Server();
    Server(const Server&) = delete;
    Server& operator=(const Server&) = delete;

    /// Binds both listeners and starts the configured bots. Throws BindError.
    void start();
    /// Serves until stop() or, after stop_on_signals(), SIGINT/SIGTERM.
    void run();
    /// Safe to call from any thread.
    void stop();
    void stop_on_signals();

    std::uint16_t tcp_port() const;
    std::uint16_t ws_port() const;

    // Snapshots taken on the server's executor; run() must be active in another thread.
    std::vector<TranscriptEntry> transcript(const std::string& room);
    std::optional<AttackerState> attacker_state(const std::string& room);
    std::optional<ParticipantState> bot_state(const std::string& room, const std::string& name);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Loads nothing, just runs: start, stop on SIGINT/SIGTERM, run. Returns the
/// process exit code and reports a bind failure on `err`.
int serve(const ServerConfig& config, std::ostream& out, std::ostream& err);

}  // namespace cryptolab
