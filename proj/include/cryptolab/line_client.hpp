#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cryptolab/participant.hpp"
#include "cryptolab/wire.hpp"

namespace cryptolab {

using Millis = std::chrono::milliseconds;

/// A blocking client for either binding of the line protocol.
class LineConnection {
public:
    virtual ~LineConnection() = default;

    virtual void send_line(const std::string& line) = 0;
    /// Next line, or nullopt if none arrived within `timeout`. Throws
    /// ProtocolError once the server has closed the connection.
    virtual std::optional<std::string> receive_line(Millis timeout) = 0;

    void send(const WireMessage& message) { send_line(encode_line(message)); }
    std::optional<WireMessage> receive(Millis timeout);
};

std::unique_ptr<LineConnection> connect_tcp(const std::string& host, std::uint16_t port, Millis timeout = Millis(5000));
std::unique_ptr<LineConnection> connect_ws(const std::string& host, std::uint16_t port, Millis timeout = Millis(5000));

/// "host:port" from CRYPTOLAB_SERVER, or 127.0.0.1:7400.
std::pair<std::string, std::uint16_t> default_server_address();
std::pair<std::string, std::uint16_t> parse_server_address(const std::string& text);

/// One honest participant driven over a real connection.
struct ScriptedClient {
    std::unique_ptr<LineConnection> connection;
    HonestPeer peer;
    Json join_payload = Json::object();
    std::vector<WireMessage> received;
};

struct ScriptedSessionOptions {
    Millis timeout{5000};
    /// How long a quiet connection is watched before the session counts as settled.
    Millis settle{100};
    bool leave_at_end = true;
};

/// Runs the clients in lock-step: one message is in flight at a time, and the
/// next is sent only after its sender has seen the echo and every other
/// member has read up to it. Clients react in list order, and their replies
/// queue in that order, so a fixed set of clients and seeds always yields the
/// same room transcript. Throws ProtocolError on an error reply or a timeout.
void run_scripted_session(std::vector<ScriptedClient>& clients, const ScriptedSessionOptions& options = {});

struct BotOptions {
    std::string role;  // "peer" or "attacker"
    std::string host = "127.0.0.1";
    std::uint16_t port = 7400;
    bool websocket = false;
    std::string room;
    std::string name;
    std::uint64_t seed = 0;
    bool initiator = false;
    std::string strategy = "keep-legs-distinct";
    /// The bot stops after this long without traffic.
    Millis idle{30000};
};

struct BotReport {
    bool refused = false;
    std::string reason;
    std::optional<ParticipantState> final_state;  // peers only
    std::vector<WireMessage> received;
};

/// Joins a room over the network and acts: a peer runs the exchange honestly
/// and leaves once its shared color is computed; an attacker asks the server to
/// relay the room through it and reports what it intercepted until the room
/// goes quiet.
BotReport run_bot(const BotOptions& options, std::ostream* log = nullptr);

}  // namespace cryptolab
