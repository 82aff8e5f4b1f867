#include "cryptolab/line_client.hpp"

#include <cstdlib>
#include <deque>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "cryptolab/error.hpp"

namespace cryptolab {
namespace {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;
using Clock = std::chrono::steady_clock;

// Shared plumbing: one io_context, one read always outstanding, completed
// lines queued until someone asks for them.
class ClientBase : public LineConnection {
public:
    std::optional<std::string> receive_line(Millis timeout) override {
        const auto deadline = Clock::now() + timeout;
        while (lines_.empty()) {
            if (failure_) throw ProtocolError("connection closed: " + failure_->message());
            if (!reading_) start_read();
            const auto now = Clock::now();
            if (now >= deadline) return std::nullopt;
            if (io_.stopped()) io_.restart();
            io_.run_one_for(deadline - now);
        }
        std::string line = std::move(lines_.front());
        lines_.pop_front();
        return line;
    }

protected:
    void connect_socket(tcp::socket& socket, const std::string& host, std::uint16_t port, Millis timeout) {
        tcp::resolver resolver(io_);
        beast::error_code ec;
        const auto endpoints = resolver.resolve(host, std::to_string(port), ec);
        if (ec) throw ProtocolError("cannot resolve " + host + ": " + ec.message());
        bool done = false;
        net::async_connect(socket, endpoints, [&](beast::error_code e, const tcp::endpoint&) {
            ec = e;
            done = true;
        });
        run_until(done, timeout);
        if (!done) {
            socket.close(ec);
            throw ProtocolError("timed out connecting to " + host + ":" + std::to_string(port));
        }
        if (ec) throw ProtocolError("cannot connect to " + host + ":" + std::to_string(port) + ": " + ec.message());
    }

    void run_until(const bool& done, Millis timeout) {
        const auto deadline = Clock::now() + timeout;
        while (!done) {
            const auto now = Clock::now();
            if (now >= deadline) return;
            if (io_.stopped()) io_.restart();
            io_.run_one_for(deadline - now);
        }
    }

    void push_text(const std::string& text) {
        std::size_t start = 0;
        while (start < text.size()) {
            auto end = text.find('\n', start);
            if (end == std::string::npos) end = text.size();
            std::string line = text.substr(start, end - start);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) lines_.push_back(std::move(line));
            start = end + 1;
        }
    }

    virtual void start_read() = 0;

    net::io_context io_;
    std::deque<std::string> lines_;
    bool reading_ = false;
    std::optional<beast::error_code> failure_;
};

class TcpClient : public ClientBase {
public:
    TcpClient(const std::string& host, std::uint16_t port, Millis timeout) : socket_(io_), timeout_(timeout) {
        connect_socket(socket_, host, port, timeout);
    }

    void send_line(const std::string& line) override {
        beast::error_code ec;
        net::write(socket_, net::buffer(line + "\n"), ec);
        if (ec) throw ProtocolError("send failed: " + ec.message());
    }

private:
    void start_read() override {
        reading_ = true;
        net::async_read_until(socket_, buffer_, '\n', [this](beast::error_code ec, std::size_t n) {
            reading_ = false;
            if (ec) {
                failure_ = ec;
                return;
            }
            push_text(std::string(net::buffers_begin(buffer_.data()), net::buffers_begin(buffer_.data()) + n));
            buffer_.consume(n);
        });
    }

    tcp::socket socket_;
    net::streambuf buffer_;
    Millis timeout_;
};

class WsClient : public ClientBase {
public:
    WsClient(const std::string& host, std::uint16_t port, Millis timeout) : ws_(io_), timeout_(timeout) {
        connect_socket(ws_.next_layer(), host, port, timeout);
        bool done = false;
        beast::error_code ec;
        ws_.async_handshake(host + ":" + std::to_string(port), "/", [&](beast::error_code e) {
            ec = e;
            done = true;
        });
        run_until(done, timeout);
        if (!done || ec) {
            throw ProtocolError("websocket handshake with " + host + ":" + std::to_string(port) + " failed" +
                                (ec ? ": " + ec.message() : std::string()));
        }
        ws_.text(true);
    }

    ~WsClient() override {
        beast::error_code ignored;
        ws_.next_layer().close(ignored);
    }

    void send_line(const std::string& line) override {
        bool done = false;
        beast::error_code ec;
        ws_.async_write(net::buffer(line), [&](beast::error_code e, std::size_t) {
            ec = e;
            done = true;
        });
        run_until(done, timeout_);
        if (!done) throw ProtocolError("send timed out");
        if (ec) throw ProtocolError("send failed: " + ec.message());
    }

private:
    void start_read() override {
        reading_ = true;
        ws_.async_read(buffer_, [this](beast::error_code ec, std::size_t) {
            reading_ = false;
            if (ec) {
                failure_ = ec;
                return;
            }
            push_text(beast::buffers_to_string(buffer_.data()));
            buffer_.consume(buffer_.size());
        });
    }

    websocket::stream<tcp::socket> ws_;
    beast::flat_buffer buffer_;
    Millis timeout_;
};

bool out_of_band(const WireMessage& m) { return m.type == MessageType::scenario || m.type == MessageType::pong; }

std::string error_reason(const WireMessage& m) {
    return m.payload.is_object() ? m.payload.value("reason", std::string("unspecified")) : std::string("unspecified");
}

}  // namespace

std::optional<WireMessage> LineConnection::receive(Millis timeout) {
    auto line = receive_line(timeout);
    if (!line) return std::nullopt;
    return decode_line(*line);
}

std::unique_ptr<LineConnection> connect_tcp(const std::string& host, std::uint16_t port, Millis timeout) {
    return std::make_unique<TcpClient>(host, port, timeout);
}

std::unique_ptr<LineConnection> connect_ws(const std::string& host, std::uint16_t port, Millis timeout) {
    return std::make_unique<WsClient>(host, port, timeout);
}

std::pair<std::string, std::uint16_t> parse_server_address(const std::string& text) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == text.size()) {
        throw InvalidKey("server address must look like host:port, got '" + text + "'");
    }
    const std::string port_text = text.substr(colon + 1);
    char* end = nullptr;
    const long port = std::strtol(port_text.c_str(), &end, 10);
    if (*end != '\0' || port < 1 || port > 65535) throw InvalidKey("bad port in server address '" + text + "'");
    return {text.substr(0, colon), static_cast<std::uint16_t>(port)};
}

std::pair<std::string, std::uint16_t> default_server_address() {
    const char* env = std::getenv("CRYPTOLAB_SERVER");
    return parse_server_address(env && *env ? env : "127.0.0.1:7400");
}

void run_scripted_session(std::vector<ScriptedClient>& clients, const ScriptedSessionOptions& options) {
    struct Pending {
        std::size_t client;
        WireMessage message;
    };
    std::deque<Pending> pending;
    std::vector<bool> member(clients.size(), false);
    std::vector<std::uint64_t> last_seq(clients.size(), 0);

    auto feed = [&](std::size_t i, const WireMessage& m) {
        clients[i].received.push_back(m);
        last_seq[i] = std::max(last_seq[i], m.seq);
        for (auto& out : clients[i].peer.on_delivery(m)) pending.push_back({i, std::move(out)});
    };
    auto next_message = [&](std::size_t i, Millis wait, bool required) -> std::optional<WireMessage> {
        const auto deadline = Clock::now() + wait;
        for (;;) {
            const auto left = std::chrono::duration_cast<Millis>(deadline - Clock::now());
            auto m = clients[i].connection->receive(std::max(left, Millis(0)));
            if (!m) {
                if (required) throw ProtocolError("timed out waiting for a message to " + clients[i].peer.name());
                return std::nullopt;
            }
            if (m->type == MessageType::error) {
                throw ProtocolError("server refused a message from " + clients[i].peer.name() + ": " + error_reason(*m));
            }
            if (!out_of_band(*m)) return m;
        }
    };

    for (std::size_t i = 0; i < clients.size(); ++i) {
        const auto& state = clients[i].peer.state();
        pending.push_back({i, make_join(state.room, state.name, clients[i].join_payload)});
        for (auto& m : clients[i].peer.on_start()) pending.push_back({i, std::move(m)});
    }

    bool leaving = false;
    for (;;) {
        while (!pending.empty()) {
            Pending next = std::move(pending.front());
            pending.pop_front();
            const std::size_t i = next.client;
            const std::string& name = clients[i].peer.name();
            clients[i].connection->send(next.message);
            if (next.message.type == MessageType::join) member[i] = true;

            std::uint64_t seq = 0;
            for (;;) {
                const auto m = next_message(i, options.timeout, true);
                feed(i, *m);
                if (m->sender == name && m->type == next.message.type) {
                    seq = m->seq;
                    break;
                }
            }
            for (std::size_t j = 0; j < clients.size(); ++j) {
                if (j == i || !member[j]) continue;
                while (last_seq[j] < seq) feed(j, *next_message(j, options.timeout, true));
            }
            if (next.message.type == MessageType::leave) member[i] = false;
        }

        bool more = false;
        for (std::size_t j = 0; j < clients.size(); ++j) {
            if (!member[j]) continue;
            while (auto m = next_message(j, options.settle, false)) {
                feed(j, *m);
                more = true;
            }
        }
        if (more) continue;
        if (!options.leave_at_end || leaving) break;
        leaving = true;
        for (std::size_t i = 0; i < clients.size(); ++i) {
            if (member[i]) pending.push_back({i, make_leave(clients[i].peer.state().room, clients[i].peer.name())});
        }
    }
}

BotReport run_bot(const BotOptions& options, std::ostream* log) {
    if (options.role != "peer" && options.role != "attacker") throw InvalidKey("bot role must be peer or attacker");
    if (options.room.empty() || options.name.empty()) throw InvalidKey("a bot needs a room and a name");
    auto note = [&](const std::string& text) {
        if (log) *log << options.name << ": " << text << std::endl;
    };

    auto conn = options.websocket ? connect_ws(options.host, options.port) : connect_tcp(options.host, options.port);
    BotReport report;

    if (options.role == "attacker") {
        conn->send(make_join(options.room, options.name,
                             Json{{"role", "attacker"}, {"seed", options.seed}, {"strategy", options.strategy}}));
        while (auto m = conn->receive(options.idle)) {
            if (m->type == MessageType::error) {
                report.refused = true;
                report.reason = error_reason(*m);
                note("refused: " + report.reason);
                return report;
            }
            if (out_of_band(*m)) continue;
            report.received.push_back(*m);
            note("intercepted #" + std::to_string(m->seq) + " " + to_string(m->type) + " from " + m->sender);
        }
        conn->send(make_leave(options.room, options.name));
        return report;
    }

    HonestPeerConfig config;
    config.name = options.name;
    config.room = options.room;
    config.initiator = options.initiator;
    config.seed = options.seed;
    HonestPeer peer(config);
    conn->send(make_join(options.room, options.name));
    bool left = false;
    while (auto m = conn->receive(options.idle)) {
        if (m->type == MessageType::error) {
            report.refused = true;
            report.reason = error_reason(*m);
            note("refused: " + report.reason);
            break;
        }
        if (out_of_band(*m)) continue;
        report.received.push_back(*m);
        if (left) {
            if (m->type == MessageType::leave && m->sender == options.name) break;
            continue;
        }
        for (const auto& out : peer.on_delivery(*m)) conn->send(out);
        if (peer.done()) {
            note("shared color computed (hue " + std::to_string(residue_to_color(*peer.state().shared, *peer.state().params).hue) + ")");
            conn->send(make_leave(options.room, options.name));
            left = true;
        }
    }
    report.final_state = peer.state();
    return report;
}

}  // namespace cryptolab
