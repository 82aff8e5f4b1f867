#include "cryptolab/server.hpp"

#include <algorithm>
#include <chrono>
#include <csignal>
#include <deque>
#include <future>
#include <map>
#include <set>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include "cryptolab/operations.hpp"
#include "cryptolab/room.hpp"
#include "cryptolab/transcript.hpp"

namespace cryptolab {
namespace {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

constexpr std::size_t max_line = 64 * 1024;

class Connection : public std::enable_shared_from_this<Connection> {
public:
    using LineHandler = std::function<void(const std::shared_ptr<Connection>&, std::string)>;
    using CloseHandler = std::function<void(const std::shared_ptr<Connection>&)>;

    virtual ~Connection() = default;
    virtual void start() = 0;
    virtual void send_line(std::string line) = 0;
    virtual std::string binding() const = 0;

    std::string room;
    std::string name;
    bool joined = false;
    LineHandler on_line;
    CloseHandler on_close;

protected:
    void finish() {
        if (closed_) return;
        closed_ = true;
        if (on_close) on_close(shared_from_this());
    }
    void deliver(std::string line) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && on_line) on_line(shared_from_this(), std::move(line));
    }

    bool closed_ = false;
};

class TcpConnection : public Connection {
public:
    explicit TcpConnection(tcp::socket socket) : socket_(std::move(socket)), buffer_(max_line) {}

    void start() override { read(); }
    std::string binding() const override { return "tcp"; }

    void send_line(std::string line) override {
        if (closed_) return;
        outbox_.push_back(std::move(line) + "\n");
        if (!writing_) write();
    }

private:
    void read() {
        net::async_read_until(socket_, buffer_, '\n', [self = shared(), this](beast::error_code ec, std::size_t n) {
            if (ec) {
                finish();
                return;
            }
            std::string line(net::buffers_begin(buffer_.data()), net::buffers_begin(buffer_.data()) + n - 1);
            buffer_.consume(n);
            deliver(std::move(line));
            if (!closed_) read();
        });
    }

    void write() {
        writing_ = true;
        net::async_write(socket_, net::buffer(outbox_.front()), [self = shared(), this](beast::error_code ec, std::size_t) {
            if (ec) {
                finish();
                return;
            }
            outbox_.pop_front();
            if (outbox_.empty()) {
                writing_ = false;
            } else {
                write();
            }
        });
    }

    std::shared_ptr<TcpConnection> shared() { return std::static_pointer_cast<TcpConnection>(shared_from_this()); }

    tcp::socket socket_;
    net::streambuf buffer_;
    std::deque<std::string> outbox_;
    bool writing_ = false;
};

// One text frame per line. A frame holding several newline-separated lines is split.
class WsConnection : public Connection {
public:
    explicit WsConnection(tcp::socket socket) : ws_(std::move(socket)) {}

    std::string binding() const override { return "ws"; }

    void start() override {
        ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
        ws_.read_message_max(max_line);
        ws_.text(true);
        ws_.async_accept([self = shared(), this](beast::error_code ec) {
            if (ec) {
                finish();
                return;
            }
            read();
        });
    }

    void send_line(std::string line) override {
        if (closed_) return;
        outbox_.push_back(std::move(line));
        if (!writing_) write();
    }

private:
    void read() {
        ws_.async_read(buffer_, [self = shared(), this](beast::error_code ec, std::size_t) {
            if (ec) {
                finish();
                return;
            }
            const std::string text = beast::buffers_to_string(buffer_.data());
            buffer_.consume(buffer_.size());
            std::size_t start = 0;
            while (start <= text.size() && !closed_) {
                const auto end = text.find('\n', start);
                deliver(text.substr(start, end == std::string::npos ? std::string::npos : end - start));
                if (end == std::string::npos) break;
                start = end + 1;
            }
            if (!closed_) read();
        });
    }

    void write() {
        writing_ = true;
        ws_.async_write(net::buffer(outbox_.front()), [self = shared(), this](beast::error_code ec, std::size_t) {
            if (ec) {
                finish();
                return;
            }
            outbox_.pop_front();
            if (outbox_.empty()) {
                writing_ = false;
            } else {
                write();
            }
        });
    }

    std::shared_ptr<WsConnection> shared() { return std::static_pointer_cast<WsConnection>(shared_from_this()); }

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    std::deque<std::string> outbox_;
    bool writing_ = false;
};

}  // namespace

struct Server::Impl {
    struct RoomSlot {
        RoomConfig config;
        std::unique_ptr<Room> room;
        std::unique_ptr<TranscriptWriter> writer;
        std::map<std::string, std::vector<std::string>> ops_used;
    };

    net::io_context io;
    ServerConfig config;
    std::ostream* log;
    tcp::acceptor tcp_acceptor{io};
    tcp::acceptor ws_acceptor{io};
    std::optional<net::signal_set> signals;
    std::map<std::string, RoomSlot> rooms;
    std::set<std::shared_ptr<Connection>> connections;

    Impl(ServerConfig c, std::ostream* l) : config(std::move(c)), log(l) {
        for (const auto& rc : config.rooms) {
            RoomSlot slot;
            slot.config = rc;
            slot.room = std::make_unique<Room>(rc.name, rc.mode);
            rooms.emplace(rc.name, std::move(slot));
        }
        for (auto& [name, slot] : rooms) {
            RoomSlot* s = &slot;
            slot.room->set_transcript_sink([this, s](const TranscriptEntry& entry) {
                if (!s->writer) {
                    const auto path = config.transcript_dir / transcript_file_name(s->config.name, utc_date_today());
                    s->writer = std::make_unique<TranscriptWriter>(path);
                    note("room " + s->config.name + ": transcript " + path.string());
                }
                s->writer->append(entry);
            });
        }
    }

    ~Impl() {
        io.stop();
        connections.clear();
    }

    void note(const std::string& text) {
        if (log) *log << text << std::endl;
    }

    std::uint64_t current_seq(const std::string& room) const {
        const auto it = rooms.find(room);
        return it == rooms.end() ? 0 : it->second.room->state().last_seq;
    }

    void reply_error(const std::shared_ptr<Connection>& conn, const std::string& reason, std::string room = {}) {
        if (room.empty() && conn->joined) room = conn->room;
        conn->send_line(encode_line(make_error(room, current_seq(room), reason)));
    }

    void reply_server(const std::shared_ptr<Connection>& conn, MessageType type, const std::string& room, Json payload) {
        WireMessage m;
        m.type = type;
        m.room = room;
        m.sender = "server";
        m.seq = current_seq(room);
        m.payload = std::move(payload);
        conn->send_line(encode_line(m));
    }

    void bind(tcp::acceptor& acceptor, std::uint16_t port, const char* what) {
        try {
            const tcp::endpoint endpoint(net::ip::make_address(config.listen), port);
            acceptor.open(endpoint.protocol());
            acceptor.set_option(net::socket_base::reuse_address(true));
            acceptor.bind(endpoint);
            acceptor.listen();
        } catch (const boost::system::system_error& e) {
            if (acceptor.is_open()) {
                beast::error_code ignored;
                acceptor.close(ignored);
            }
            throw BindError(std::string("cannot listen for ") + what + " on " + config.listen + ":" + std::to_string(port) +
                            ": " + e.code().message());
        }
    }

    void adopt(std::shared_ptr<Connection> conn) {
        conn->on_line = [this](const std::shared_ptr<Connection>& c, std::string line) { handle_line(c, std::move(line)); };
        conn->on_close = [this](const std::shared_ptr<Connection>& c) { handle_close(c); };
        connections.insert(conn);
        conn->start();
    }

    void accept_tcp() {
        tcp_acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
            if (ec == net::error::operation_aborted) return;
            if (!ec) adopt(std::make_shared<TcpConnection>(std::move(socket)));
            accept_tcp();
        });
    }

    void accept_ws() {
        ws_acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
            if (ec == net::error::operation_aborted) return;
            if (!ec) adopt(std::make_shared<WsConnection>(std::move(socket)));
            accept_ws();
        });
    }

    void start_bots() {
        for (auto& [name, slot] : rooms) {
            for (const auto& bot : slot.config.bots) {
                if (bot.role == "attacker") {
                    MitmConfig mc;
                    mc.name = bot.name;
                    mc.seed = bot.seed;
                    mc.keep_legs_distinct = bot.strategy != "naive";
                    slot.room->attach_attacker(std::move(mc));
                } else {
                    HonestPeerConfig pc;
                    pc.name = bot.name;
                    pc.room = name;
                    pc.initiator = bot.initiator;
                    pc.seed = bot.seed;
                    slot.room->add_peer(std::move(pc));
                }
                note("room " + name + ": started " + bot.role + " bot '" + bot.name + "'");
            }
            slot.room->pump();
        }
    }

    void handle_line(const std::shared_ptr<Connection>& conn, std::string line) {
        WireMessage msg;
        try {
            msg = decode_line(line);
        } catch (const ProtocolError& e) {
            reply_error(conn, std::string("malformed message: ") + e.what());
            return;
        }
        switch (msg.type) {
            case MessageType::ping: {
                const std::string room = rooms.count(msg.room) ? msg.room : (conn->joined ? conn->room : std::string());
                reply_server(conn, MessageType::pong, room, Json{{"status", "ok"}, {"rooms", rooms.size()}});
                return;
            }
            case MessageType::join:
                handle_join(conn, msg);
                return;
            case MessageType::scenario:
                handle_scenario(conn, msg);
                return;
            case MessageType::error:
            case MessageType::pong:
                reply_error(conn, "clients do not send " + to_string(msg.type) + " messages");
                return;
            default:
                break;
        }
        if (!conn->joined) {
            reply_error(conn, "join a room first");
            return;
        }
        if (msg.room != conn->room || msg.sender != conn->name) {
            reply_error(conn, "this connection is '" + conn->name + "' in room '" + conn->room + "'");
            return;
        }
        auto& slot = rooms.at(conn->room);
        slot.room->submit(msg);
        slot.room->pump();
        if (msg.type == MessageType::leave && !slot.room->state().is_member(conn->name)) {
            slot.room->disconnect(conn->name);
            conn->joined = false;
            note("room " + conn->room + ": '" + conn->name + "' left");
        }
    }

    void handle_join(const std::shared_ptr<Connection>& conn, const WireMessage& msg) {
        if (conn->joined) {
            reply_error(conn, "already in room '" + conn->room + "' as '" + conn->name + "'");
            return;
        }
        const auto it = rooms.find(msg.room);
        if (it == rooms.end()) {
            reply_error(conn, "no such room '" + msg.room + "'");
            return;
        }
        auto& slot = it->second;
        if (msg.sender.empty() || msg.sender == "server") {
            reply_error(conn, "choose a name other than '" + msg.sender + "'", msg.room);
            return;
        }
        if (!slot.config.admits(msg.sender)) {
            reply_error(conn, "'" + msg.sender + "' is not paired in room '" + msg.room + "'", msg.room);
            return;
        }
        if (slot.room->connected(msg.sender) || slot.room->state().is_member(msg.sender)) {
            reply_error(conn, "name '" + msg.sender + "' is already taken in room '" + msg.room + "'", msg.room);
            return;
        }

        std::weak_ptr<Connection> weak = conn;
        auto sink = [weak](const WireMessage& m) {
            if (auto c = weak.lock()) c->send_line(encode_line(m));
        };
        const bool attacker = msg.payload.is_object() && msg.payload.value("role", std::string()) == "attacker";
        if (attacker) {
            MitmConfig mc;
            mc.name = msg.sender;
            mc.seed = msg.payload.contains("seed") && msg.payload.at("seed").is_number_unsigned()
                          ? msg.payload.at("seed").get<std::uint64_t>()
                          : derive_seed(config.seed, msg.room, msg.sender);
            const auto strategy = msg.payload.value("strategy", std::string("keep-legs-distinct"));
            if (strategy != "keep-legs-distinct" && strategy != "naive") {
                reply_error(conn, "unknown attacker strategy '" + strategy + "'", msg.room);
                return;
            }
            mc.keep_legs_distinct = strategy != "naive";
            try {
                slot.room->attach_attacker(std::move(mc));
            } catch (const ProtocolError& e) {
                reply_error(conn, std::string("attacker role refused: ") + e.what(), msg.room);
                return;
            }
            slot.room->connect(msg.sender, sink);
        } else {
            slot.room->connect(msg.sender, sink);
            slot.room->submit(msg);
        }
        conn->room = msg.room;
        conn->name = msg.sender;
        conn->joined = true;
        slot.room->pump();
        if (!slot.room->state().is_member(msg.sender)) {
            // the room refused the join and has already told the client why
            slot.room->disconnect(msg.sender);
            conn->joined = false;
            return;
        }
        note("room " + msg.room + ": '" + msg.sender + "' joined over " + conn->binding() + (attacker ? " as attacker" : ""));
        if (slot.config.scenario) {
            Json view = public_view(*slot.config.scenario);
            const auto role = slot.config.role_of(msg.sender);
            if (!role.empty()) view["your_role"] = role;
            reply_server(conn, MessageType::scenario, msg.room, std::move(view));
        }
    }

    void handle_scenario(const std::shared_ptr<Connection>& conn, const WireMessage& msg) {
        if (!conn->joined) {
            reply_error(conn, "join a room first");
            return;
        }
        auto& slot = rooms.at(conn->room);
        if (!slot.config.scenario) {
            reply_error(conn, "room '" + conn->room + "' has no scenario");
            return;
        }
        const ScenarioConfig& scenario = *slot.config.scenario;
        auto& used = slot.ops_used[conn->name];
        const Json& p = msg.payload;
        if (p.contains("call") && p.at("call").is_string()) {
            const auto op = p.at("call").get<std::string>();
            Json reply{{"call", op}};
            if (std::find(scenario.allowed_ops.begin(), scenario.allowed_ops.end(), op) == scenario.allowed_ops.end()) {
                reply["error"] = reason_playground;
            } else {
                try {
                    reply["result"] = run_operation(op, p.value("args", Json::object()));
                    used.push_back(op);
                } catch (const Error& e) {
                    reply["error"] = e.what();
                }
            }
            reply_server(conn, MessageType::scenario, conn->room, std::move(reply));
            return;
        }
        if (p.contains("answer")) {
            Submission submission{p.at("answer"), used};
            if (p.contains("ops_used") && p.at("ops_used").is_array()) {
                for (const auto& op : p.at("ops_used")) {
                    if (op.is_string()) submission.ops_used.push_back(op.get<std::string>());
                }
            }
            const auto verdict = scenario_check(scenario, submission);
            Json reply{{"verdict", verdict.pass ? "pass" : "fail"}, {"reason", verdict.reason}};
            if (!verdict.detail.empty()) reply["detail"] = verdict.detail;
            reply_server(conn, MessageType::scenario, conn->room, std::move(reply));
            return;
        }
        reply_error(conn, "scenario requests carry either \"call\" or \"answer\"");
    }

    void handle_close(const std::shared_ptr<Connection>& conn) {
        connections.erase(conn);
        if (!conn->joined) return;
        conn->joined = false;
        auto& slot = rooms.at(conn->room);
        slot.room->disconnect(conn->name);
        slot.room->pump();
        note("room " + conn->room + ": '" + conn->name + "' disconnected");
    }

    template <class F>
    auto on_executor(F fn) -> decltype(fn()) {
        if (io.get_executor().running_in_this_thread()) return fn();
        auto task = std::make_shared<std::packaged_task<decltype(fn())()>>(std::move(fn));
        auto result = task->get_future();
        net::post(io, [task] { (*task)(); });
        if (result.wait_for(std::chrono::seconds(10)) != std::future_status::ready) {
            throw Error("server did not answer; is run() active?");
        }
        return result.get();
    }
};

Server::Server(ServerConfig config, std::ostream* log) : impl_(std::make_unique<Impl>(std::move(config), log)) {}

Server::~Server() = default;

void Server::start() {
    impl_->bind(impl_->tcp_acceptor, impl_->config.port, "tcp");
    try {
        impl_->bind(impl_->ws_acceptor, impl_->config.websocket_port(), "websocket");
    } catch (...) {
        beast::error_code ignored;
        impl_->tcp_acceptor.close(ignored);
        throw;
    }
    impl_->accept_tcp();
    impl_->accept_ws();
    impl_->start_bots();
    impl_->note("listening on " + impl_->config.listen + " tcp " + std::to_string(tcp_port()) + ", websocket " +
                std::to_string(ws_port()));
}

void Server::run() { impl_->io.run(); }

void Server::stop() {
    net::post(impl_->io, [impl = impl_.get()] { impl->io.stop(); });
}

void Server::stop_on_signals() {
    impl_->signals.emplace(impl_->io, SIGINT, SIGTERM);
    impl_->signals->async_wait([impl = impl_.get()](beast::error_code ec, int signal) {
        if (ec) return;
        impl->note("signal " + std::to_string(signal) + ", shutting down");
        impl->io.stop();
    });
}

std::uint16_t Server::tcp_port() const { return impl_->tcp_acceptor.local_endpoint().port(); }
std::uint16_t Server::ws_port() const { return impl_->ws_acceptor.local_endpoint().port(); }

std::vector<TranscriptEntry> Server::transcript(const std::string& room) {
    return impl_->on_executor([this, room] {
        const auto it = impl_->rooms.find(room);
        return it == impl_->rooms.end() ? std::vector<TranscriptEntry>{} : it->second.room->transcript();
    });
}

std::optional<AttackerState> Server::attacker_state(const std::string& room) {
    return impl_->on_executor([this, room]() -> std::optional<AttackerState> {
        const auto it = impl_->rooms.find(room);
        if (it == impl_->rooms.end() || !it->second.room->attacker()) return std::nullopt;
        return it->second.room->attacker()->state();
    });
}

std::optional<ParticipantState> Server::bot_state(const std::string& room, const std::string& name) {
    return impl_->on_executor([this, room, name]() -> std::optional<ParticipantState> {
        const auto it = impl_->rooms.find(room);
        if (it == impl_->rooms.end()) return std::nullopt;
        const HonestPeer* peer = it->second.room->peer(name);
        if (!peer) return std::nullopt;
        return peer->state();
    });
}

int serve(const ServerConfig& config, std::ostream& out, std::ostream& err) {
    Server server(config, &out);
    try {
        server.start();
    } catch (const BindError& e) {
        err << "cryptolab serve: " << e.what() << "\n";
        return 1;
    }
    server.stop_on_signals();
    server.run();
    return 0;
}

}  // namespace cryptolab
