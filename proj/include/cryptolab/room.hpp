#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cryptolab/channel.hpp"
#include "cryptolab/mitm.hpp"
#include "cryptolab/participant.hpp"

namespace cryptolab {

/// Receives the messages the channel delivers to one participant.
using DeliverFn = std::function<void(const WireMessage&)>;
using TranscriptSink = std::function<void(const TranscriptEntry&)>;

/// The single authority for one room: it owns the RoomState, stamps sequence
/// numbers and routes every message through channel_deliver. Submitted
/// messages wait in a FIFO queue and are processed one at a time by pump(),
/// so bots that answer during a delivery are queued behind the message that
/// triggered them.
///
/// Not thread-safe. Whoever owns a Room must call it from one executor.
class Room {
public:
    Room(std::string name, ChannelMode mode);

    const std::string& name() const noexcept { return state_.name; }
    const RoomState& state() const noexcept { return state_; }
    const ChannelMode& mode() const noexcept { return mode_; }
    const std::vector<TranscriptEntry>& transcript() const noexcept { return transcript_; }

    /// Where deliveries for `participant` go. Replaces any earlier endpoint.
    void connect(const std::string& participant, DeliverFn deliver);
    /// Drops the endpoint and, for a member, queues its leave.
    void disconnect(const std::string& participant);
    bool connected(const std::string& participant) const;

    void set_transcript_sink(TranscriptSink sink) { sink_ = std::move(sink); }

    /// Queues a message. A seq of 0 asks the room to assign the next one; any
    /// other value is checked against the room's order.
    void submit(WireMessage message);

    /// Processes queued messages until the queue is empty. A rejected message
    /// is answered with an error message to its sender's endpoint.
    void pump();

    /// Adds an honest in-process participant and queues its join.
    void add_peer(HonestPeerConfig config);
    const HonestPeer* peer(const std::string& participant) const;

    /// Installs the in-process attacker and queues its join. Refused (with
    /// ProtocolError) unless the room relays through a participant of the
    /// same name.
    void attach_attacker(MitmConfig config, std::optional<DhParams> params = std::nullopt);
    const MitmBot* attacker() const noexcept { return attacker_.get(); }

private:
    void process(WireMessage message);

    RoomState state_;
    ChannelMode mode_;
    std::deque<WireMessage> queue_;
    std::map<std::string, DeliverFn> endpoints_;
    std::map<std::string, std::unique_ptr<HonestPeer>> peers_;
    std::unique_ptr<MitmBot> attacker_;
    std::vector<TranscriptEntry> transcript_;
    TranscriptSink sink_;
    bool pumping_ = false;
};

}  // namespace cryptolab
