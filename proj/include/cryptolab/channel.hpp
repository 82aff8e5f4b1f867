#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cryptolab/error.hpp"
#include "cryptolab/wire.hpp"

namespace cryptolab {

/// Everyone hears everything, verbatim.
struct Broadcast {
    bool operator==(const Broadcast&) const = default;
};

/// Every message from a victim passes through `attacker`, who may forward,
/// substitute or drop it before the other members see it.
struct Relay {
    std::string attacker;

    bool operator==(const Relay&) const = default;
};

using ChannelMode = std::variant<Broadcast, Relay>;

std::string describe(const ChannelMode& mode);

struct RoomState {
    std::string name;
    std::vector<std::string> members;  // join order
    std::uint64_t last_seq = 0;

    bool is_member(const std::string& name) const;
};

enum class RelayAction { forward, substitute, drop };

struct RelayDecision {
    RelayAction action = RelayAction::forward;
    std::optional<WireMessage> replacement;

    static RelayDecision forward() { return {}; }
    static RelayDecision drop() { return {RelayAction::drop, std::nullopt}; }
    static RelayDecision substitute(WireMessage replacement) { return {RelayAction::substitute, std::move(replacement)}; }
};

/// The attacker's hook in relay mode. Called once per message from a victim.
using Interceptor = std::function<RelayDecision(const WireMessage&)>;

struct TranscriptEntry {
    std::uint64_t seq = 0;
    /// What the victims saw; empty when the attacker dropped the message.
    std::optional<WireMessage> delivered;
    /// The message as sent, recorded only when it was substituted or dropped.
    std::optional<WireMessage> original;
    /// Wall-clock metadata; never part of golden comparisons.
    std::string wall_time;

    /// The message as its sender wrote it.
    const WireMessage& sent() const { return original ? *original : *delivered; }
    bool substituted() const { return original.has_value() && delivered.has_value(); }
    bool dropped() const { return !delivered.has_value(); }
};

struct Delivery {
    std::string recipient;
    WireMessage message;
};

struct DeliveryResult {
    std::vector<Delivery> deliveries;
    TranscriptEntry entry;
};

/// A message the channel refused. `expected_seq` is set for stale sequence numbers.
class ChannelError : public ProtocolError {
public:
    ChannelError(const std::string& what, std::optional<std::uint64_t> expected_seq = std::nullopt)
        : ProtocolError(what), expected_seq_(expected_seq) {}

    std::optional<std::uint64_t> expected_seq() const noexcept { return expected_seq_; }

private:
    std::optional<std::uint64_t> expected_seq_;
};

/// Routes one message through the room.
///
/// The message must carry seq = last_seq + 1 and come from a member (a join
/// from a non-member adds it). Broadcast: every member, sender included,
/// gets an identical copy. Relay: the attacker gets the original first, the
/// interceptor decides, and the remaining members get the forwarded or
/// substituted copy; the sender gets its own original back. Messages from the
/// attacker itself go to everyone unchanged. A leave is delivered before the
/// sender is removed.
DeliveryResult channel_deliver(const WireMessage& message, RoomState& room, const ChannelMode& mode,
                               const Interceptor& interceptor = {});

/// The messages one participant received, in order, reconstructed from a transcript.
std::vector<WireMessage> participant_view(const std::vector<TranscriptEntry>& transcript, const std::string& name,
                                          const ChannelMode& mode);

}  // namespace cryptolab
