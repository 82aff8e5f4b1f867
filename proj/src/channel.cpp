#include "cryptolab/channel.hpp"

#include <algorithm>

namespace cryptolab {
namespace {

const std::string* relay_attacker(const ChannelMode& mode) {
    if (const auto* relay = std::get_if<Relay>(&mode)) return &relay->attacker;
    return nullptr;
}

void apply_membership(const WireMessage& message, RoomState& room, bool before_delivery) {
    if (before_delivery && message.type == MessageType::join && !room.is_member(message.sender)) {
        room.members.push_back(message.sender);
    }
    if (!before_delivery && message.type == MessageType::leave) {
        std::erase(room.members, message.sender);
    }
}

}  // namespace

std::string describe(const ChannelMode& mode) {
    if (const auto* attacker = relay_attacker(mode)) return "relay(" + *attacker + ")";
    return "broadcast";
}

bool RoomState::is_member(const std::string& who) const {
    return std::find(members.begin(), members.end(), who) != members.end();
}

DeliveryResult channel_deliver(const WireMessage& message, RoomState& room, const ChannelMode& mode,
                               const Interceptor& interceptor) {
    if (message.room != room.name) {
        throw ChannelError("message for room '" + message.room + "' sent to room '" + room.name + "'");
    }
    if (message.type == MessageType::join) {
        if (room.is_member(message.sender)) {
            throw ChannelError("name '" + message.sender + "' is already in room '" + room.name + "'");
        }
    } else if (!room.is_member(message.sender)) {
        throw ChannelError("'" + message.sender + "' is not a member of room '" + room.name + "'");
    }
    if (message.seq != room.last_seq + 1) {
        throw ChannelError("stale sequence number " + std::to_string(message.seq) + ", expected " +
                               std::to_string(room.last_seq + 1),
                           room.last_seq + 1);
    }

    room.last_seq = message.seq;
    apply_membership(message, room, true);

    DeliveryResult result;
    result.entry.seq = message.seq;

    const std::string* attacker = relay_attacker(mode);
    if (!attacker || message.sender == *attacker) {
        for (const auto& member : room.members) result.deliveries.push_back({member, message});
        result.entry.delivered = message;
        apply_membership(message, room, false);
        return result;
    }

    // relay: the attacker hears it first
    if (room.is_member(*attacker)) result.deliveries.push_back({*attacker, message});
    RelayDecision decision = interceptor ? interceptor(message) : RelayDecision::forward();

    std::optional<WireMessage> onward;
    switch (decision.action) {
        case RelayAction::forward:
            onward = message;
            break;
        case RelayAction::substitute: {
            if (!decision.replacement) throw ChannelError("substitution without a replacement message");
            WireMessage replacement = std::move(*decision.replacement);
            // the authority owns ordering and routing fields
            replacement.seq = message.seq;
            replacement.room = message.room;
            replacement.sender = message.sender;
            replacement.type = message.type;
            onward = std::move(replacement);
            result.entry.original = message;
            break;
        }
        case RelayAction::drop:
            result.entry.original = message;
            break;
    }

    for (const auto& member : room.members) {
        if (member == *attacker) continue;
        if (member == message.sender) {
            result.deliveries.push_back({member, message});
        } else if (onward) {
            result.deliveries.push_back({member, *onward});
        }
    }
    result.entry.delivered = std::move(onward);
    apply_membership(message, room, false);
    return result;
}

std::vector<WireMessage> participant_view(const std::vector<TranscriptEntry>& transcript, const std::string& name,
                                          const ChannelMode& mode) {
    std::vector<WireMessage> view;
    RoomState room;
    const std::string* attacker = relay_attacker(mode);
    for (const auto& entry : transcript) {
        const WireMessage& sent = entry.sent();
        apply_membership(sent, room, true);
        if (room.is_member(name)) {
            if (!attacker || sent.sender == *attacker || name == *attacker || name == sent.sender) {
                view.push_back(sent);
            } else if (entry.delivered) {
                view.push_back(*entry.delivered);
            }
        }
        apply_membership(sent, room, false);
    }
    return view;
}

}  // namespace cryptolab
