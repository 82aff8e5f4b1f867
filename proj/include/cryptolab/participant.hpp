#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cryptolab/dh_session.hpp"
#include "cryptolab/random.hpp"

namespace cryptolab {

struct HonestPeerConfig {
    std::string name;
    std::string room;
    /// Posts the starting color once somebody else is in the room.
    bool initiator = false;
    DhParams params = DhParams::classroom_default();
    /// Used instead of a seeded draw when set.
    std::optional<std::uint64_t> fixed_secret;
    std::uint64_t seed = 0;
};

/// A participant that follows the role script honestly and automatically,
/// reacting only to the messages it receives. Given the same seed and the same
/// received messages it ends in the same state.
class HonestPeer {
public:
    explicit HonestPeer(HonestPeerConfig config);

    const std::string& name() const noexcept { return config_.name; }
    const ParticipantState& state() const noexcept { return state_; }
    bool done() const noexcept { return state_.phase == DhPhase::shared_computed; }

    /// Messages to send right after joining (normally none).
    std::vector<WireMessage> on_start();
    /// Reacts to a delivered message; returns the messages to send.
    std::vector<WireMessage> on_delivery(const WireMessage& message);

private:
    std::vector<WireMessage> apply(const LocalAction& action);
    std::vector<WireMessage> advance();

    HonestPeerConfig config_;
    Rng rng_;
    ParticipantState state_;
    bool proposed_ = false;
};

}  // namespace cryptolab
