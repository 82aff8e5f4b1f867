#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cryptolab/dh.hpp"
#include "cryptolab/wire.hpp"

namespace cryptolab {

enum class DhPhase { await_params, secret_chosen, public_sent, peer_received, shared_computed };

std::string to_string(DhPhase phase);

/// One participant's view of a color exchange. The secret lives only here.
struct ParticipantState {
    std::string name;
    std::string room;
    DhPhase phase = DhPhase::await_params;
    std::optional<DhParams> params;
    std::optional<std::uint64_t> secret;
    std::optional<std::uint64_t> own_public;
    std::optional<std::string> peer;
    /// Latest public value the peer posted, not yet acknowledged.
    std::optional<std::uint64_t> pending_peer_public;
    std::optional<std::uint64_t> peer_public;
    std::optional<std::uint64_t> shared;
    bool degenerate = false;

    bool operator==(const ParticipantState&) const = default;
};

ParticipantState new_participant(std::string name, std::string room);

// Local actions a student takes.
struct ProposeParams {
    DhParams params;
};
struct PickSecret {
    std::uint64_t secret;
};
struct SendPublic {};
/// Accept the peer's public value: the one seen on the channel, or a value typed in.
struct ReceivePublic {
    std::optional<std::uint64_t> value;
};
struct ComputeShared {};

using LocalAction = std::variant<ProposeParams, PickSecret, SendPublic, ReceivePublic, ComputeShared>;
using SessionInput = std::variant<WireMessage, LocalAction>;

std::string action_name(const LocalAction& action);

struct StepResult {
    ParticipantState state;
    std::vector<WireMessage> outgoing;  // seq left at 0; the room assigns it
    std::optional<std::string> rejection;

    bool accepted() const noexcept { return !rejection.has_value(); }
};

/// Deterministic state machine:
///   await_params -> secret_chosen -> public_sent -> peer_received -> shared_computed
/// A rejected input leaves the state unchanged and says why. Outgoing
/// dh_public messages carry the public value and its color, never the secret.
/// Incoming messages that do not concern the exchange are ignored.
StepResult dh_session_step(const ParticipantState& state, const SessionInput& input);

}  // namespace cryptolab
