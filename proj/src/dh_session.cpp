#include "cryptolab/dh_session.hpp"

#include "cryptolab/error.hpp"

namespace cryptolab {
namespace {

StepResult reject(const ParticipantState& state, std::string why) { return {state, {}, std::move(why)}; }
StepResult unchanged(const ParticipantState& state) { return {state, {}, std::nullopt}; }

bool in_range(std::uint64_t value, const DhParams& params) { return value >= 1 && value < params.p(); }

StepResult on_message(const ParticipantState& state, const WireMessage& message) {
    if (message.sender == state.name) return unchanged(state);

    if (message.type == MessageType::dh_params) {
        DhParams params = [&] {
            try {
                return params_from_json(message.payload);
            } catch (const Error& e) {
                throw ProtocolError(e.what());
            }
        }();
        if (state.params) {
            if (*state.params == params) return unchanged(state);
            return reject(state, "parameters were already agreed");
        }
        ParticipantState next = state;
        next.params = params;
        return {next, {}, std::nullopt};
    }

    if (message.type == MessageType::dh_public) {
        if (state.peer && message.sender != *state.peer) return unchanged(state);
        if (!state.params) return reject(state, "a public color arrived before the starting color was agreed");
        if (state.phase == DhPhase::peer_received || state.phase == DhPhase::shared_computed) return unchanged(state);
        const auto value = dh_public_value(message);
        if (!in_range(value, *state.params)) {
            return reject(state, "public value " + std::to_string(value) + " is outside [1, " +
                                     std::to_string(state.params->p()) + ")");
        }
        ParticipantState next = state;
        next.peer = message.sender;
        next.pending_peer_public = value;
        return {next, {}, std::nullopt};
    }
    return unchanged(state);
}

StepResult on_action(const ParticipantState& state, const LocalAction& action) {
    return std::visit(
        [&](const auto& a) -> StepResult {
            using A = std::decay_t<decltype(a)>;
            ParticipantState next = state;

            if constexpr (std::is_same_v<A, ProposeParams>) {
                if (state.params) return reject(state, "the starting color is already agreed");
                next.params = a.params;
                return {next, {make_dh_params(state.room, state.name, a.params)}, std::nullopt};

            } else if constexpr (std::is_same_v<A, PickSecret>) {
                if (!state.params) return reject(state, "wait until the starting color is agreed");
                if (state.phase != DhPhase::await_params) return reject(state, "you already picked your secret");
                if (a.secret < 1 || a.secret >= state.params->p() - 1) {
                    return reject(state, "your secret must be between 1 and " + std::to_string(state.params->p() - 2));
                }
                const auto pair = DhKeyPair::from_secret(*state.params, a.secret);
                next.secret = pair.secret();
                next.own_public = pair.public_value();
                next.phase = DhPhase::secret_chosen;
                return {next, {}, std::nullopt};

            } else if constexpr (std::is_same_v<A, SendPublic>) {
                if (state.phase == DhPhase::await_params) return reject(state, "pick your secret first");
                if (state.phase != DhPhase::secret_chosen) return reject(state, "you already sent your color");
                next.phase = DhPhase::public_sent;
                return {next, {make_dh_public(state.room, state.name, *state.own_public, *state.params)}, std::nullopt};

            } else if constexpr (std::is_same_v<A, ReceivePublic>) {
                if (state.phase == DhPhase::await_params || state.phase == DhPhase::secret_chosen) {
                    return reject(state, "send your own color first");
                }
                if (state.phase != DhPhase::public_sent) return reject(state, "you already have your partner's color");
                const auto value = a.value ? a.value : state.pending_peer_public;
                if (!value) return reject(state, "wait for your partner's color");
                if (!in_range(*value, *state.params)) {
                    return reject(state, "that color's number must be between 1 and " +
                                             std::to_string(state.params->p() - 1));
                }
                next.peer_public = *value;
                next.pending_peer_public.reset();
                next.phase = DhPhase::peer_received;
                return {next, {}, std::nullopt};

            } else {
                static_assert(std::is_same_v<A, ComputeShared>);
                if (state.phase == DhPhase::shared_computed) return reject(state, "the shared color is already computed");
                if (state.phase != DhPhase::peer_received) return reject(state, "wait for your partner's color");
                const auto pair = DhKeyPair::from_secret(*state.params, *state.secret);
                const auto shared = dh_shared_secret(pair, *state.peer_public, *state.params);
                next.shared = shared.value;
                next.degenerate = shared.degenerate;
                next.phase = DhPhase::shared_computed;
                return {next, {make_dh_done(state.room, state.name)}, std::nullopt};
            }
        },
        action);
}

}  // namespace

std::string to_string(DhPhase phase) {
    switch (phase) {
        case DhPhase::await_params: return "AwaitParams";
        case DhPhase::secret_chosen: return "SecretChosen";
        case DhPhase::public_sent: return "PublicSent";
        case DhPhase::peer_received: return "PeerReceived";
        case DhPhase::shared_computed: return "SharedComputed";
    }
    return "?";
}

ParticipantState new_participant(std::string name, std::string room) {
    ParticipantState state;
    state.name = std::move(name);
    state.room = std::move(room);
    return state;
}

std::string action_name(const LocalAction& action) {
    return std::visit(
        [](const auto& a) -> std::string {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, ProposeParams>) return "propose-params";
            else if constexpr (std::is_same_v<A, PickSecret>) return "pick-secret";
            else if constexpr (std::is_same_v<A, SendPublic>) return "send-public";
            else if constexpr (std::is_same_v<A, ReceivePublic>) return "receive-public";
            else return "compute-shared";
        },
        action);
}

StepResult dh_session_step(const ParticipantState& state, const SessionInput& input) {
    try {
        if (const auto* message = std::get_if<WireMessage>(&input)) return on_message(state, *message);
        return on_action(state, std::get<LocalAction>(input));
    } catch (const Error& e) {
        return reject(state, e.what());
    }
}

}  // namespace cryptolab
