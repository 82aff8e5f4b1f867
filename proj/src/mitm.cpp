#include "cryptolab/mitm.hpp"

#include <algorithm>

#include "cryptolab/error.hpp"
#include "cryptolab/modmath.hpp"

namespace cryptolab {
namespace {

constexpr int max_redraws = 1000;

std::optional<std::string> other_victim(const AttackerState& state, const std::string& sender) {
    for (const auto& v : state.victims) {
        if (v != sender) return v;
    }
    return std::nullopt;
}

}  // namespace

const MitmLeg* AttackerState::leg(const std::string& victim) const {
    const auto it = legs.find(victim);
    return it == legs.end() ? nullptr : &it->second;
}

AttackerState new_attacker(MitmConfig config, std::optional<DhParams> params) {
    AttackerState state;
    state.rng = Rng(config.seed);
    state.config = std::move(config);
    state.params = std::move(params);
    return state;
}

MitmOutcome mitm_attack(const AttackerState& state, const WireMessage& intercepted,
                        const std::optional<DhParams>& params) {
    AttackerState next = state;
    if (params && !next.params) next.params = params;

    const std::string& sender = intercepted.sender;
    if (sender != next.config.name && sender != "server" &&
        std::find(next.victims.begin(), next.victims.end(), sender) == next.victims.end()) {
        next.victims.push_back(sender);
    }

    if (intercepted.type == MessageType::dh_params) {
        if (!next.params) {
            try {
                next.params = params_from_json(intercepted.payload);
            } catch (const Error&) {
                // let a broken proposal through; the victims will reject it
            }
        }
        return {RelayDecision::forward(), std::move(next)};
    }
    if (intercepted.type != MessageType::dh_public || !next.params) return {RelayDecision::forward(), std::move(next)};

    const auto recipient = other_victim(next, sender);
    if (!recipient) return {RelayDecision::forward(), std::move(next)};

    std::uint64_t value = 0;
    try {
        value = dh_public_value(intercepted);
    } catch (const Error&) {
        return {RelayDecision::forward(), std::move(next)};
    }
    const DhParams& dh = *next.params;
    if (value < 1 || value >= dh.p()) return {RelayDecision::forward(), std::move(next)};

    MitmLeg& sender_leg = next.legs[sender];
    sender_leg.victim = sender;
    sender_leg.victim_public = value;
    if (sender_leg.attacker_secret) sender_leg.shared = modpow(value, *sender_leg.attacker_secret, dh.p());

    MitmLeg& recipient_leg = next.legs[*recipient];
    recipient_leg.victim = *recipient;
    if (!recipient_leg.attacker_secret) {
        const auto fixed = next.config.fixed_secrets.find(*recipient);
        std::uint64_t secret = 0;
        if (fixed != next.config.fixed_secrets.end()) {
            secret = DhKeyPair::from_secret(dh, fixed->second).secret();
        } else {
            secret = next.rng.uniform(1, dh.p() - 2);
            const auto& other = next.legs[sender];
            if (next.config.keep_legs_distinct && recipient_leg.victim_public && other.shared) {
                for (int i = 0; i < max_redraws && modpow(*recipient_leg.victim_public, secret, dh.p()) == *other.shared; ++i) {
                    secret = next.rng.uniform(1, dh.p() - 2);
                }
            }
        }
        recipient_leg.attacker_secret = secret;
        recipient_leg.attacker_public = modpow(dh.g(), secret, dh.p());
        if (recipient_leg.victim_public) {
            recipient_leg.shared = modpow(*recipient_leg.victim_public, secret, dh.p());
        }
    }

    ++next.substitutions;
    WireMessage replacement = make_dh_public(intercepted.room, sender, *recipient_leg.attacker_public, dh);
    replacement.seq = intercepted.seq;
    return {RelayDecision::substitute(std::move(replacement)), std::move(next)};
}

RelayDecision MitmBot::intercept(const WireMessage& message) {
    auto outcome = mitm_attack(state_, message);
    state_ = std::move(outcome.state);
    return std::move(outcome.decision);
}

Interceptor MitmBot::interceptor() {
    return [this](const WireMessage& message) { return intercept(message); };
}

}  // namespace cryptolab
