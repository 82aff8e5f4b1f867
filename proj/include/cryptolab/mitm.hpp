#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cryptolab/channel.hpp"
#include "cryptolab/dh.hpp"
#include "cryptolab/random.hpp"

namespace cryptolab {

/// The attacker's half of the exchange with one victim: the attacker's key
/// for that side, what the victim posted, and the secret they end up sharing.
struct MitmLeg {
    std::string victim;
    std::optional<std::uint64_t> attacker_secret;
    std::optional<std::uint64_t> attacker_public;
    std::optional<std::uint64_t> victim_public;
    std::optional<std::uint64_t> shared;

    bool operator==(const MitmLeg&) const = default;
};

struct MitmConfig {
    std::string name = "mallory";
    std::uint64_t seed = 0;
    /// Fixed attacker secrets per victim (otherwise drawn from the seed).
    std::map<std::string, std::uint64_t> fixed_secrets;
    /// Redraw the second key so the two legs never end on the same secret.
    bool keep_legs_distinct = true;

    bool operator==(const MitmConfig&) const = default;
};

struct AttackerState {
    MitmConfig config;
    std::optional<DhParams> params;
    std::vector<std::string> victims;  // in order of appearance
    std::map<std::string, MitmLeg> legs;
    std::uint64_t substitutions = 0;
    Rng rng{0};

    const MitmLeg* leg(const std::string& victim) const;
    bool operator==(const AttackerState&) const = default;
};

AttackerState new_attacker(MitmConfig config, std::optional<DhParams> params = std::nullopt);

struct MitmOutcome {
    RelayDecision decision;
    AttackerState state;
};

/// One interception. Parameters are learned from dh_params (or given up front).
/// Each victim's dh_public is replaced by the attacker's own public value for
/// the other side, so the attacker ends up sharing one secret with each victim
/// while the victims believe they share one with each other. Everything that
/// is not part of the exchange is forwarded untouched.
MitmOutcome mitm_attack(const AttackerState& state, const WireMessage& intercepted,
                        const std::optional<DhParams>& params = std::nullopt);

/// Stateful wrapper usable as a relay Interceptor.
class MitmBot {
public:
    explicit MitmBot(MitmConfig config, std::optional<DhParams> params = std::nullopt)
        : state_(new_attacker(std::move(config), std::move(params))) {}

    RelayDecision intercept(const WireMessage& message);
    Interceptor interceptor();
    const AttackerState& state() const noexcept { return state_; }

private:
    AttackerState state_;
};

}  // namespace cryptolab
