#include "cryptolab/participant.hpp"

namespace cryptolab {

HonestPeer::HonestPeer(HonestPeerConfig config)
    : config_(std::move(config)), rng_(config_.seed), state_(new_participant(config_.name, config_.room)) {}

std::vector<WireMessage> HonestPeer::on_start() { return {}; }

std::vector<WireMessage> HonestPeer::apply(const LocalAction& action) {
    auto result = dh_session_step(state_, SessionInput{action});
    if (!result.accepted()) return {};
    state_ = std::move(result.state);
    return std::move(result.outgoing);
}

std::vector<WireMessage> HonestPeer::advance() {
    std::vector<WireMessage> out;
    auto append = [&out](std::vector<WireMessage> more) {
        for (auto& m : more) out.push_back(std::move(m));
    };
    if (state_.params && state_.phase == DhPhase::await_params) {
        const auto p = state_.params->p();
        const auto secret = config_.fixed_secret ? *config_.fixed_secret : rng_.uniform(1, p - 2);
        append(apply(PickSecret{secret}));
        append(apply(SendPublic{}));
    }
    if (state_.phase == DhPhase::public_sent && state_.pending_peer_public) {
        append(apply(ReceivePublic{}));
        append(apply(ComputeShared{}));
    }
    return out;
}

std::vector<WireMessage> HonestPeer::on_delivery(const WireMessage& message) {
    std::vector<WireMessage> out;
    auto result = dh_session_step(state_, SessionInput{message});
    if (result.accepted()) state_ = std::move(result.state);

    const bool from_other = message.sender != config_.name && message.sender != "server";
    if (from_other && message.type == MessageType::join && !config_.initiator && !state_.params) {
        // lets an initiator who joined later know somebody is here
        out.push_back(make_chat(config_.room, config_.name, "ready"));
    }
    if (from_other && config_.initiator && !proposed_ && !state_.params) {
        proposed_ = true;
        for (auto& m : apply(ProposeParams{config_.params})) out.push_back(std::move(m));
    }
    for (auto& m : advance()) out.push_back(std::move(m));
    return out;
}

}  // namespace cryptolab
