#include "cryptolab/room.hpp"

#include "cryptolab/error.hpp"
#include "cryptolab/transcript.hpp"

namespace cryptolab {

Room::Room(std::string name, ChannelMode mode) : mode_(std::move(mode)) { state_.name = std::move(name); }

void Room::connect(const std::string& participant, DeliverFn deliver) { endpoints_[participant] = std::move(deliver); }

void Room::disconnect(const std::string& participant) {
    endpoints_.erase(participant);
    if (state_.is_member(participant)) submit(make_leave(state_.name, participant));
}

bool Room::connected(const std::string& participant) const { return endpoints_.count(participant) > 0; }

void Room::submit(WireMessage message) { queue_.push_back(std::move(message)); }

void Room::pump() {
    // a bot reacting mid-delivery lands here again; the outer loop picks its message up
    if (pumping_) return;
    pumping_ = true;
    try {
        while (!queue_.empty()) {
            WireMessage next = std::move(queue_.front());
            queue_.pop_front();
            process(std::move(next));
        }
    } catch (...) {
        pumping_ = false;
        throw;
    }
    pumping_ = false;
}

void Room::process(WireMessage message) {
    if (message.seq == 0) message.seq = state_.last_seq + 1;
    Interceptor interceptor;
    if (attacker_) interceptor = attacker_->interceptor();

    DeliveryResult result;
    try {
        result = channel_deliver(message, state_, mode_, interceptor);
    } catch (const ChannelError& e) {
        const auto it = endpoints_.find(message.sender);
        if (it != endpoints_.end()) it->second(make_error(state_.name, state_.last_seq, e.what()));
        return;
    }

    result.entry.wall_time = utc_timestamp_now();
    transcript_.push_back(result.entry);
    if (sink_) sink_(result.entry);

    for (const auto& delivery : result.deliveries) {
        const auto it = endpoints_.find(delivery.recipient);
        if (it != endpoints_.end()) it->second(delivery.message);
    }
}

void Room::add_peer(HonestPeerConfig config) {
    const std::string who = config.name;
    if (peers_.count(who) || endpoints_.count(who)) throw ProtocolError("name '" + who + "' is already taken");
    config.room = state_.name;
    auto peer = std::make_unique<HonestPeer>(std::move(config));
    HonestPeer* raw = peer.get();
    peers_[who] = std::move(peer);
    connect(who, [this, raw](const WireMessage& message) {
        for (auto& reply : raw->on_delivery(message)) submit(std::move(reply));
    });
    submit(make_join(state_.name, who));
    for (auto& message : raw->on_start()) submit(std::move(message));
}

const HonestPeer* Room::peer(const std::string& participant) const {
    const auto it = peers_.find(participant);
    return it == peers_.end() ? nullptr : it->second.get();
}

void Room::attach_attacker(MitmConfig config, std::optional<DhParams> params) {
    const auto* relay = std::get_if<Relay>(&mode_);
    if (!relay) throw ProtocolError("room '" + state_.name + "' is in broadcast mode; there is no one to relay through");
    if (relay->attacker != config.name) {
        throw ProtocolError("room '" + state_.name + "' relays through '" + relay->attacker + "', not '" + config.name + "'");
    }
    if (attacker_) throw ProtocolError("room '" + state_.name + "' already has an attacker");
    const std::string who = config.name;
    attacker_ = std::make_unique<MitmBot>(std::move(config), std::move(params));
    if (!endpoints_.count(who)) connect(who, [](const WireMessage&) {});
    submit(make_join(state_.name, who, Json{{"role", "attacker"}}));
}

}  // namespace cryptolab
