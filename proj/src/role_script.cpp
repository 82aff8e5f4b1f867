#include "cryptolab/role_script.hpp"

#include "cryptolab/error.hpp"

namespace cryptolab {

std::string to_string(ExpectedAction action) {
    switch (action) {
        case ExpectedAction::propose_params: return "propose-params";
        case ExpectedAction::pick_secret: return "pick-secret";
        case ExpectedAction::send_public: return "send-public";
        case ExpectedAction::receive_public: return "receive-public";
        case ExpectedAction::compute_shared: return "compute-shared";
        case ExpectedAction::reveal: return "reveal";
    }
    return "?";
}

RoleScript standard_role_script(ScriptRole role) {
    RoleScript script{role, {}};
    if (role == ScriptRole::initiator) {
        script.steps.push_back({"Choose the starting color you and your partner will share, and post it in the chat.",
                                ExpectedAction::propose_params, "a valid starting color not yet agreed"});
    }
    script.steps.push_back({"Pick your secret color. Keep it to yourself: it never goes into the chat.",
                            ExpectedAction::pick_secret, "the starting color is agreed and the secret is in range"});
    script.steps.push_back({"Mix your secret color into the starting color and post the mixture in the chat.",
                            ExpectedAction::send_public, "a secret color was picked"});
    script.steps.push_back({"Take the mixture your partner posted in the chat.", ExpectedAction::receive_public,
                            "your mixture is posted and your partner's mixture is in range"});
    script.steps.push_back({"Mix your secret color into your partner's mixture. That is your shared color.",
                            ExpectedAction::compute_shared, "your partner's mixture was taken"});
    script.steps.push_back({"Compare shared colors with your partner, then look behind the colors.",
                            ExpectedAction::reveal, "the shared color is computed"});
    return script;
}

std::optional<ExpectedAction> expected_for(const LocalAction& action) {
    return std::visit(
        [](const auto& a) -> std::optional<ExpectedAction> {
            using A = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<A, ProposeParams>) return ExpectedAction::propose_params;
            else if constexpr (std::is_same_v<A, PickSecret>) return ExpectedAction::pick_secret;
            else if constexpr (std::is_same_v<A, SendPublic>) return ExpectedAction::send_public;
            else if constexpr (std::is_same_v<A, ReceivePublic>) return ExpectedAction::receive_public;
            else return ExpectedAction::compute_shared;
        },
        action);
}

RoleScriptRunner::RoleScriptRunner(RoleScript script, ParticipantState state)
    : script_(std::move(script)), state_(std::move(state)) {
    if (script_.steps.empty()) throw InvalidKey("role script has no steps");
}

const ScriptStep& RoleScriptRunner::current_step() const { return script_.steps.at(index_); }

bool RoleScriptRunner::at_reveal() const { return current_step().action == ExpectedAction::reveal; }

RoleScriptRunner::Outcome RoleScriptRunner::act(const LocalAction& action) {
    const auto& step = current_step();
    if (step.action == ExpectedAction::reveal) return {false, "the exchange is finished; time for the reveal", {}};
    if (expected_for(action) != step.action) {
        // the state machine's reason is friendlier when it has one
        const auto probe = dh_session_step(state_, SessionInput{action});
        return {false, probe.accepted() ? "not now: " + step.prompt : *probe.rejection, {}};
    }
    auto result = dh_session_step(state_, SessionInput{action});
    if (!result.accepted()) return {false, *result.rejection, {}};
    state_ = std::move(result.state);
    ++index_;
    return {true, {}, std::move(result.outgoing)};
}

RoleScriptRunner::Outcome RoleScriptRunner::observe(const WireMessage& message) {
    auto result = dh_session_step(state_, SessionInput{message});
    if (!result.accepted()) return {false, *result.rejection, {}};
    state_ = std::move(result.state);
    return {true, {}, std::move(result.outgoing)};
}

std::vector<ExplainStep> RoleScriptRunner::reveal(const ExchangeRecord& record) const {
    if (!at_reveal()) throw ProtocolError("the reveal comes after the shared color is computed");
    return dh_transcript_explain(record);
}

ExchangeRecord exchange_record(const ParticipantState& first, const ParticipantState& second) {
    ExchangeRecord record;
    record.params = first.params ? first.params : second.params;
    record.first = {first.name, first.secret, first.phase >= DhPhase::public_sent ? first.own_public : std::nullopt,
                    first.peer_public};
    record.second = {second.name, second.secret,
                     second.phase >= DhPhase::public_sent ? second.own_public : std::nullopt, second.peer_public};
    return record;
}

}  // namespace cryptolab
