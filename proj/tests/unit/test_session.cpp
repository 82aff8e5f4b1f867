#include <doctest.h>

#include <functional>

#include "cryptolab/dh_session.hpp"
#include "cryptolab/error.hpp"
#include "cryptolab/explain.hpp"
#include "cryptolab/modmath.hpp"
#include "cryptolab/participant.hpp"
#include "cryptolab/role_script.hpp"
#include "cryptolab/room.hpp"

using namespace cryptolab;

namespace {

const DhParams small(23, 5);

ParticipantState step_ok(const ParticipantState& s, const SessionInput& in, std::vector<WireMessage>* out = nullptr) {
    auto r = dh_session_step(s, in);
    REQUIRE_MESSAGE(r.accepted(), *r.rejection);
    if (out) *out = r.outgoing;
    return r.state;
}

bool mentions_secret(const Json& j) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.key().find("secret") != std::string::npos) return true;
            if (mentions_secret(it.value())) return true;
        }
    }
    if (j.is_array()) {
        for (const auto& x : j) if (mentions_secret(x)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("honest exchange at p = 23 ends on 18 for both sides") {
    auto alice = new_participant("alice", "lab");
    auto bob = new_participant("bob", "lab");
    std::vector<WireMessage> out;
    alice = step_ok(alice, LocalAction{ProposeParams{small}}, &out);
    REQUIRE(out.size() == 1);
    bob = step_ok(bob, SessionInput{out[0]});
    alice = step_ok(alice, LocalAction{PickSecret{4}});
    bob = step_ok(bob, LocalAction{PickSecret{3}});
    alice = step_ok(alice, LocalAction{SendPublic{}}, &out);
    REQUIRE(out.size() == 1);
    CHECK(dh_public_value(out[0]) == 4);
    CHECK_FALSE(mentions_secret(out[0].payload));
    bob = step_ok(bob, SessionInput{out[0]});
    bob = step_ok(bob, LocalAction{SendPublic{}}, &out);
    CHECK(dh_public_value(out[0]) == 10);
    alice = step_ok(alice, SessionInput{out[0]});
    for (auto* s : {&alice, &bob}) {
        *s = step_ok(*s, LocalAction{ReceivePublic{}});
        *s = step_ok(*s, LocalAction{ComputeShared{}}, &out);
        CHECK(out.at(0).type == MessageType::dh_done);
        CHECK(s->phase == DhPhase::shared_computed);
        CHECK(s->shared == 18u);
    }
    const auto steps = dh_transcript_explain(exchange_record(alice, bob));
    CHECK(steps.size() == 6);
    CHECK(steps.back().value == 18u);
}

TEST_CASE("out-of-order actions are rejected without changing state") {
    const auto fresh = new_participant("alice", "lab");
    for (const LocalAction& a : {LocalAction{PickSecret{4}}, LocalAction{SendPublic{}}, LocalAction{ReceivePublic{}},
                                 LocalAction{ComputeShared{}}}) {
        const auto r = dh_session_step(fresh, a);
        CHECK_FALSE(r.accepted());
        CHECK(r.state == fresh);
        CHECK(r.outgoing.empty());
    }
    auto s = step_ok(fresh, LocalAction{ProposeParams{small}});
    s = step_ok(s, LocalAction{PickSecret{4}});
    CHECK_FALSE(dh_session_step(s, LocalAction{ComputeShared{}}).accepted());
    CHECK_FALSE(dh_session_step(s, LocalAction{PickSecret{5}}).accepted());
    CHECK_FALSE(dh_session_step(s, LocalAction{ProposeParams{small}}).accepted());
    s = step_ok(s, LocalAction{SendPublic{}});
    CHECK_FALSE(dh_session_step(s, LocalAction{ReceivePublic{}}).accepted());
    CHECK_FALSE(dh_session_step(s, LocalAction{ReceivePublic{23}}).accepted());
    CHECK_FALSE(dh_session_step(s, LocalAction{ComputeShared{}}).accepted());
}

TEST_CASE("secret range and peer values are validated") {
    auto s = step_ok(new_participant("a", "lab"), LocalAction{ProposeParams{small}});
    CHECK_FALSE(dh_session_step(s, LocalAction{PickSecret{0}}).accepted());
    CHECK_FALSE(dh_session_step(s, LocalAction{PickSecret{22}}).accepted());
    CHECK(dh_session_step(s, LocalAction{PickSecret{21}}).accepted());
    auto bad = make_dh_public("lab", "b", 4, small);
    bad.payload["value"] = 30;
    CHECK_FALSE(dh_session_step(s, SessionInput{bad}).accepted());
    auto early = new_participant("a", "lab");
    CHECK_FALSE(dh_session_step(early, SessionInput{make_dh_public("lab", "b", 4, small)}).accepted());
    CHECK(dh_session_step(s, SessionInput{make_dh_params("lab", "b", DhParams(97, 5))}).rejection.has_value());
    CHECK(dh_session_step(s, SessionInput{make_dh_params("lab", "b", small)}).accepted());
}

TEST_CASE("replaying the same inputs gives the same states") {
    std::vector<SessionInput> inputs{
        SessionInput{make_dh_params("lab", "alice", small)}, LocalAction{PickSecret{7}}, LocalAction{SendPublic{}},
        SessionInput{make_chat("lab", "alice", "hi")},        SessionInput{make_dh_public("lab", "alice", 4, small)},
        LocalAction{ReceivePublic{}},                          LocalAction{ComputeShared{}}};
    auto run = [&] {
        std::vector<StepResult> results;
        auto s = new_participant("bob", "lab");
        for (const auto& in : inputs) {
            results.push_back(dh_session_step(s, in));
            s = results.back().state;
        }
        return results;
    };
    const auto a = run();
    const auto b = run();
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].state == b[i].state);
        CHECK(a[i].outgoing == b[i].outgoing);
        CHECK(a[i].rejection == b[i].rejection);
    }
    CHECK(a.back().state.shared == modpow(4, 7, 23));
}

TEST_CASE("role script prompts and validations are present and talk about colors") {
    for (auto role : {ScriptRole::initiator, ScriptRole::responder}) {
        const auto script = standard_role_script(role);
        REQUIRE_FALSE(script.steps.empty());
        CHECK(script.steps.back().action == ExpectedAction::reveal);
        CHECK((script.steps.front().action == ExpectedAction::propose_params) == (role == ScriptRole::initiator));
        for (const auto& step : script.steps) {
            CHECK_FALSE(step.prompt.empty());
            CHECK_FALSE(step.validation.empty());
            if (step.action != ExpectedAction::reveal) CHECK(step.prompt.find("mod") == std::string::npos);
        }
    }
}

// Explores every sequence of up to 8 inputs (local actions plus the partner's
// public value arriving) and checks the runner never skips, repeats or
// reorders a step, and that the reveal is reached only with the right color.
TEST_CASE("role script model check over all input sequences up to length 8") {
    const std::vector<std::function<RoleScriptRunner::Outcome(RoleScriptRunner&)>> moves{
        [](RoleScriptRunner& r) { return r.act(ProposeParams{small}); },
        [](RoleScriptRunner& r) { return r.act(PickSecret{4}); },
        [](RoleScriptRunner& r) { return r.act(SendPublic{}); },
        [](RoleScriptRunner& r) { return r.act(ReceivePublic{}); },
        [](RoleScriptRunner& r) { return r.act(ComputeShared{}); },
        [](RoleScriptRunner& r) { return r.observe(make_dh_public("lab", "bob", 10, small)); },
    };
    std::uint64_t visited = 0;
    std::uint64_t reveals = 0;
    std::function<void(const RoleScriptRunner&, int)> explore = [&](const RoleScriptRunner& runner, int depth) {
        ++visited;
        if (runner.at_reveal()) {
            ++reveals;
            REQUIRE(runner.state().phase == DhPhase::shared_computed);
            REQUIRE(runner.state().shared == 18u);
        } else {
            REQUIRE_THROWS_AS(runner.reveal(ExchangeRecord{}), ProtocolError);
        }
        if (depth == 8) return;
        for (std::size_t i = 0; i < moves.size(); ++i) {
            RoleScriptRunner next = runner;
            const auto before = next.step_index();
            const auto phase_before = next.state().phase;
            const auto outcome = moves[i](next);
            const auto after = next.step_index();
            REQUIRE(after >= before);
            REQUIRE(after <= before + 1);
            REQUIRE(next.state().phase >= phase_before);
            if (i == 5) {
                REQUIRE(after == before);
            } else if (after == before + 1) {
                REQUIRE(outcome.accepted);
            } else {
                REQUIRE_FALSE(outcome.accepted);
                REQUIRE_FALSE(outcome.message.empty());
                REQUIRE(next.state() == runner.state());
            }
            for (const auto& m : outcome.outgoing) REQUIRE_FALSE(mentions_secret(m.payload));
            explore(next, depth + 1);
        }
    };
    explore(RoleScriptRunner(standard_role_script(ScriptRole::initiator), new_participant("alice", "lab")), 0);
    CHECK(visited > 1000000);
    CHECK(reveals > 0);
}

TEST_CASE("honest peers complete an exchange inside a room") {
    Room room("lab", Broadcast{});
    room.add_peer({"alice", "lab", true, small, 4, 0});
    room.add_peer({"bob", "lab", false, small, 3, 0});
    room.pump();
    REQUIRE(room.peer("alice"));
    CHECK(room.peer("alice")->done());
    CHECK(room.peer("bob")->done());
    CHECK(room.peer("alice")->state().shared == 18u);
    CHECK(room.peer("bob")->state().shared == 18u);
}

TEST_CASE("seeded peers are reproducible") {
    auto run = [](std::uint64_t seed) {
        Room room("lab", Broadcast{});
        room.add_peer({"alice", "lab", true, DhParams::classroom_default(), std::nullopt, seed});
        room.add_peer({"bob", "lab", false, DhParams::classroom_default(), std::nullopt, seed + 1});
        room.pump();
        std::vector<std::string> lines;
        for (const auto& e : room.transcript()) lines.push_back(encode_line(*e.delivered));
        return std::make_pair(lines, room.peer("alice")->state());
    };
    const auto a = run(5);
    const auto b = run(5);
    CHECK(a.first == b.first);
    CHECK(a.second == b.second);
    CHECK(a.second.phase == DhPhase::shared_computed);
}
