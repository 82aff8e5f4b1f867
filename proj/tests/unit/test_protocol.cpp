#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "../support.hpp"
#include "cryptolab/channel.hpp"
#include "cryptolab/error.hpp"
#include "cryptolab/room.hpp"
#include "cryptolab/transcript.hpp"
#include "cryptolab/wire.hpp"

using namespace cryptolab;

namespace {

WireMessage with_seq(WireMessage m, std::uint64_t seq) {
    m.seq = seq;
    return m;
}

// Feeds a message and returns the deliveries, keeping a transcript.
struct Harness {
    RoomState room{"lab", {}, 0};
    ChannelMode mode = Broadcast{};
    Interceptor interceptor;
    std::vector<TranscriptEntry> transcript;
    std::map<std::string, std::vector<WireMessage>> inbox;

    std::vector<Delivery> send(WireMessage m) {
        m.seq = room.last_seq + 1;
        auto result = channel_deliver(m, room, mode, interceptor);
        transcript.push_back(result.entry);
        for (const auto& d : result.deliveries) inbox[d.recipient].push_back(d.message);
        return result.deliveries;
    }
};

}  // namespace

TEST_CASE("wire messages serialize in field order and round trip") {
    const auto m = with_seq(make_chat("lab", "alice", "salve"), 3);
    CHECK(encode_line(m) ==
          R"({"type":"chat","room":"lab","sender":"alice","seq":3,"payload":{"text":"salve"}})");
    CHECK(decode_line(encode_line(m)) == m);
    CHECK(decode_line(encode_line(m) + "\r\n") == m);
    for (auto type : {MessageType::join, MessageType::leave, MessageType::chat, MessageType::dh_params,
                      MessageType::dh_public, MessageType::dh_done, MessageType::scenario, MessageType::error,
                      MessageType::ping, MessageType::pong}) {
        CHECK(parse_message_type(to_string(type)) == type);
    }
}

TEST_CASE("wire decoding ignores unknown fields and defaults missing ones") {
    const auto m = decode_line(R"({"type":"ping","room":"lab","sender":"bob","extra":[1,2],"v":2})");
    CHECK(m.type == MessageType::ping);
    CHECK(m.seq == 0);
    CHECK(m.payload == Json::object());
}

TEST_CASE("wire decoding rejects malformed lines") {
    for (const char* bad : {"", "not json", "[1,2]", R"({"room":"lab","sender":"a"})",
                            R"({"type":"shout","room":"lab","sender":"a"})", R"({"type":"chat","sender":"a"})",
                            R"({"type":"chat","room":"lab","sender":"a","seq":-1})",
                            R"({"type":"chat","room":"lab","sender":"a","seq":"1"})",
                            R"({"type":"chat","room":"lab","sender":"a","payload":[1]})",
                            R"({"type":"chat","room":7,"sender":"a"})"}) {
        CAPTURE(bad);
        CHECK_THROWS_AS(decode_line(bad), ProtocolError);
    }
}

TEST_CASE("dh payloads carry the value and its color") {
    const DhParams params(97, 5);
    const auto m = make_dh_public("lab", "alice", 48, params);
    CHECK(dh_public_value(m) == 48);
    CHECK(m.payload["color"]["hue"] == 178);
    CHECK(params_from_json(make_dh_params("lab", "a", params).payload) == params);
    CHECK(params_from_json(Json{{"p", 101}, {"g", 2}}).mode() == ParamMode::demo);
    CHECK_THROWS(params_from_json(Json{{"p", 97}}));
    auto bad = m;
    bad.payload["value"] = "x";
    CHECK_THROWS_AS(dh_public_value(bad), ProtocolError);
}

TEST_CASE("envelopes round trip through json") {
    HybridEnvelope env{2183, {0x5d, 0x4f}, 99};
    CHECK(envelope_from_json(to_json(env)) == env);
    env.signature.reset();
    CHECK(envelope_from_json(to_json(env)) == env);
    CHECK_THROWS(envelope_from_json(Json{{"wrapped_key", 1}, {"body", "zz"}}));
}

TEST_CASE("broadcast delivers identical copies to every member including the sender") {
    Harness h;
    h.send(make_join("lab", "alice"));
    h.send(make_join("lab", "bob"));
    h.send(make_join("lab", "carol"));
    const auto deliveries = h.send(make_chat("lab", "bob", "hi"));
    REQUIRE(deliveries.size() == 3);
    for (const auto& d : deliveries) CHECK(d.message == deliveries[0].message);
    CHECK(h.room.last_seq == 4);
    CHECK(h.room.members == std::vector<std::string>{"alice", "bob", "carol"});
}

TEST_CASE("broadcast totally orders messages for every member") {
    Harness h;
    gen::Engine rng(41);
    const std::vector<std::string> names{"a", "b", "c", "d"};
    for (const auto& n : names) h.send(make_join("lab", n));
    for (int i = 0; i < 200; ++i) h.send(make_chat("lab", names[gen::below(rng, 4)], std::to_string(i)));
    const auto& reference = h.inbox["d"];
    for (const auto& n : names) {
        const auto& box = h.inbox[n];
        REQUIRE(box.size() >= reference.size());
        // everyone sees the common suffix in the same order with strictly increasing seq
        CHECK(std::equal(reference.begin(), reference.end(), box.end() - static_cast<long>(reference.size())));
        for (std::size_t i = 1; i < box.size(); ++i) CHECK(box[i].seq == box[i - 1].seq + 1);
        CHECK(participant_view(h.transcript, n, h.mode) == box);
    }
}

TEST_CASE("the channel rejects stale, duplicate and foreign messages") {
    Harness h;
    h.send(make_join("lab", "alice"));
    try {
        channel_deliver(with_seq(make_chat("lab", "alice", "x"), 5), h.room, h.mode);
        FAIL("expected ChannelError");
    } catch (const ChannelError& e) {
        CHECK(e.expected_seq() == 2u);
    }
    CHECK_THROWS_AS(channel_deliver(with_seq(make_chat("lab", "alice", "x"), 1), h.room, h.mode), ChannelError);
    CHECK_THROWS_AS(channel_deliver(with_seq(make_chat("lab", "eve", "x"), 2), h.room, h.mode), ChannelError);
    CHECK_THROWS_AS(channel_deliver(with_seq(make_join("lab", "alice"), 2), h.room, h.mode), ChannelError);
    CHECK_THROWS_AS(channel_deliver(with_seq(make_chat("other", "alice", "x"), 2), h.room, h.mode), ChannelError);
    CHECK(h.room.last_seq == 1);
}

TEST_CASE("a leave reaches the leaver before it is removed") {
    Harness h;
    h.send(make_join("lab", "alice"));
    h.send(make_join("lab", "bob"));
    const auto deliveries = h.send(make_leave("lab", "bob"));
    CHECK(deliveries.size() == 2);
    CHECK_FALSE(h.room.is_member("bob"));
    CHECK(h.send(make_chat("lab", "alice", "x")).size() == 1);
}

TEST_CASE("relay routes everything through the attacker") {
    Harness h;
    h.mode = Relay{"mallory"};
    h.interceptor = [](const WireMessage& m) {
        if (m.type == MessageType::chat && m.payload["text"] == "drop me") return RelayDecision::drop();
        if (m.type == MessageType::chat) {
            auto fake = make_chat("x", "y", "forged");
            fake.seq = 999;
            return RelayDecision::substitute(fake);
        }
        return RelayDecision::forward();
    };
    h.send(make_join("lab", "mallory"));
    h.send(make_join("lab", "alice"));
    h.send(make_join("lab", "bob"));

    const auto d = h.send(make_chat("lab", "alice", "hello"));
    REQUIRE(d.size() == 3);
    CHECK(d[0].recipient == "mallory");
    CHECK(d[0].message.payload["text"] == "hello");
    for (const auto& x : d) {
        if (x.recipient == "alice") CHECK(x.message.payload["text"] == "hello");
        if (x.recipient == "bob") {
            CHECK(x.message.payload["text"] == "forged");
            CHECK(x.message.sender == "alice");
            CHECK(x.message.room == "lab");
            CHECK(x.message.seq == 4);
        }
    }
    CHECK(h.transcript.back().substituted());
    CHECK(h.transcript.back().sent().payload["text"] == "hello");

    const auto dropped = h.send(make_chat("lab", "bob", "drop me"));
    CHECK(dropped.size() == 2);
    CHECK(h.transcript.back().dropped());

    const auto from_attacker = h.send(make_chat("lab", "mallory", "psst"));
    CHECK(from_attacker.size() == 3);

    for (const std::string n : {"mallory", "alice", "bob"}) CHECK(participant_view(h.transcript, n, h.mode) == h.inbox[n]);
}

TEST_CASE("transcript lines round trip and strip wall time") {
    TranscriptEntry e;
    e.seq = 4;
    e.delivered = with_seq(make_chat("lab", "alice", "forged"), 4);
    e.original = with_seq(make_chat("lab", "alice", "hello"), 4);
    e.wall_time = "2026-01-01T00:00:00Z";
    const auto line = encode_transcript_line(e);
    const auto back = decode_transcript_line(line);
    CHECK(back.seq == 4);
    CHECK(back.delivered == e.delivered);
    CHECK(back.original == e.original);
    CHECK(back.wall_time == e.wall_time);
    CHECK(strip_wall_time(line).find("wall_time") == std::string::npos);
    CHECK(line.rfind("\"wall_time\"") > line.find("\"original\""));

    TranscriptEntry dropped;
    dropped.seq = 5;
    dropped.original = with_seq(make_chat("lab", "bob", "x"), 5);
    CHECK(decode_transcript_line(encode_transcript_line(dropped)).dropped());
    CHECK(transcript_file_name("lab", "2026-10-16") == "lab-2026-10-16.log");
    CHECK(utc_date_today().size() == 10);
}

TEST_CASE("transcript writer appends and normalizes") {
    const auto dir = std::filesystem::temp_directory_path() / "cryptolab_transcript_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    const auto path = dir / "lab.log";
    {
        TranscriptWriter w(path);
        for (std::uint64_t s = 1; s <= 3; ++s) {
            TranscriptEntry e;
            e.seq = s;
            e.delivered = with_seq(make_chat("lab", "alice", std::to_string(s)), s);
            e.wall_time = utc_timestamp_now();
            w.append(e);
        }
    }
    CHECK(read_transcript(path).size() == 3);
    const auto norm = normalized_transcript(path);
    CHECK(norm.find("wall_time") == std::string::npos);
    CHECK(std::count(norm.begin(), norm.end(), '\n') == 3);
    std::filesystem::remove_all(dir);
}

TEST_CASE("room assigns seq, answers rejections out of band and records a transcript") {
    Room room("lab", Broadcast{});
    std::map<std::string, std::vector<WireMessage>> inbox;
    std::vector<TranscriptEntry> sunk;
    room.set_transcript_sink([&](const TranscriptEntry& e) { sunk.push_back(e); });
    for (const std::string n : {"alice", "bob"}) {
        room.connect(n, [&inbox, n](const WireMessage& m) { inbox[n].push_back(m); });
        room.submit(make_join("lab", n));
    }
    room.submit(make_chat("lab", "alice", "one"));
    room.submit(with_seq(make_chat("lab", "bob", "stale"), 1));
    room.submit(make_chat("lab", "bob", "two"));
    room.pump();

    CHECK(room.state().last_seq == 4);
    CHECK(room.transcript().size() == 4);
    CHECK(sunk.size() == 4);
    const auto& bob = inbox["bob"];
    const auto err = std::find_if(bob.begin(), bob.end(), [](const auto& m) { return m.type == MessageType::error; });
    REQUIRE(err != bob.end());
    CHECK(err->sender == "server");
    CHECK(err->seq == 3);
    CHECK(std::none_of(inbox["alice"].begin(), inbox["alice"].end(),
                       [](const auto& m) { return m.type == MessageType::error; }));
    for (const auto& e : room.transcript()) CHECK_FALSE(e.wall_time.empty());

    room.disconnect("bob");
    room.pump();
    CHECK_FALSE(room.state().is_member("bob"));
    CHECK_FALSE(room.connected("bob"));
}

TEST_CASE("room refuses an attacker in broadcast mode or under the wrong name") {
    Room open("lab", Broadcast{});
    CHECK_THROWS_AS(open.attach_attacker(MitmConfig{}), ProtocolError);
    Room relay("lab", Relay{"mallory"});
    MitmConfig eve;
    eve.name = "eve";
    CHECK_THROWS_AS(relay.attach_attacker(eve), ProtocolError);
    relay.attach_attacker(MitmConfig{});
    CHECK_THROWS_AS(relay.attach_attacker(MitmConfig{}), ProtocolError);
    relay.pump();
    CHECK(relay.state().is_member("mallory"));
}
