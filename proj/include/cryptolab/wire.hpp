#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "cryptolab/dh.hpp"
#include "cryptolab/hybrid.hpp"

namespace cryptolab {

using Json = nlohmann::ordered_json;

enum class MessageType { join, leave, chat, dh_params, dh_public, dh_done, scenario, error, ping, pong };

std::string to_string(MessageType type);
std::optional<MessageType> parse_message_type(std::string_view name);

/// One line of the room protocol. Serialized as a single-line JSON object with
/// the fields type, room, sender, seq, payload (in that order).
struct WireMessage {
    MessageType type = MessageType::chat;
    std::string room;
    std::string sender;
    std::uint64_t seq = 0;
    Json payload = Json::object();

    bool operator==(const WireMessage& other) const;
};

Json to_json(const WireMessage& message);
/// Unknown fields are ignored. Throws ProtocolError on anything malformed.
WireMessage message_from_json(const Json& json);

std::string encode_line(const WireMessage& message);  // no trailing newline
WireMessage decode_line(std::string_view line);

// Constructors for the payload shapes the protocol uses.
WireMessage make_join(std::string room, std::string sender, Json payload = Json::object());
WireMessage make_leave(std::string room, std::string sender);
WireMessage make_chat(std::string room, std::string sender, std::string text);
WireMessage make_dh_params(std::string room, std::string sender, const DhParams& params);
WireMessage make_dh_public(std::string room, std::string sender, std::uint64_t value, const DhParams& params);
WireMessage make_dh_done(std::string room, std::string sender);
WireMessage make_error(std::string room, std::uint64_t seq, std::string reason);

Json to_json(const ColorSwatch& color);
Json to_json(const DhParams& params);
/// Reads {"p":..,"g":..}; classroom mode when p <= 100, demo otherwise.
DhParams params_from_json(const Json& json);

/// dh_public payload value, validated against [1, p) by the caller.
std::uint64_t dh_public_value(const WireMessage& message);

Json to_json(const HybridEnvelope& envelope);
HybridEnvelope envelope_from_json(const Json& json);

}  // namespace cryptolab
