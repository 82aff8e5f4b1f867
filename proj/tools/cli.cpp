#include "cli.hpp"

#include <algorithm>
#include <bitset>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cryptolab/classical.hpp"
#include "cryptolab/cryptanalysis.hpp"
#include "cryptolab/dh.hpp"
#include "cryptolab/error.hpp"
#include "cryptolab/explain.hpp"
#include "cryptolab/frequency.hpp"
#include "cryptolab/hybrid.hpp"
#include "cryptolab/line_client.hpp"
#include "cryptolab/modmath.hpp"
#include "cryptolab/operations.hpp"
#include "cryptolab/random.hpp"
#include "cryptolab/rsa.hpp"
#include "cryptolab/scenario.hpp"
#include "cryptolab/server.hpp"
#include "cryptolab/toyblock.hpp"
#include "cryptolab/wire.hpp"
#include "cryptolab/work_counter.hpp"

namespace cryptolab {
namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string bits8(std::uint8_t b) { return std::bitset<8>(b).to_string(); }

// "10110010" as bits, anything else as a decimal 0..255.
std::uint8_t parse_block(const std::string& text) {
    if (text.size() == 8 && text.find_first_not_of("01") == std::string::npos) {
        return static_cast<std::uint8_t>(std::bitset<8>(text).to_ulong());
    }
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used == text.size() && v >= 0 && v <= 255) return static_cast<std::uint8_t>(v);
    } catch (const std::exception&) {
    }
    throw InvalidKey("'" + text + "' is not a block: use 8 bits like 10110010 or a number 0-255");
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, sep)) {
        if (!part.empty()) parts.push_back(part);
    }
    return parts;
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
    if (hex.size() % 2) throw InvalidKey("hex text needs an even number of digits");
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < hex.size(); i += 2) {
        const auto digit = [&](char c) -> int {
            if (c >= '0' && c <= '9') return c - '0';
            if (c >= 'a' && c <= 'f') return c - 'a' + 10;
            if (c >= 'A' && c <= 'F') return c - 'A' + 10;
            throw InvalidKey("'" + hex + "' is not hex");
        };
        out.push_back(static_cast<std::uint8_t>(digit(hex[i]) * 16 + digit(hex[i + 1])));
    }
    return out;
}

std::string to_hex(const std::vector<std::uint8_t>& bytes) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (auto b : bytes) {
        out += digits[b >> 4];
        out += digits[b & 15];
    }
    return out;
}

std::string swatch_text(const ColorSwatch& c) { return c.css() + " " + c.hex(); }

DhParams params_for(std::uint64_t p, std::uint64_t g) {
    return DhParams(p, g, p <= DhParams::classroom_max_modulus ? ParamMode::classroom : ParamMode::demo);
}

Json steps_json(const std::vector<ExplainStep>& steps) {
    Json list = Json::array();
    for (const auto& s : steps) {
        Json item{{"number", s.number}, {"title", s.title}, {"formula", s.formula}, {"complete", s.complete}};
        item["value"] = s.value ? Json(*s.value) : Json();
        item["color"] = s.color ? to_json(*s.color) : Json();
        list.push_back(item);
    }
    return list;
}

struct Cli {
    Cli(std::ostream& o, std::ostream& e) : out(o), err(e) {}

    std::ostream& out;
    std::ostream& err;
    bool json = false;
    std::optional<std::uint64_t> seed;

    // shared option storage
    std::string text, file, key, cipher, plain, block, keys, perm = "nibble-swap", hex, bits, reference;
    std::string config_path, server, room, name, strategy = "keep-legs-distinct", scenario_file, call, args_json = "{}";
    std::string answer, ops, envelope, message, first_name, second_name;
    long long shift = 0;
    std::size_t rails = 2, width = 40, top = 5, rounds = ToyBlockKey::default_rounds;
    std::optional<std::uint64_t> key_seed;
    std::uint64_t p = 0, q = 0, g = 0, e = 0, n = 0, m = 0, c = 0, s = 0, a = 0, b = 0;
    std::uint64_t demo_p = 97, demo_g = 5, explain_p = 23, explain_g = 5;
    std::string attacker_name = "mallory", peer_name = "bob";
    std::optional<std::uint64_t> secret_a, secret_b, sent_a, sent_b;
    std::optional<std::uint64_t> from_p, from_q, from_e, from_n;
    std::optional<int> port, ws_port;
    std::string transcripts;
    bool strict = false, freq = true, random_key = false, exhaustive = false, english = false, websocket = false, initiator = false;
    double idle_seconds = 30;

    std::function<int()> action;

    std::uint64_t effective_seed() {
        if (!seed) seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
        return *seed;
    }

    std::string input_text() const {
        if (!file.empty()) return read_text_file(file);
        return text;
    }

    TextMode mode() const { return strict ? TextMode::strict : TextMode::preserve; }

    int emit(const Json& j, const std::string& human) {
        if (json) {
            out << j.dump() << "\n";
        } else {
            out << human;
            if (!human.empty() && human.back() != '\n') out << "\n";
        }
        return 0;
    }

    void text_options(CLI::App* sub) {
        auto* t = sub->add_option("--text", text, "input text");
        auto* f = sub->add_option("--file", file, "read the input text from a file");
        t->excludes(f);
        sub->callback([sub, this] {
            if (text.empty() && file.empty() && sub->count("--text") == 0) throw CLI::RequiredError("--text or --file");
        });
    }

    ToyBlockKey block_key() {
        BitPermutation permutation = nibble_swap();
        if (perm == "identity") {
            permutation = identity_permutation();
        } else if (perm != "nibble-swap") {
            const auto parts = split(perm, ',');
            if (parts.size() != 8) throw InvalidKey("--perm takes identity, nibble-swap or 8 comma-separated bit positions");
            for (std::size_t i = 0; i < 8; ++i) permutation[i] = static_cast<std::uint8_t>(std::stoi(parts[i]));
        }
        if (!keys.empty()) {
            std::vector<std::uint8_t> round_keys;
            for (const auto& k : split(keys, ',')) round_keys.push_back(parse_block(k));
            return ToyBlockKey(round_keys, permutation);
        }
        const auto generated = ToyBlockKey::from_seed(key_seed ? *key_seed : effective_seed(), rounds);
        return ToyBlockKey(generated.round_keys(), permutation);
    }

    Json block_key_json(const ToyBlockKey& k) {
        Json rk = Json::array();
        for (auto r : k.round_keys()) rk.push_back(r);
        Json pm = Json::array();
        for (auto v : k.permutation()) pm.push_back(v);
        return Json{{"round_keys", rk}, {"permutation", pm}};
    }

    void build(CLI::App& app) {
        app.add_flag("--json", json, "machine-readable output (one JSON object)");
        app.add_option("--seed", seed, "seed for every random choice");
        app.require_subcommand(1);
        app.fallthrough();

        build_caesar(app);
        build_rail(app);
        build_otp(app);
        build_toyblock(app);
        build_bits(app);
        build_freq(app);
        build_dh(app);
        build_rsa(app);
        build_oneway(app);
        build_hybrid(app);
        build_serve(app);
        build_bot(app);
        build_scenario(app);
    }

    CLI::App* group(CLI::App& app, const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->require_subcommand(1);
        sub->fallthrough();
        return sub;
    }

    CLI::App* leaf(CLI::App* parent, const std::string& name, const std::string& help) {
        auto* sub = parent->add_subcommand(name, help);
        sub->fallthrough();
        return sub;
    }

    void build_caesar(CLI::App& app) {
        auto* caesar = group(app, "caesar", "Caesar cipher and its attacks");
        for (const bool encrypt : {true, false}) {
            auto* sub = leaf(caesar, encrypt ? "enc" : "dec", encrypt ? "encrypt" : "decrypt");
            text_options(sub);
            sub->add_option("--shift", shift, "key: positions to shift")->required();
            sub->add_flag("--strict", strict, "reject characters outside A-Z");
            sub->final_callback([this, encrypt] {
                action = [this, encrypt] {
                    const auto k = ShiftKey::normalized(shift);
                    const auto result = encrypt ? caesar_encrypt(input_text(), k, latin_alphabet(), mode())
                                                : caesar_decrypt(input_text(), k, latin_alphabet(), mode());
                    return emit(Json{{"shift", k.shift}, {"text", result}}, result);
                };
            });
        }
        auto* brute = leaf(caesar, "brute", "every shift, for reading by eye");
        text_options(brute);
        brute->final_callback([this] {
            action = [this] {
                WorkCount work;
                std::vector<ShiftCandidate> all;
                work = count_work([&](WorkCounter& wc) { all = caesar_bruteforce(input_text(), latin_alphabet(), &wc); });
                Json list = Json::array();
                std::string human;
                for (const auto& cand : all) {
                    list.push_back({{"shift", cand.shift.shift}, {"plaintext", cand.plaintext}});
                    human += (cand.shift.shift < 10 ? " " : "") + std::to_string(cand.shift.shift) + "  " + cand.plaintext + "\n";
                }
                human += "(" + std::to_string(work.substitutions) + " letter substitutions)\n";
                return emit(Json{{"candidates", list}, {"substitutions", work.substitutions}}, human);
            };
        });
        auto* crack = leaf(caesar, "crack", "rank shifts by letter frequencies");
        text_options(crack);
        crack->add_flag("--freq", freq, "use the frequency attack (the only method)");
        crack->add_option("--reference", reference, "frequency table CSV (symbol,frequency); English by default");
        crack->add_option("--top", top, "how many shifts to list");
        crack->final_callback([this] {
            action = [this] {
                const FrequencyTable ref = reference.empty() ? english_frequencies() : load_frequency_table(reference);
                const auto ranked = caesar_frequency_attack(input_text(), ref);
                Json list = Json::array();
                std::string human = "rank shift  score     preview\n";
                for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
                    const auto& r = ranked.entries[i];
                    list.push_back({{"shift", r.shift.shift}, {"score", r.score}, {"preview", r.preview}});
                    if (i < top) {
                        human += (i + 1 < 10 ? "   " : "  ") + std::to_string(i + 1) + (r.shift.shift < 10 ? "     " : "    ") +
                                 std::to_string(r.shift.shift) + "  " + fixed(r.score, 4) + "  " + r.preview + "\n";
                    }
                }
                const auto& best = ranked.best();
                human += "best guess: shift " + std::to_string(best.shift.shift) + "\n" +
                         caesar_decrypt(input_text(), best.shift) + "\n";
                return emit(Json{{"ranked", list},
                                 {"best", {{"shift", best.shift.shift}, {"plaintext", caesar_decrypt(input_text(), best.shift)}}}},
                            human);
            };
        });
    }

    void build_rail(CLI::App& app) {
        auto* rail = group(app, "rail", "rail-fence transposition");
        for (const bool encrypt : {true, false}) {
            auto* sub = leaf(rail, encrypt ? "enc" : "dec", encrypt ? "encrypt" : "decrypt");
            text_options(sub);
            sub->add_option("--rails", rails, "number of rails (at least 2)");
            sub->final_callback([this, encrypt] {
                action = [this, encrypt] {
                    const auto result = encrypt ? railfence_encrypt(input_text(), RailKey{rails})
                                                : railfence_decrypt(input_text(), RailKey{rails});
                    return emit(Json{{"rails", rails}, {"text", result}}, result);
                };
            });
        }
    }

    void build_otp(CLI::App& app) {
        auto* otp = group(app, "otp", "one-time pad");
        for (const bool encrypt : {true, false}) {
            auto* sub = leaf(otp, encrypt ? "enc" : "dec", encrypt ? "encrypt" : "decrypt");
            text_options(sub);
            sub->add_option("--key", key, "the pad, one letter per letter of text");
            if (encrypt) sub->add_flag("--random-key", random_key, "draw a fresh pad from --seed");
            sub->add_flag("--strict", strict, "reject characters outside A-Z");
            sub->final_callback([this, encrypt] {
                action = [this, encrypt] {
                    const std::string input = input_text();
                    std::string pad = key;
                    if (encrypt && random_key) {
                        Rng rng(effective_seed());
                        pad.clear();
                        for (char ch : input) {
                            pad += latin_alphabet().contains(latin_alphabet().normalize(ch))
                                       ? latin_alphabet().symbol_at(rng.uniform(0, 25))
                                       : ch;
                        }
                    }
                    if (pad.empty()) throw InvalidKey("give --key (or --random-key to draw one)");
                    const auto result = encrypt ? otp_encrypt(input, PadKey{pad}, latin_alphabet(), mode())
                                                : otp_decrypt(input, PadKey{pad}, latin_alphabet(), mode());
                    std::string human = result;
                    if (random_key) human = "key:  " + pad + "\ntext: " + result;
                    return emit(Json{{"key", pad}, {"text", result}}, human);
                };
            });
        }
        auto* explore = leaf(otp, "explore", "which pad links a plaintext to a ciphertext");
        explore->add_option("--cipher", cipher, "ciphertext")->required();
        explore->add_option("--plain", plain, "candidate plaintext of the same length");
        explore->add_flag("--exhaustive", exhaustive, "check every plaintext of this length (up to 6 letters)");
        explore->final_callback([this] {
            action = [this] {
                Json j{{"cipher", cipher}};
                std::string human;
                const auto letters = normalize_text(cipher).size();
                if (!plain.empty()) {
                    const auto pad = otp_key_for(plain, cipher);
                    j["plain"] = plain;
                    j["key"] = pad.symbols;
                    human += "key: " + pad.symbols + "\n";
                }
                std::uint64_t space = 1;
                for (std::size_t i = 0; i < letters; ++i) space *= 26;
                human += "Every " + std::to_string(letters) + "-letter plaintext has exactly one pad that turns it into " +
                         cipher + ", so the ciphertext alone says nothing about which of the " + std::to_string(space) +
                         " plaintexts was sent.\n";
                j["note"] = "each plaintext of this length has exactly one key producing the ciphertext";
                if (exhaustive) {
                    const auto report = perfect_secrecy_check(cipher);
                    j["perfect_secrecy"] = {{"plaintexts", report.plaintexts},
                                            {"distinct_keys", report.distinct_keys},
                                            {"key_space", report.key_space},
                                            {"bijective", report.bijective}};
                    human += "checked " + std::to_string(report.plaintexts) + " plaintexts: " +
                             std::to_string(report.distinct_keys) + " distinct keys out of " +
                             std::to_string(report.key_space) + (report.bijective ? " (one-to-one)\n" : " (NOT one-to-one)\n");
                }
                return emit(j, human);
            };
        });
    }

    void build_toyblock(CLI::App& app) {
        auto* toy = group(app, "toyblock", "toy block cipher: XOR with a round key, then swap bits");
        for (const bool encrypt : {true, false}) {
            auto* sub = leaf(toy, encrypt ? "enc" : "dec", encrypt ? "encrypt" : "decrypt");
            sub->add_option("--block", block, "one block: 8 bits or 0-255");
            if (encrypt) {
                sub->add_option("--text", text, "encrypt every character (output as hex)");
            } else {
                sub->add_option("--hex", hex, "decrypt a hex string of blocks back to text");
            }
            sub->add_option("--keys", keys, "round keys, comma-separated (8 bits or 0-255 each)");
            sub->add_option("--key-seed", key_seed, "draw round keys from this seed instead");
            sub->add_option("--rounds", rounds, "rounds when drawing keys");
            sub->add_option("--perm", perm, "identity, nibble-swap or 8 comma-separated bit targets");
            sub->final_callback([this, encrypt] {
                action = [this, encrypt] {
                    const auto k = block_key();
                    Json j{{"key", block_key_json(k)}};
                    if (!block.empty()) {
                        const auto in = parse_block(block);
                        const auto result = encrypt ? toyblock_encrypt(in, k) : toyblock_decrypt(in, k);
                        j["block"] = result;
                        j["bits"] = bits8(result);
                        return emit(j, bits8(result));
                    }
                    if (encrypt && !text.empty()) {
                        for (unsigned char ch : text) {
                            if (ch > 127) throw InvalidKey("only 7-bit characters can be encrypted");
                        }
                        const std::vector<std::uint8_t> bytes(text.begin(), text.end());
                        const auto result = to_hex(toyblock_encrypt_bytes(bytes, k));
                        j["hex"] = result;
                        return emit(j, result);
                    }
                    if (!encrypt && !hex.empty()) {
                        const auto bytes = toyblock_decrypt_bytes(from_hex(hex), k);
                        const std::string result(bytes.begin(), bytes.end());
                        j["text"] = result;
                        return emit(j, result);
                    }
                    throw InvalidKey(encrypt ? "give --block or --text" : "give --block or --hex");
                };
            });
        }
    }

    void build_bits(CLI::App& app) {
        auto* bitsg = group(app, "bits", "characters as 8-bit codes");
        auto* encode = leaf(bitsg, "encode", "characters to bits");
        text_options(encode);
        encode->final_callback([this] {
            action = [this] {
                const auto result = chars_to_bits(input_text());
                return emit(Json{{"bits", result}}, result);
            };
        });
        auto* decode = leaf(bitsg, "decode", "bits to characters (spaces ignored)");
        decode->add_option("--bits", bits, "bit string")->required();
        decode->final_callback([this] {
            action = [this] {
                std::string clean = bits;
                std::erase(clean, ' ');
                const auto result = bits_to_chars(clean);
                return emit(Json{{"text", result}}, result);
            };
        });
    }

    void build_freq(CLI::App& app) {
        auto* freqg = group(app, "freq", "letter frequencies");
        auto* analyze = leaf(freqg, "analyze", "frequency table, most frequent first");
        text_options(analyze);
        analyze->final_callback([this] {
            action = [this] {
                const auto table = letter_frequencies(input_text());
                Json freqs = Json::object();
                for (std::size_t i = 0; i < 26; ++i) freqs[std::string(1, latin_alphabet().symbol_at(i))] = table.at_index(i);
                Json sorted = Json::array();
                std::string human;
                for (const auto& [symbol, f] : sort_by_frequency(table)) {
                    sorted.push_back({{"symbol", std::string(1, symbol)}, {"frequency", f}});
                    human += std::string(1, symbol) + "  " + fixed(f * 100, 2) + "%\n";
                }
                return emit(Json{{"frequencies", freqs}, {"sorted", sorted}}, human);
            };
        });
        auto* hist = leaf(freqg, "hist", "text histogram");
        hist->add_option("--text", text, "input text");
        hist->add_option("--file", file, "read the input text from a file");
        hist->add_option("--width", width, "cells in the longest bar");
        hist->add_flag("--english", english, "show the English reference table instead");
        hist->final_callback([this] {
            action = [this] {
                if (!english && text.empty() && file.empty()) throw InvalidKey("give --text, --file or --english");
                const auto table = english ? english_frequencies() : letter_frequencies(input_text());
                const auto rows = histogram_rows(table, width);
                Json list = Json::array();
                for (const auto& r : rows) {
                    list.push_back({{"symbol", std::string(1, r.symbol)}, {"bar_length", r.bar_length}, {"frequency", r.frequency}});
                }
                return emit(Json{{"width", width}, {"rows", list}}, render_histogram(rows));
            };
        });
    }

    void build_dh(CLI::App& app) {
        auto* dh = group(app, "dh", "Diffie-Hellman with small numbers and colors");
        auto* demo = leaf(dh, "demo", "run a whole exchange");
        demo->add_option("--p", demo_p, "prime modulus")->capture_default_str();
        demo->add_option("--g", demo_g, "primitive root")->capture_default_str();
        demo->add_option("--a", secret_a, "Alice's secret (drawn from --seed if absent)");
        demo->add_option("--b", secret_b, "Bob's secret (drawn from --seed if absent)");
        demo->final_callback([this] {
            action = [this] {
                const auto p = demo_p, g = demo_g;
                const auto params = params_for(p, g);
                std::optional<Rng> rng;
                auto draw = [&](const std::optional<std::uint64_t>& fixed_secret) {
                    if (fixed_secret) return DhKeyPair::from_secret(params, *fixed_secret);
                    if (!rng) rng.emplace(effective_seed());
                    return dh_keygen(params, *rng);
                };
                const auto alice = draw(secret_a);
                const auto bob = draw(secret_b);
                const auto s_a = dh_shared_secret(alice, bob.public_value(), params);
                const auto s_b = dh_shared_secret(bob, alice.public_value(), params);
                const auto color = [&](std::uint64_t v) { return residue_to_color(v, params); };
                Json j{{"p", p}, {"g", g}, {"a", alice.secret()}, {"b", bob.secret()}, {"A", alice.public_value()},
                       {"B", bob.public_value()}, {"alice_shared", s_a.value}, {"bob_shared", s_b.value},
                       {"colors",
                        {{"g", to_json(color(g))},
                         {"A", to_json(color(alice.public_value()))},
                         {"B", to_json(color(bob.public_value()))},
                         {"shared", to_json(color(s_a.value))}}}};
                if (seed && (!secret_a || !secret_b)) j["seed"] = *seed;
                std::ostringstream h;
                h << "p = " << p << ", g = " << g << "  (" << swatch_text(color(g)) << ")\n"
                  << "Alice: a = " << alice.secret() << ", A = " << g << "^" << alice.secret() << " mod " << p << " = "
                  << alice.public_value() << "  (" << swatch_text(color(alice.public_value())) << ")\n"
                  << "Bob:   b = " << bob.secret() << ", B = " << g << "^" << bob.secret() << " mod " << p << " = "
                  << bob.public_value() << "  (" << swatch_text(color(bob.public_value())) << ")\n"
                  << "Alice: B^a = " << bob.public_value() << "^" << alice.secret() << " mod " << p << " = " << s_a.value << "\n"
                  << "Bob:   A^b = " << alice.public_value() << "^" << bob.secret() << " mod " << p << " = " << s_b.value << "\n"
                  << "shared = " << s_a.value << "  (" << swatch_text(color(s_a.value)) << ")"
                  << (s_a.value == s_b.value ? "" : "  MISMATCH") << "\n";
                if (s_a.degenerate || s_b.degenerate) h << "warning: " << (s_a.degenerate ? s_a.warning : s_b.warning) << "\n";
                return emit(j, h.str());
            };
        });
        auto* explain = leaf(dh, "explain", "reveal the numbers behind a color exchange");
        explain->add_option("--p", explain_p, "prime modulus")->capture_default_str();
        explain->add_option("--g", explain_g, "primitive root")->capture_default_str();
        explain->add_option("--a", secret_a, "first party's secret");
        explain->add_option("--b", secret_b, "second party's secret");
        explain->add_option("--sent-a", sent_a, "what the first party actually posted, if it differs");
        explain->add_option("--sent-b", sent_b, "what the second party actually posted, if it differs");
        explain->add_option("--first", first_name, "first party's name")->default_val("Alice");
        explain->add_option("--second", second_name, "second party's name")->default_val("Bob");
        explain->final_callback([this] {
            action = [this] {
                const auto p = explain_p, g = explain_g;
                const auto params = params_for(p, g);
                ExchangeRecord record;
                record.params = params;
                record.first.name = first_name;
                record.second.name = second_name;
                record.first.secret = secret_a;
                record.second.secret = secret_b;
                record.first.public_value = sent_a ? sent_a : (secret_a ? std::optional(modpow(g, *secret_a, p)) : std::nullopt);
                record.second.public_value = sent_b ? sent_b : (secret_b ? std::optional(modpow(g, *secret_b, p)) : std::nullopt);
                const auto steps = dh_transcript_explain(record);
                return emit(Json{{"steps", steps_json(steps)}}, render_explanation(steps));
            };
        });
    }

    void build_rsa(CLI::App& app) {
        auto* rsa = group(app, "rsa", "toy RSA with desk-sized numbers");
        auto* keygen = leaf(rsa, "keygen", "key pair from two primes");
        keygen->add_option("--p", p)->required();
        keygen->add_option("--q", q)->required();
        keygen->add_option("--e", e)->required();
        keygen->final_callback([this] {
            action = [this] {
                const auto k = rsa_keygen(p, q, e);
                return emit(Json{{"p", k.p}, {"q", k.q}, {"n", k.n}, {"e", k.e}, {"d", k.d}, {"phi", k.phi()}},
                            "public key:  n = " + std::to_string(k.n) + ", e = " + std::to_string(k.e) +
                                "\nprivate key: d = " + std::to_string(k.d) + "  (phi = " + std::to_string(k.phi()) + ")");
            };
        });
        auto* lock = leaf(rsa, "lock", "encrypt with the public key: m^e mod n");
        lock->add_option("--m", m)->required();
        lock->add_option("--n", n)->required();
        lock->add_option("--e", e)->required();
        lock->final_callback([this] {
            action = [this] {
                const auto v = public_transform(m, {n, e});
                return emit(Json{{"value", v}}, std::to_string(v));
            };
        });
        auto* unlock = leaf(rsa, "unlock", "decrypt with the private key: c^d mod n");
        unlock->add_option("--c", c)->required();
        unlock->add_option("--p", p)->required();
        unlock->add_option("--q", q)->required();
        unlock->add_option("--e", e)->required();
        unlock->final_callback([this] {
            action = [this] {
                const auto v = private_transform(c, rsa_keygen(p, q, e));
                return emit(Json{{"value", v}}, std::to_string(v));
            };
        });
        auto* sign = leaf(rsa, "sign", "sign with the private key: m^d mod n");
        sign->add_option("--m", m)->required();
        sign->add_option("--p", p)->required();
        sign->add_option("--q", q)->required();
        sign->add_option("--e", e)->required();
        sign->final_callback([this] {
            action = [this] {
                const auto v = private_transform(m, rsa_keygen(p, q, e));
                return emit(Json{{"signature", v}}, std::to_string(v));
            };
        });
        auto* verify = leaf(rsa, "verify", "check a signature with the public key: s^e mod n == m");
        verify->add_option("--m", m)->required();
        verify->add_option("--s", s)->required();
        verify->add_option("--n", n)->required();
        verify->add_option("--e", e)->required();
        verify->final_callback([this] {
            action = [this] {
                const auto recovered = public_transform(s, {n, e});
                const bool valid = recovered == m;
                emit(Json{{"valid", valid}, {"recovered", recovered}},
                     valid ? "signature matches" : "signature does NOT match (it opens to " + std::to_string(recovered) + ")");
                return valid ? 0 : 1;
            };
        });
    }

    void build_oneway(CLI::App& app) {
        auto* oneway = group(app, "oneway", "multiplying is easy, factoring is hard");
        auto* demo = leaf(oneway, "demo", "count the work both ways");
        demo->add_option("--a", a, "first prime")->default_val(101);
        demo->add_option("--b", b, "second prime")->default_val(103);
        demo->final_callback([this] {
            action = [this] {
                const auto r = oneway_demo(a, b);
                return emit(Json{{"a", r.a}, {"b", r.b}, {"product", r.product}, {"multiply_steps", r.multiply_steps},
                                 {"factor_steps", r.factor_steps}, {"recovered_factor", r.recovered_factor}, {"note", r.note}},
                            std::to_string(r.a) + " x " + std::to_string(r.b) + " = " + std::to_string(r.product) + "  (" +
                                std::to_string(r.multiply_steps) + " multiplication)\n" + "factoring " +
                                std::to_string(r.product) + " found " + std::to_string(r.recovered_factor) + " after " +
                                std::to_string(r.factor_steps) + " trial divisions\n" + r.note);
            };
        });
    }

    void build_hybrid(CLI::App& app) {
        auto* hybrid = group(app, "hybrid", "wrap a block-cipher key with RSA, encrypt the body with it");
        auto* seal = leaf(hybrid, "seal", "make an envelope");
        seal->add_option("--message", message, "message (7-bit characters)")->required();
        seal->add_option("--n", n, "recipient's public n")->required();
        seal->add_option("--e", e, "recipient's public e")->required();
        seal->add_option("--from-p", from_p, "sender's p, to sign");
        seal->add_option("--from-q", from_q, "sender's q");
        seal->add_option("--from-e", from_e, "sender's e");
        seal->add_option("--key-seed", key_seed, "symmetric key seed (below n); drawn from --seed if absent");
        seal->final_callback([this] {
            action = [this] {
                std::optional<ToyRsaKeyPair> sender;
                if (from_p || from_q || from_e) {
                    if (!from_p || !from_q || !from_e) throw InvalidKey("signing needs --from-p, --from-q and --from-e");
                    sender = rsa_keygen(*from_p, *from_q, *from_e);
                }
                std::uint64_t symmetric = 0;
                if (key_seed) {
                    symmetric = *key_seed;
                } else {
                    Rng rng(effective_seed());
                    symmetric = rng.uniform(0, n - 1);
                }
                const auto env = hybrid_seal(message, {n, e}, sender, symmetric);
                const Json j = to_json(env);
                return emit(j, j.dump());
            };
        });
        auto* open = leaf(hybrid, "open", "open an envelope");
        open->add_option("--envelope", envelope, "envelope JSON, or a file holding it")->required();
        open->add_option("--p", p, "recipient's p")->required();
        open->add_option("--q", q, "recipient's q")->required();
        open->add_option("--e", e, "recipient's e")->required();
        open->add_option("--from-n", from_n, "sender's public n, to verify");
        open->add_option("--from-e", from_e, "sender's public e");
        open->final_callback([this] {
            action = [this] {
                std::string body = envelope;
                if (!body.empty() && body.front() != '{') body = read_text_file(body);
                Json parsed;
                try {
                    parsed = Json::parse(body);
                } catch (const nlohmann::json::exception& ex) {
                    throw ProtocolError(std::string("envelope is not JSON: ") + ex.what());
                }
                std::optional<ToyRsaPublicKey> sender;
                if (from_n || from_e) {
                    if (!from_n || !from_e) throw InvalidKey("verifying needs --from-n and --from-e");
                    sender = ToyRsaPublicKey{*from_n, *from_e};
                }
                const auto opened = hybrid_open(envelope_from_json(parsed), rsa_keygen(p, q, e), sender);
                emit(Json{{"message", opened.message}, {"authenticity", to_string(opened.authenticity)}},
                     opened.message + "\nauthenticity: " + to_string(opened.authenticity));
                return opened.authenticity == Authenticity::failed ? 1 : 0;
            };
        });
    }

    void build_serve(CLI::App& app) {
        auto* sub = app.add_subcommand("serve", "run the classroom session server");
        sub->fallthrough();
        sub->add_option("--config", config_path, "server config JSON (default: data/server.json)");
        sub->add_option("--port", port, "TCP port (CRYPTOLAB_PORT overrides the config too)");
        sub->add_option("--ws-port", ws_port, "WebSocket port");
        sub->add_option("--transcripts", transcripts, "transcript directory");
        sub->final_callback([this] {
            action = [this] {
                const auto path = config_path.empty() ? data_directory() / "server.json" : std::filesystem::path(config_path);
                auto config = load_server_config(path);
                apply_env_overrides(config);
                if (port) config.port = static_cast<std::uint16_t>(*port);
                if (ws_port) config.ws_port = static_cast<std::uint16_t>(*ws_port);
                if (!transcripts.empty()) config.transcript_dir = transcripts;
                if (seed) config.seed = *seed;
                return serve(config, err, err);
            };
        });
    }

    void build_bot(CLI::App& app) {
        auto* bot = group(app, "bot", "automatic participants that join a running server");
        for (const std::string role : {"attacker", "peer"}) {
            auto* sub = leaf(bot, role, role == "attacker" ? "relay a room through the person in the middle"
                                                           : "an honest partner for practice");
            sub->add_option("--server", server, "host:port (default $CRYPTOLAB_SERVER or 127.0.0.1:7400)");
            sub->add_flag("--ws", websocket, "connect over WebSocket");
            sub->add_option("--room", room, "room name")->required();
            sub->add_option("--name", role == "attacker" ? attacker_name : peer_name, "participant name")->capture_default_str();
            sub->add_option("--idle", idle_seconds, "seconds of silence before the bot stops");
            if (role == "peer") sub->add_flag("--initiator", initiator, "post the starting color");
            if (role == "attacker") sub->add_option("--strategy", strategy, "keep-legs-distinct or naive");
            sub->final_callback([this, role] {
                action = [this, role] {
                    BotOptions options;
                    std::tie(options.host, options.port) = server.empty() ? default_server_address() : parse_server_address(server);
                    options.role = role;
                    options.websocket = websocket;
                    options.room = room;
                    options.name = role == "attacker" ? attacker_name : peer_name;
                    options.seed = effective_seed();
                    options.initiator = initiator;
                    options.strategy = strategy;
                    options.idle = Millis(static_cast<long long>(idle_seconds * 1000));
                    const auto report = run_bot(options, &err);
                    Json received = Json::array();
                    for (const auto& msg : report.received) received.push_back(to_json(msg));
                    Json j{{"role", role}, {"refused", report.refused}, {"received", received}};
                    if (report.refused) j["reason"] = report.reason;
                    std::string human = report.refused ? "refused: " + report.reason
                                                       : std::to_string(report.received.size()) + " messages seen";
                    if (report.final_state) {
                        j["phase"] = to_string(report.final_state->phase);
                        human += "\nfinal phase: " + to_string(report.final_state->phase);
                    }
                    emit(j, human);
                    return report.refused ? 1 : 0;
                };
            });
        }
    }

    ScenarioConfig scenario() {
        std::filesystem::path path = scenario_file;
        if (!std::filesystem::exists(path)) {
            auto bundled = data_directory() / "scenarios" / scenario_file;
            if (bundled.extension() != ".json") bundled += ".json";
            if (std::filesystem::exists(bundled)) path = bundled;
        }
        return load_scenario(path);
    }

    void build_scenario(CLI::App& app) {
        auto* sc = group(app, "scenario", "playgrounds: a task plus the operations allowed for it");
        auto* run = leaf(sc, "run", "show a playground, or call one of its operations");
        run->add_option("--file", scenario_file, "scenario JSON, or the name of a bundled one")->required();
        run->add_option("--call", call, "operation to run inside the playground");
        run->add_option("--args", args_json, "operation arguments as a JSON object");
        run->final_callback([this] {
            action = [this] {
                Playground playground(scenario());
                if (call.empty()) {
                    const auto view = public_view(playground.config());
                    std::string human = playground.config().name + "\n\n" + playground.config().narrative + "\n\n" +
                                        playground.config().challenge.text + "\n";
                    if (!playground.config().challenge.data.empty()) human += playground.config().challenge.data.dump() + "\n";
                    human += "\noperations:";
                    for (const auto& op : playground.config().allowed_ops) human += " " + op;
                    return emit(view, human);
                }
                Json args;
                try {
                    args = Json::parse(args_json);
                } catch (const nlohmann::json::exception& ex) {
                    throw InvalidKey(std::string("--args is not JSON: ") + ex.what());
                }
                const auto result = playground.call(call, args);
                return emit(Json{{"call", call}, {"result", result}}, result.dump(2));
            };
        });
        auto* check = leaf(sc, "check", "judge an answer");
        check->add_option("--file", scenario_file, "scenario JSON, or the name of a bundled one")->required();
        check->add_option("--answer", answer, "the answer (text or a number)");
        check->add_option("--ops", ops, "operations used, comma-separated");
        check->final_callback([this] {
            action = [this] {
                const auto config = scenario();
                Submission submission;
                if (!answer.empty()) submission.answer = answer;
                submission.ops_used = split(ops, ',');
                const auto verdict = scenario_check(config, submission);
                Json j{{"verdict", verdict.pass ? "pass" : "fail"}, {"reason", verdict.reason}};
                if (!verdict.detail.empty()) j["detail"] = verdict.detail;
                emit(j, std::string(verdict.pass ? "pass" : "fail") + ": " + verdict.reason +
                            (verdict.detail.empty() ? "" : " (" + verdict.detail + ")"));
                return verdict.pass ? 0 : 1;
            };
        });
    }
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"cryptolab: classroom cryptography from Caesar to hybrid systems", "cryptolab"};
    Cli cli(out, err);
    cli.build(app);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        const CLI::App* sub = &app;
        while (!sub->get_subcommands().empty()) sub = sub->get_subcommands().front();
        err << sub->help();
        return 2;
    }
    if (!cli.action) {
        err << app.help();
        return 2;
    }
    try {
        return cli.action();
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace cryptolab
