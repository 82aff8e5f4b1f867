#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "../../tools/cli.hpp"
#include "../golden_session.hpp"
#include "cryptolab/classical.hpp"
#include "cryptolab/cryptanalysis.hpp"
#include "cryptolab/dh.hpp"
#include "cryptolab/explain.hpp"
#include "cryptolab/hybrid.hpp"
#include "cryptolab/rsa.hpp"
#include "cryptolab/toyblock.hpp"
#include "cryptolab/wire.hpp"

using namespace cryptolab;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Result run_json(std::vector<std::string> args) {
    args.insert(args.begin(), "--json");
    auto r = run(std::move(args));
    INFO(r.err);
    REQUIRE(r.code == 0);
    return r;
}

}  // namespace

TEST_CASE("caesar commands agree with the library") {
    CHECK(run_json({"caesar", "enc", "--text", "Hello, World", "--shift", "3"}).json()["text"] ==
          caesar_encrypt("Hello, World", ShiftKey{3}));
    CHECK(run_json({"caesar", "dec", "--text", "KHOOR", "--shift", "29"}).json()["text"] == "HELLO");
    CHECK(run({"caesar", "enc", "--text", "HELLO", "--shift", "3"}).out == "KHOOR\n");

    const auto brute = run_json({"caesar", "brute", "--text", "KHOOR"}).json();
    const auto lib = caesar_bruteforce("KHOOR");
    REQUIRE(brute["candidates"].size() == lib.size());
    for (std::size_t i = 0; i < lib.size(); ++i) CHECK(brute["candidates"][i]["plaintext"] == lib[i].plaintext);

    const std::string text = caesar_encrypt("THE QUICK BROWN FOX JUMPS OVER THE LAZY DOG AND THEN SOME MORE ENGLISH TEXT", ShiftKey{11});
    const auto crack = run_json({"caesar", "crack", "--freq", "--text", text}).json();
    CHECK(crack["best"]["shift"] == caesar_frequency_attack(text).best().shift.shift);

    const auto strict = run({"caesar", "enc", "--text", "AB C", "--shift", "1", "--strict"});
    CHECK(strict.code == 1);
    CHECK(strict.err.find('2') != std::string::npos);
}

TEST_CASE("text can come from a file") {
    const auto path = std::filesystem::temp_directory_path() / "cryptolab_cli_input.txt";
    std::ofstream(path) << "HELLO";
    CHECK(run_json({"caesar", "enc", "--file", path.string(), "--shift", "3"}).json()["text"] == "KHOOR");
    std::filesystem::remove(path);
    CHECK(run({"caesar", "enc", "--file", path.string(), "--shift", "3"}).code == 1);
}

TEST_CASE("rail, pad, bits and toy block commands agree with the library") {
    CHECK(run_json({"rail", "enc", "--text", "HELLOWORLD", "--rails", "2"}).json()["text"] == "HLOOLELWRD");
    CHECK(run_json({"rail", "dec", "--text", "HLOOLELWRD", "--rails", "2"}).json()["text"] == "HELLOWORLD");
    CHECK(run_json({"otp", "enc", "--text", "HELLO", "--key", "XMCKL"}).json()["text"] == "EQNVZ");
    CHECK(run_json({"otp", "dec", "--text", "EQNVZ", "--key", "XMCKL"}).json()["text"] == "HELLO");
    CHECK(run_json({"otp", "explore", "--cipher", "EQNVZ", "--plain", "HELLO"}).json()["key"] == "XMCKL");
    const auto ex = run_json({"otp", "explore", "--cipher", "QZK", "--exhaustive"}).json();
    CHECK(ex["perfect_secrecy"]["bijective"] == true);
    CHECK(run({"otp", "enc", "--text", "HELLO", "--key", "XM"}).code == 1);

    CHECK(run_json({"bits", "encode", "--text", "A"}).json()["bits"] == chars_to_bits("A"));
    CHECK(run_json({"bits", "decode", "--bits", "0100000101000010"}).json()["text"] == "AB");

    CHECK(run_json({"toyblock", "enc", "--block", "10110010", "--keys", "11111111"}).json()["bits"] == "11010100");
    const ToyBlockKey key({23, 200}, nibble_swap());
    CHECK(run_json({"toyblock", "dec", "--hex", "cddad7debbd6dadcd2c8cfc9da", "--keys", "23,200"}).json()["text"] ==
          "VALE MAGISTRA");
    const auto enc = run_json({"toyblock", "enc", "--text", "HI", "--keys", "23,200"}).json();
    const std::vector<std::uint8_t> hi{'H', 'I'};
    const auto expected = toyblock_encrypt_bytes(hi, key);
    CHECK(enc["hex"].get<std::string>().size() == 4);
    CHECK(std::stoi(enc["hex"].get<std::string>().substr(0, 2), nullptr, 16) == expected[0]);
}

TEST_CASE("frequency commands") {
    const auto f = run_json({"freq", "analyze", "--text", "AAB"}).json();
    CHECK(f["frequencies"]["A"].get<double>() == doctest::Approx(2.0 / 3.0));
    CHECK(f["sorted"][0]["symbol"] == "A");
    const auto h = run_json({"freq", "hist", "--english", "--width", "10"}).json();
    CHECK(h["rows"].size() == 26);
    CHECK(run({"freq", "hist", "--text", "AAB", "--width", "4"}).out.find("####") != std::string::npos);
}

TEST_CASE("diffie-hellman commands") {
    const auto demo = run_json({"dh", "demo", "--p", "23", "--g", "5", "--a", "4", "--b", "3"}).json();
    CHECK(demo["A"] == 4);
    CHECK(demo["B"] == 10);
    CHECK(demo["alice_shared"] == 18);
    CHECK(demo["bob_shared"] == 18);
    CHECK(demo["colors"]["shared"]["hue"] == residue_to_color(18, 23).hue);

    const auto seeded1 = run_json({"--seed", "9", "dh", "demo"}).json();
    const auto seeded2 = run_json({"--seed", "9", "dh", "demo"}).json();
    CHECK(seeded1 == seeded2);
    CHECK(seeded1["p"] == 97);
    CHECK(seeded1["alice_shared"] == seeded1["bob_shared"]);

    const auto explain = run_json({"dh", "explain", "--a", "4", "--b", "3"}).json();
    REQUIRE(explain["steps"].size() == 6);
    CHECK(explain["steps"][5]["formula"] == "4^3 mod 23 = 18");
    CHECK(run({"dh", "demo", "--p", "21"}).code == 1);
}

TEST_CASE("rsa, one-way and hybrid commands") {
    const auto k = run_json({"rsa", "keygen", "--p", "3", "--q", "11", "--e", "3"}).json();
    CHECK(k["d"] == 7);
    CHECK(run_json({"rsa", "lock", "--m", "4", "--n", "33", "--e", "3"}).json()["value"] == 31);
    CHECK(run_json({"rsa", "unlock", "--c", "31", "--p", "3", "--q", "11", "--e", "3"}).json()["value"] == 4);
    const auto sig = run_json({"rsa", "sign", "--m", "4", "--p", "3", "--q", "11", "--e", "3"}).json()["signature"];
    CHECK(sig == private_transform(4, rsa_keygen(3, 11, 3)));
    CHECK(run({"rsa", "verify", "--m", "4", "--s", std::to_string(sig.get<int>()), "--n", "33", "--e", "3"}).code == 0);
    CHECK(run({"rsa", "verify", "--m", "5", "--s", std::to_string(sig.get<int>()), "--n", "33", "--e", "3"}).code == 1);
    CHECK(run({"rsa", "keygen", "--p", "4", "--q", "11", "--e", "3"}).code == 1);

    const auto ow = run_json({"oneway", "demo"}).json();
    CHECK(ow["product"] == 10403);
    CHECK(ow["multiply_steps"] == 1);
    CHECK(ow["factor_steps"] == 100);

    const auto sealed = run_json({"hybrid", "seal", "--message", "SALVE", "--n", "3233", "--e", "17", "--key-seed", "42",
                                  "--from-p", "89", "--from-q", "97", "--from-e", "5"})
                            .json();
    CHECK(envelope_from_json(sealed) ==
          hybrid_seal("SALVE", ToyRsaPublicKey{3233, 17}, rsa_keygen(89, 97, 5), 42));
    const auto opened = run({"--json", "hybrid", "open", "--envelope", sealed.dump(), "--p", "61", "--q", "53", "--e",
                             "17", "--from-n", "8633", "--from-e", "5"});
    CHECK(opened.code == 0);
    CHECK(opened.json()["message"] == "SALVE");
    CHECK(opened.json()["authenticity"] == "verified");

    auto tampered = sealed;
    tampered["body"] = "5d4f42584a";
    const auto bad = run({"--json", "hybrid", "open", "--envelope", tampered.dump(), "--p", "61", "--q", "53", "--e",
                          "17", "--from-n", "8633", "--from-e", "5"});
    CHECK(bad.code == 1);
    CHECK(bad.json()["authenticity"] == "FAILED");
}

TEST_CASE("seeded random pads are reproducible") {
    const auto a = run_json({"--seed", "5", "otp", "enc", "--text", "ATTACK", "--random-key"}).json();
    const auto b = run_json({"--seed", "5", "otp", "enc", "--text", "ATTACK", "--random-key"}).json();
    CHECK(a == b);
    CHECK(otp_encrypt("ATTACK", PadKey{a["key"]}) == a["text"]);
}

TEST_CASE("scenario commands") {
    const auto view = run_json({"scenario", "run", "--file", "06_diffie_hellman"}).json();
    CHECK_FALSE(view.contains("checker"));
    CHECK(view.contains("role_scripts"));
    const auto call = run_json({"scenario", "run", "--file", "08_one_way", "--call", "trial_divide", "--args",
                                R"({"n":10403,"d":101})"})
                          .json();
    CHECK(call["result"]["divides"] == true);
    CHECK(run({"scenario", "run", "--file", "08_one_way", "--call", "rsa_keygen", "--args", "{}"}).code == 1);

    CHECK(run({"scenario", "check", "--file", "08_one_way", "--answer", "101*103", "--ops", "trial_divide"}).code == 0);
    const auto wrong = run({"--json", "scenario", "check", "--file", "08_one_way", "--answer", "7*11"});
    CHECK(wrong.code == 1);
    CHECK(wrong.json()["verdict"] == "fail");
    const auto outside = run({"--json", "scenario", "check", "--file", "08_one_way", "--answer", "101*103", "--ops",
                              "trial_divide,oneway_demo"});
    CHECK(outside.json()["reason"] == "operation not in playground");
    CHECK(run({"--json", "scenario", "check", "--file", "08_one_way"}).json()["reason"] == "no answer");
    CHECK(run({"scenario", "check", "--file", "no_such_scenario", "--answer", "1"}).code == 1);
}

TEST_CASE("argument errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"caesar", "enc", "--text", "A"}).code == 2);
    CHECK(run({"caesar", "enc", "--text", "A", "--shift", "x"}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("caesar") != std::string::npos);
}

TEST_CASE("bots connect with their default names") {
    const auto dir = golden::fresh_dir("cli_bots");
    auto config = golden::base_config(dir);
    RoomConfig meddled;
    meddled.name = "meddled";
    meddled.mode = Relay{"mallory"};
    config.rooms.push_back(meddled);
    golden::TestServer ts(config);
    const auto server = "127.0.0.1:" + std::to_string(ts.tcp_port());

    const auto attacker = run({"--json", "--seed", "1", "bot", "attacker", "--server", server, "--room", "meddled", "--idle", "0.3"});
    CHECK(attacker.code == 0);
    CHECK(attacker.json()["refused"] == false);
    const auto refused = run({"--json", "bot", "attacker", "--server", server, "--room", "golden", "--idle", "0.3"});
    CHECK(refused.code == 1);
    CHECK(refused.json()["reason"].get<std::string>().rfind("attacker role refused", 0) == 0);

    const auto peer = run({"--json", "--seed", "1", "bot", "peer", "--server", server, "--room", "golden", "--idle", "0.3"});
    CHECK(peer.code == 0);
    const auto transcript = ts.server().transcript("golden");
    REQUIRE_FALSE(transcript.empty());
    CHECK(transcript.front().delivered->sender == "bob");
    const auto relay = ts.server().transcript("meddled");
    REQUIRE_FALSE(relay.empty());
    CHECK(relay.front().delivered->sender == "mallory");
    std::filesystem::remove_all(dir);
}
