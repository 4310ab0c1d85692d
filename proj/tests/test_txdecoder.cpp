#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "txdecoder/base58.hpp"
#include "txdecoder/decoder.hpp"
#include "txdecoder/script.hpp"
#include "util/hexbytes.hpp"

using namespace chainsent;

namespace {

Bytes from_hex(const std::string &h) {
    auto b = hex_decode(h);
    REQUIRE(b.has_value());
    return *b;
}

Bytes ascii(const std::string &s) { return Bytes(s.begin(), s.end()); }

// The first block's coinbase input, which famously carries a newspaper
// headline after the height and difficulty pushes.
const char *kGenesisScriptSig =
    "04ffff001d0104455468652054696d65732030332f4a616e2f32303039204368616e63"
    "656c6c6f72206f6e206272696e6b206f66207365636f6e64206261696c6f757420666f"
    "722062616e6b73";

} // namespace

TEST_CASE("coinbase text skips push headers even when they look printable") {
    // The 0x45 length byte before the headline is 'E' in ASCII; it must not
    // be glued onto the extracted text.
    auto text = extract_coinbase_text(from_hex(kGenesisScriptSig), 0.9);
    REQUIRE(text.has_value());
    CHECK(*text ==
          "The Times 03/Jan/2009 Chancellor on brink of second bailout for "
          "banks");
}

TEST_CASE("coinbase text falls back to a raw scan for free form tails") {
    // height push, then an unstructured miner tag (not a valid push)
    Bytes script = from_hex("038fa509");
    std::string tag = "/Mined by the friendly pool/";
    script.insert(script.end(), tag.begin(), tag.end());
    auto text = extract_coinbase_text(script, 0.9);
    REQUIRE(text.has_value());
    CHECK(*text == tag);
}

TEST_CASE("coinbase text reads structured pushes") {
    Bytes script = from_hex("0390a50910");
    std::string tag = "mined with care!";
    script.insert(script.end(), tag.begin(), tag.end());
    auto text = extract_coinbase_text(script, 0.9);
    REQUIRE(text.has_value());
    CHECK(*text == tag);
}

TEST_CASE("coinbase extraction rejects binary only scripts") {
    CHECK(!extract_coinbase_text(from_hex("04ffff001d0102"), 0.9).has_value());
    CHECK(!extract_coinbase_text(Bytes{}, 0.9).has_value());
}

TEST_CASE("null data outputs concatenate their pushes") {
    // OP_RETURN with two direct pushes
    Bytes script = from_hex("6a");
    script.push_back(5);
    auto part1 = ascii("hello");
    script.insert(script.end(), part1.begin(), part1.end());
    script.push_back(6);
    auto part2 = ascii(" world");
    script.insert(script.end(), part2.begin(), part2.end());

    auto res = extract_op_return(script);
    CHECK(res.is_op_return);
    CHECK(!res.malformed);
    CHECK(std::string(res.data.begin(), res.data.end()) == "hello world");
}

TEST_CASE("null data outputs support every push width") {
    std::string msg = "pushdata forms work";
    Bytes direct = from_hex("6a");
    direct.push_back(static_cast<std::uint8_t>(msg.size()));
    auto m = ascii(msg);
    direct.insert(direct.end(), m.begin(), m.end());

    Bytes pd1 = from_hex("6a4c");
    pd1.push_back(static_cast<std::uint8_t>(msg.size()));
    pd1.insert(pd1.end(), m.begin(), m.end());

    Bytes pd2 = from_hex("6a4d");
    pd2.push_back(static_cast<std::uint8_t>(msg.size()));
    pd2.push_back(0);
    pd2.insert(pd2.end(), m.begin(), m.end());

    Bytes pd4 = from_hex("6a4e");
    pd4.push_back(static_cast<std::uint8_t>(msg.size()));
    pd4.push_back(0);
    pd4.push_back(0);
    pd4.push_back(0);
    pd4.insert(pd4.end(), m.begin(), m.end());

    for (const auto &script : {direct, pd1, pd2, pd4}) {
        auto res = extract_op_return(script);
        CHECK(res.is_op_return);
        CHECK(!res.malformed);
        CHECK(std::string(res.data.begin(), res.data.end()) == msg);
    }
}

TEST_CASE("a push that overruns the script is malformed") {
    auto res = extract_op_return(from_hex("6a4c50" "00112233445566778899"));
    CHECK(res.is_op_return);
    CHECK(res.malformed);

    auto res2 = extract_op_return(from_hex("6a0a" "0011"));
    CHECK(res2.is_op_return);
    CHECK(res2.malformed);

    // truncated length header
    auto res3 = extract_op_return(from_hex("6a4c"));
    CHECK(res3.is_op_return);
    CHECK(res3.malformed);
}

TEST_CASE("non null data scripts are not flagged") {
    auto res = extract_op_return(from_hex("76a914"));
    CHECK(!res.is_op_return);
    CHECK(!res.malformed);
    CHECK(!extract_op_return(Bytes{}).is_op_return);
}

TEST_CASE("pay to pubkey hash pattern yields the twenty byte payload") {
    std::string burn = "hodl forever friend!";
    REQUIRE(burn.size() == 20);
    Bytes script = from_hex("76a914");
    auto b = ascii(burn);
    script.insert(script.end(), b.begin(), b.end());
    auto tail = from_hex("88ac");
    script.insert(script.end(), tail.begin(), tail.end());

    auto hash160 = match_p2pkh(script);
    REQUIRE(hash160.has_value());
    CHECK(std::string(hash160->begin(), hash160->end()) == burn);

    // wrong length or wrong opcodes
    Bytes off = script;
    off.push_back(0x00);
    CHECK(!match_p2pkh(off).has_value());
    Bytes wrong = script;
    wrong[0] = 0x75;
    CHECK(!match_p2pkh(wrong).has_value());
}

TEST_CASE("pay to pubkey pattern accepts both key sizes") {
    Bytes key33 = {0x02};
    std::string msg = "to the moon and beyond!";
    auto m = ascii(msg);
    key33.insert(key33.end(), m.begin(), m.end());
    for (std::uint8_t i = 1; key33.size() < 33; ++i) key33.push_back(i);
    Bytes script;
    script.push_back(33);
    script.insert(script.end(), key33.begin(), key33.end());
    script.push_back(0xac);
    auto got = match_p2pk(script);
    REQUIRE(got.has_value());
    CHECK(got->size() == 33);

    auto text = extract_pubkey_text(*got);
    REQUIRE(text.has_value());
    CHECK(*text == msg);

    Bytes key65(65, 0x41); // all 'A'
    key65[0] = 0x04;
    Bytes script65;
    script65.push_back(65);
    script65.insert(script65.end(), key65.begin(), key65.end());
    script65.push_back(0xac);
    auto got65 = match_p2pk(script65);
    REQUIRE(got65.has_value());
    CHECK(got65->size() == 65);

    CHECK(!match_p2pk(from_hex("6a04deadbeef")).has_value());
}

TEST_CASE("pubkey payloads need a run of at least eight characters") {
    Bytes key = {0x02};
    auto m = ascii("short");
    key.insert(key.end(), m.begin(), m.end());
    while (key.size() < 33) key.push_back(0x01);
    CHECK(!extract_pubkey_text(key).has_value());
}

TEST_CASE("base58 round trips and rejects foreign characters") {
    Bytes payload = {0x00, 0x01, 0x02, 0xff, 0x7e};
    auto encoded = base58_encode(payload);
    auto decoded = base58_decode(encoded);
    REQUIRE(decoded.has_value());
    CHECK(*decoded == payload);

    // leading zero bytes map to leading '1's
    CHECK(base58_encode({0x00, 0x00, 0x01})[0] == '1');
    CHECK(base58_encode({0x00, 0x00, 0x01})[1] == '1');

    CHECK(!base58_decode("0OIl").has_value()); // excluded alphabet
    auto empty = base58_decode("");
    REQUIRE(empty.has_value());
    CHECK(empty->empty());
}

TEST_CASE("address payload text sits between version and checksum") {
    // version byte + readable payload + 4 byte checksum
    Bytes raw = {0x00};
    auto m = ascii("readable text");
    raw.insert(raw.end(), m.begin(), m.end());
    raw.insert(raw.end(), {0xde, 0xad, 0xbe, 0xef});
    auto addr = base58_encode(raw);
    auto text = extract_ascii_address(addr, 0.9);
    REQUIRE(text.has_value());
    CHECK(*text == "readable text");

    CHECK(!extract_ascii_address("abc", 0.9).has_value()); // too short
}

TEST_CASE("eth calldata decodes whole printable buffers only") {
    auto text = extract_eth_calldata_text(ascii("gm wagmi lfg"), 0.9);
    REQUIRE(text.has_value());
    CHECK(*text == "gm wagmi lfg");

    Bytes mostly_binary = {0x00, 0x01, 0x02, 'h', 'i'};
    CHECK(!extract_eth_calldata_text(mostly_binary, 0.9).has_value());
    CHECK(!extract_eth_calldata_text(Bytes{}, 0.9).has_value());
}

TEST_CASE("transaction lines parse into typed records") {
    std::string line =
        R"({"chain":"btc","hash":"ab12","block_timestamp":"2021-02-01T09:15:00Z",)"
        R"("payloads":[["output_script","6a0568656c6c6f"]]})";
    auto parsed = parse_tx_line(line);
    REQUIRE(parsed.record.has_value());
    CHECK(parsed.error.empty());
    CHECK(parsed.record->chain == Chain::Btc);
    CHECK(parsed.record->hash == "ab12");
    REQUIRE(parsed.record->payloads.size() == 1);
    CHECK(parsed.record->payloads[0].location == PayloadLocation::OutputScript);
}

TEST_CASE("transaction line rejections name the problem") {
    auto bad_json = parse_tx_line("{not json");
    CHECK(!bad_json.record.has_value());
    CHECK(!bad_json.error.empty());

    auto bad_chain = parse_tx_line(
        R"({"chain":"doge","hash":"x","block_timestamp":"2021-01-01T00:00:00Z","payloads":[]})");
    CHECK(!bad_chain.record.has_value());

    auto bad_hex = parse_tx_line(
        R"({"chain":"btc","hash":"x","block_timestamp":"2021-01-01T00:00:00Z","payloads":[["output_script","zz"]]})");
    CHECK(!bad_hex.record.has_value());

    auto bad_time = parse_tx_line(
        R"({"chain":"btc","hash":"x","block_timestamp":"yesterday","payloads":[]})");
    CHECK(!bad_time.record.has_value());

    auto bad_location = parse_tx_line(
        R"({"chain":"btc","hash":"x","block_timestamp":"2021-01-01T00:00:00Z","payloads":[["somewhere","00"]]})");
    CHECK(!bad_location.record.has_value());

    auto empty_hash = parse_tx_line(
        R"({"chain":"btc","hash":"","block_timestamp":"2021-01-01T00:00:00Z","payloads":[]})");
    CHECK(!empty_hash.record.has_value());
}

TEST_CASE("decoding a record emits one entry per text payload") {
    RawTxRecord tx;
    tx.chain = Chain::Btc;
    tx.hash = "cafe";
    tx.block_timestamp = 1612170900;
    tx.payloads.push_back({PayloadLocation::OutputScript,
                           from_hex("6a0b68656c6c6f20776f726c64")});
    tx.payloads.push_back({PayloadLocation::OutputScript, from_hex("6a0200ff")});

    auto out = decode_record(tx, 0.9);
    REQUIRE(out.records.size() == 1);
    CHECK(out.records[0].text == "hello world");
    CHECK(out.records[0].method == InsertionMethod::OpReturn);
    CHECK(out.records[0].source_hash == "cafe");
    CHECK(out.malformed_payloads == 0);

    std::string json = text_record_to_json(out.records[0]);
    CHECK(json.find("\"chain\":\"btc\"") != std::string::npos);
    CHECK(json.find("\"method\":\"op_return\"") != std::string::npos);
    CHECK(json.find("\"block_timestamp\":\"2021-02-01T09:15:00Z\"") !=
          std::string::npos);
}

TEST_CASE("streamed decoding filters by chain and preserves input order") {
    std::string in_path = "decoder_stream_test_in.ndjson";
    std::string out_path = "decoder_stream_test_out.ndjson";
    {
        std::ofstream f(in_path);
        for (int i = 0; i < 40; ++i) {
            const char *chain = (i % 2 == 0) ? "btc" : "eth";
            std::string text = "message number " + std::to_string(i);
            Bytes payload(text.begin(), text.end());
            std::string hexed = hex_encode(payload);
            if (i % 2 == 0) {
                char len[3];
                std::snprintf(len, sizeof len, "%02x",
                              static_cast<unsigned>(payload.size()));
                f << R"({"chain":"btc","hash":"h)" << i
                  << R"(","block_timestamp":"2021-02-01T00:00:00Z",)"
                  << R"("payloads":[["output_script","6a)" << len << hexed
                  << R"("]]})" << "\n";
            } else {
                f << R"({"chain":"eth","hash":"h)" << i
                  << R"(","block_timestamp":"2021-02-01T00:00:00Z",)"
                  << R"("payloads":[["tx_input_data",")" << hexed << R"("]]})"
                  << "\n";
            }
            (void)chain;
        }
    }

    auto stats = decode_stream(in_path, out_path, "eth", 0.9, 1);
    CHECK(stats.lines == 40);
    CHECK(stats.records == 40); // every line parses; half are then skipped
    CHECK(stats.skipped_chain == 20);
    CHECK(stats.texts == 20);
    CHECK(stats.parse_errors == 0);

    std::ifstream check(out_path);
    std::string line;
    int idx = 1;
    while (std::getline(check, line)) {
        std::string expect = "message number " + std::to_string(idx);
        CHECK(line.find(expect) != std::string::npos);
        idx += 2;
    }
    CHECK(idx == 41);

    std::remove(in_path.c_str());
    std::remove(out_path.c_str());
}
