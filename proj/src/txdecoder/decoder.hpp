#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "util/datetime.hpp"
#include "util/hexbytes.hpp"

namespace chainsent {

enum class Chain { Btc, Eth };
enum class PayloadLocation { CoinbaseInput, OutputScript, TxInputData };
enum class InsertionMethod {
    OpReturn,
    CoinbaseScript,
    PubkeyPayload,
    AsciiAddress,
    EthCalldata
};

const char *chain_name(Chain c);
const char *location_name(PayloadLocation l);
const char *method_name(InsertionMethod m);
std::optional<Chain> chain_from_name(std::string_view s);
std::optional<PayloadLocation> location_from_name(std::string_view s);

struct TxPayload {
    PayloadLocation location;
    Bytes bytes; // may be empty
};

struct RawTxRecord {
    Chain chain = Chain::Btc;
    std::string hash;
    EpochSeconds block_timestamp = 0;
    std::vector<TxPayload> payloads;
};

struct TextRecord {
    Chain chain;
    std::string text;
    EpochSeconds block_timestamp;
    InsertionMethod method;
    std::string source_hash;
};

struct ParsedLine {
    std::optional<RawTxRecord> record;
    std::string error; // set when the line could not be parsed
};

// One NDJSON object: chain, hash, block_timestamp, payloads [[location,hex]].
ParsedLine parse_tx_line(const std::string &line);

struct DecodeOutcome {
    std::vector<TextRecord> records;
    int malformed_payloads = 0; // scripts with truncated pushes
};

// Applies every location-appropriate detector to each payload, in payload
// order. Pure: identical inputs give identical outputs.
DecodeOutcome decode_record(const RawTxRecord &tx, double printability);

std::string text_record_to_json(const TextRecord &rec);

struct DecodeStats {
    std::uint64_t lines = 0;
    std::uint64_t parse_errors = 0;
    std::uint64_t records = 0;
    std::uint64_t skipped_chain = 0;
    std::uint64_t malformed_payloads = 0;
    std::uint64_t texts = 0;
};

// Streams NDJSON from in_path to out_path. chain_filter empty/"both" keeps
// everything. threads > 1 decodes batches concurrently; output order always
// matches input order, so thread count never changes the artifact.
DecodeStats decode_stream(const std::string &in_path, const std::string &out_path,
                          const std::string &chain_filter, double printability,
                          int threads);

} // namespace chainsent
