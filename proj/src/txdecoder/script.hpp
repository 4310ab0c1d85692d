#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "util/hexbytes.hpp"

namespace chainsent {

struct OpReturnResult {
    bool is_op_return = false; // script starts with OP_RETURN
    bool malformed = false;    // a push declared more bytes than remain
    Bytes data;                // concatenated pushed payload
};

// Concatenates the data pushes following a leading OP_RETURN (0x6a):
// direct pushes 0x01..0x4b plus OP_PUSHDATA1/2/4. Parsing stops at the first
// non-push opcode. A push running past the end marks the script malformed.
OpReturnResult extract_op_return(const Bytes &script);

// OP_DUP OP_HASH160 <20 bytes> OP_EQUALVERIFY OP_CHECKSIG -> the 20 bytes.
std::optional<Bytes> match_p2pkh(const Bytes &script);

// <push of 33 or 65 bytes> OP_CHECKSIG -> the pushed key bytes.
std::optional<Bytes> match_p2pk(const Bytes &script);

// Longest printable run across the data pushes of a coinbase input script
// (the tail is scanned raw once push parsing breaks down, since coinbase
// inputs are free-form). Height and extra-nonce pushes in front of a miner
// tag are binary, so the run scan skips them naturally. Returns nothing
// when no run of >= 2 codepoints exists.
std::optional<std::string> extract_coinbase_text(const Bytes &script_sig,
                                                 double threshold);

// Base58 address -> drop version byte and 4 checksum bytes, return the
// payload when it reads as text. The checksum is deliberately not verified:
// addresses fabricated to spell text cannot carry a valid one.
std::optional<std::string> extract_ascii_address(std::string_view address,
                                                 double threshold);

// Whole calldata blob as UTF-8 text, or nothing.
std::optional<std::string> extract_eth_calldata_text(const Bytes &data,
                                                     double threshold);

// Text hidden in a fake public key: longest printable run across the key
// bytes after the type prefix; accepted from 8 codepoints up so that real
// keys (random bytes) stay silent.
std::optional<std::string> extract_pubkey_text(const Bytes &pubkey);

} // namespace chainsent
