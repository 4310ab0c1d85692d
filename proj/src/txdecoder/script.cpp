#include "txdecoder/script.hpp"

#include "txdecoder/base58.hpp"
#include "util/textutil.hpp"

namespace chainsent {

namespace {
constexpr std::uint8_t OP_RETURN = 0x6a;
constexpr std::uint8_t OP_PUSHDATA1 = 0x4c;
constexpr std::uint8_t OP_PUSHDATA2 = 0x4d;
constexpr std::uint8_t OP_PUSHDATA4 = 0x4e;
constexpr std::uint8_t OP_DUP = 0x76;
constexpr std::uint8_t OP_HASH160 = 0xa9;
constexpr std::uint8_t OP_EQUALVERIFY = 0x88;
constexpr std::uint8_t OP_CHECKSIG = 0xac;
} // namespace

OpReturnResult extract_op_return(const Bytes &script) {
    OpReturnResult res;
    if (script.empty() || script[0] != OP_RETURN) return res;
    res.is_op_return = true;
    std::size_t i = 1;
    while (i < script.size()) {
        std::uint8_t op = script[i];
        std::size_t len = 0;
        std::size_t header = 1;
        if (op >= 0x01 && op <= 0x4b) {
            len = op;
        } else if (op == OP_PUSHDATA1) {
            if (i + 1 >= script.size()) {
                res.malformed = true;
                return res;
            }
            len = script[i + 1];
            header = 2;
        } else if (op == OP_PUSHDATA2) {
            if (i + 2 >= script.size()) {
                res.malformed = true;
                return res;
            }
            len = script[i + 1] | std::size_t(script[i + 2]) << 8;
            header = 3;
        } else if (op == OP_PUSHDATA4) {
            if (i + 4 >= script.size()) {
                res.malformed = true;
                return res;
            }
            len = script[i + 1] | std::size_t(script[i + 2]) << 8 |
                  std::size_t(script[i + 3]) << 16 |
                  std::size_t(script[i + 4]) << 24;
            header = 5;
        } else if (op == 0x00) {
            // OP_0 pushes an empty byte string
            i += 1;
            continue;
        } else {
            break; // not a data push; OP_RETURN payloads end here
        }
        if (i + header + len > script.size()) {
            res.malformed = true;
            return res;
        }
        res.data.insert(res.data.end(), script.begin() + i + header,
                        script.begin() + i + header + len);
        i += header + len;
    }
    return res;
}

std::optional<Bytes> match_p2pkh(const Bytes &script) {
    if (script.size() != 25) return std::nullopt;
    if (script[0] != OP_DUP || script[1] != OP_HASH160 || script[2] != 0x14 ||
        script[23] != OP_EQUALVERIFY || script[24] != OP_CHECKSIG)
        return std::nullopt;
    return Bytes(script.begin() + 3, script.begin() + 23);
}

std::optional<Bytes> match_p2pk(const Bytes &script) {
    if (script.size() == 35 && script[0] == 33 && script[34] == OP_CHECKSIG)
        return Bytes(script.begin() + 1, script.begin() + 34);
    if (script.size() == 67 && script[0] == 65 && script[66] == OP_CHECKSIG)
        return Bytes(script.begin() + 1, script.begin() + 66);
    return std::nullopt;
}

std::optional<std::string> extract_coinbase_text(const Bytes &script_sig,
                                                 double threshold) {
    // Walk the scriptSig as data pushes so push-length bytes that happen to
    // be printable (the genesis block's 0x45 = 'E') never bleed into a text
    // run. Coinbase inputs are free-form, so once a byte is not a valid
    // push the rest of the script is scanned as one raw blob instead.
    std::vector<Bytes> blobs;
    std::size_t i = 0;
    while (i < script_sig.size()) {
        std::uint8_t op = script_sig[i];
        std::size_t len = 0;
        std::size_t header = 1;
        if (op == 0x00) {
            i += 1;
            continue;
        } else if (op >= 0x01 && op <= 0x4b) {
            len = op;
        } else if (op == OP_PUSHDATA1 && i + 1 < script_sig.size()) {
            len = script_sig[i + 1];
            header = 2;
        } else if (op == OP_PUSHDATA2 && i + 2 < script_sig.size()) {
            len = script_sig[i + 1] | std::size_t(script_sig[i + 2]) << 8;
            header = 3;
        } else {
            break;
        }
        if (i + header + len > script_sig.size()) break;
        blobs.emplace_back(script_sig.begin() + i + header,
                           script_sig.begin() + i + header + len);
        i += header + len;
    }
    if (i < script_sig.size())
        blobs.emplace_back(script_sig.begin() + i, script_sig.end());

    std::string best;
    std::size_t best_cp = 0;
    for (const Bytes &blob : blobs) {
        for (auto &run : find_text_runs(blob)) {
            if (run.codepoints >= 2 && run.codepoints > best_cp) {
                best_cp = run.codepoints;
                best = std::move(run.text);
            }
        }
    }
    if (best.empty()) return std::nullopt;
    if (!passes_printability(best, threshold)) return std::nullopt;
    return best;
}

std::optional<std::string> extract_ascii_address(std::string_view address,
                                                 double threshold) {
    auto bytes = base58_decode(address);
    if (!bytes) return std::nullopt;
    if (bytes->size() < 7) return std::nullopt; // version + >=2 payload + checksum
    std::string payload(bytes->begin() + 1, bytes->end() - 4);
    if (!passes_printability(payload, threshold)) return std::nullopt;
    return payload;
}

std::optional<std::string> extract_eth_calldata_text(const Bytes &data,
                                                     double threshold) {
    if (data.empty()) return std::nullopt;
    std::string_view view(reinterpret_cast<const char *>(data.data()),
                          data.size());
    if (!passes_printability(view, threshold)) return std::nullopt;
    return std::string(view);
}

std::optional<std::string> extract_pubkey_text(const Bytes &pubkey) {
    if (pubkey.size() < 2) return std::nullopt;
    Bytes body(pubkey.begin() + 1, pubkey.end());
    std::vector<TextRun> runs = find_text_runs(body);
    const TextRun *best = nullptr;
    for (const auto &run : runs)
        if (!best || run.codepoints > best->codepoints) best = &run;
    if (!best || best->codepoints < 8) return std::nullopt;
    return best->text;
}

} // namespace chainsent
