#include "txdecoder/decoder.hpp"

#include <fstream>
#include <thread>

#include <json.hpp>

#include "txdecoder/script.hpp"
#include "util/kvconfig.hpp"
#include "util/logging.hpp"
#include "util/status.hpp"
#include "util/textutil.hpp"

namespace chainsent {

using nlohmann::json;

const char *chain_name(Chain c) { return c == Chain::Btc ? "btc" : "eth"; }

const char *location_name(PayloadLocation l) {
    switch (l) {
    case PayloadLocation::CoinbaseInput: return "coinbase_input";
    case PayloadLocation::OutputScript: return "output_script";
    case PayloadLocation::TxInputData: return "tx_input_data";
    }
    return "?";
}

const char *method_name(InsertionMethod m) {
    switch (m) {
    case InsertionMethod::OpReturn: return "op_return";
    case InsertionMethod::CoinbaseScript: return "coinbase_script";
    case InsertionMethod::PubkeyPayload: return "pubkey_payload";
    case InsertionMethod::AsciiAddress: return "ascii_address";
    case InsertionMethod::EthCalldata: return "eth_calldata";
    }
    return "?";
}

std::optional<Chain> chain_from_name(std::string_view s) {
    if (s == "btc") return Chain::Btc;
    if (s == "eth") return Chain::Eth;
    return std::nullopt;
}

std::optional<PayloadLocation> location_from_name(std::string_view s) {
    if (s == "coinbase_input") return PayloadLocation::CoinbaseInput;
    if (s == "output_script") return PayloadLocation::OutputScript;
    if (s == "tx_input_data") return PayloadLocation::TxInputData;
    return std::nullopt;
}

ParsedLine parse_tx_line(const std::string &line) {
    ParsedLine out;
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        out.error = "malformed JSON";
        return out;
    }
    RawTxRecord rec;
    if (!j.contains("chain") || !j["chain"].is_string()) {
        out.error = "missing chain";
        return out;
    }
    auto chain = chain_from_name(j["chain"].get<std::string>());
    if (!chain) {
        out.error = "unknown chain: " + j["chain"].get<std::string>();
        return out;
    }
    rec.chain = *chain;
    if (!j.contains("hash") || !j["hash"].is_string() ||
        j["hash"].get<std::string>().empty()) {
        out.error = "missing hash";
        return out;
    }
    rec.hash = j["hash"].get<std::string>();
    if (!j.contains("block_timestamp") || !j["block_timestamp"].is_string()) {
        out.error = "missing block_timestamp";
        return out;
    }
    auto ts = parse_iso8601_utc(j["block_timestamp"].get<std::string>());
    if (!ts) {
        out.error = "unparseable timestamp: " + j["block_timestamp"].get<std::string>();
        return out;
    }
    rec.block_timestamp = *ts;
    if (!j.contains("payloads") || !j["payloads"].is_array()) {
        out.error = "missing payloads";
        return out;
    }
    for (const auto &entry : j["payloads"]) {
        if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() ||
            !entry[1].is_string()) {
            out.error = "payload entries must be [location, hex]";
            return out;
        }
        auto loc = location_from_name(entry[0].get<std::string>());
        if (!loc) {
            out.error = "unknown payload location: " + entry[0].get<std::string>();
            return out;
        }
        auto bytes = hex_decode(entry[1].get<std::string>());
        if (!bytes) {
            out.error = "payload is not valid hex";
            return out;
        }
        rec.payloads.push_back(TxPayload{*loc, std::move(*bytes)});
    }
    out.record = std::move(rec);
    return out;
}

DecodeOutcome decode_record(const RawTxRecord &tx, double printability) {
    DecodeOutcome out;
    auto emit = [&](InsertionMethod method, std::string text) {
        out.records.push_back(TextRecord{tx.chain, std::move(text),
                                         tx.block_timestamp, method, tx.hash});
    };
    for (const auto &payload : tx.payloads) {
        switch (payload.location) {
        case PayloadLocation::CoinbaseInput: {
            auto text = extract_coinbase_text(payload.bytes, printability);
            if (text) emit(InsertionMethod::CoinbaseScript, std::move(*text));
            break;
        }
        case PayloadLocation::OutputScript: {
            OpReturnResult op = extract_op_return(payload.bytes);
            if (op.malformed) {
                out.malformed_payloads += 1;
                break;
            }
            if (op.is_op_return) {
                std::string_view view(
                    reinterpret_cast<const char *>(op.data.data()),
                    op.data.size());
                if (passes_printability(view, printability))
                    emit(InsertionMethod::OpReturn, std::string(view));
                break;
            }
            if (auto hash160 = match_p2pkh(payload.bytes)) {
                std::string_view view(
                    reinterpret_cast<const char *>(hash160->data()),
                    hash160->size());
                if (passes_printability(view, printability))
                    emit(InsertionMethod::AsciiAddress, std::string(view));
                break;
            }
            if (auto pubkey = match_p2pk(payload.bytes)) {
                if (auto text = extract_pubkey_text(*pubkey))
                    emit(InsertionMethod::PubkeyPayload, std::move(*text));
            }
            break;
        }
        case PayloadLocation::TxInputData: {
            auto text = extract_eth_calldata_text(payload.bytes, printability);
            if (text) emit(InsertionMethod::EthCalldata, std::move(*text));
            break;
        }
        }
    }
    return out;
}

std::string text_record_to_json(const TextRecord &rec) {
    json j;
    j["chain"] = chain_name(rec.chain);
    j["text"] = rec.text;
    j["block_timestamp"] = format_iso8601_utc(rec.block_timestamp);
    j["method"] = method_name(rec.method);
    j["source_hash"] = rec.source_hash;
    return j.dump();
}

namespace {

struct LineResult {
    std::string output;  // serialized TextRecords, newline-terminated each
    std::string warning; // non-fatal problem for stderr
    bool parsed = false;
    bool chain_skip = false;
    int malformed = 0;
    int texts = 0;
};

LineResult process_line(const std::string &line, std::uint64_t lineno,
                        const std::string &chain_filter, double printability) {
    LineResult res;
    ParsedLine parsed = parse_tx_line(line);
    if (!parsed.record) {
        res.warning = "line " + std::to_string(lineno) + ": " + parsed.error;
        return res;
    }
    res.parsed = true;
    const RawTxRecord &rec = *parsed.record;
    if (!chain_filter.empty() && chain_filter != "both" &&
        chain_filter != chain_name(rec.chain)) {
        res.chain_skip = true;
        return res;
    }
    DecodeOutcome outcome = decode_record(rec, printability);
    res.malformed = outcome.malformed_payloads;
    if (outcome.malformed_payloads > 0)
        res.warning = "line " + std::to_string(lineno) + ": tx " + rec.hash +
                      ": malformed script push";
    for (const auto &text : outcome.records) {
        res.output += text_record_to_json(text);
        res.output += '\n';
        res.texts += 1;
    }
    return res;
}

} // namespace

DecodeStats decode_stream(const std::string &in_path, const std::string &out_path,
                          const std::string &chain_filter, double printability,
                          int threads) {
    std::ifstream in(in_path, std::ios::binary);
    if (!in) fail_io("cannot open input: " + in_path);
    std::ofstream out(out_path, std::ios::binary);
    if (!out) fail_io("cannot open output: " + out_path);
    if (threads < 1) threads = 1;

    DecodeStats stats;
    const std::size_t batch_size = 1024;
    std::vector<std::string> batch;
    std::vector<std::uint64_t> linenos; // line numbers for the batch
    batch.reserve(batch_size);

    auto flush_batch = [&] {
        if (batch.empty()) return;
        std::vector<LineResult> results(batch.size());
        if (threads == 1 || batch.size() < 2) {
            for (std::size_t i = 0; i < batch.size(); ++i)
                results[i] = process_line(batch[i], linenos[i], chain_filter,
                                          printability);
        } else {
            int workers = std::min<std::size_t>(threads, batch.size());
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t i = w; i < batch.size();
                         i += static_cast<std::size_t>(workers))
                        results[i] = process_line(batch[i], linenos[i],
                                                  chain_filter, printability);
                });
            }
            for (auto &t : pool) t.join();
        }
        for (const auto &res : results) {
            if (!res.warning.empty()) log_warn(res.warning);
            if (!res.parsed) {
                stats.parse_errors += 1;
                continue;
            }
            stats.records += 1;
            if (res.chain_skip) {
                stats.skipped_chain += 1;
                continue;
            }
            stats.malformed_payloads += static_cast<std::uint64_t>(res.malformed);
            stats.texts += static_cast<std::uint64_t>(res.texts);
            out << res.output;
        }
        batch.clear();
        linenos.clear();
    };

    std::string line;
    while (std::getline(in, line)) {
        stats.lines += 1;
        if (trim(line).empty()) continue;
        batch.push_back(line);
        linenos.push_back(stats.lines);
        if (batch.size() >= batch_size) flush_batch();
    }
    flush_batch();
    out.flush();
    if (!out) fail_io("write failed: " + out_path);
    return stats;
}

} // namespace chainsent
