#include "textprep/corpus.hpp"

#include <fstream>

#include <json.hpp>

#include "textprep/cleanup.hpp"
#include "util/logging.hpp"
#include "util/status.hpp"
#include "util/textutil.hpp"

namespace chainsent {

using nlohmann::json;

std::string clean_text_to_json(const CleanText &c) {
    json j;
    j["block_timestamp"] = format_iso8601_utc(c.block_timestamp);
    j["chain"] = chain_name(c.chain);
    j["text"] = c.text;
    j["tokens"] = c.tokens;
    return j.dump();
}

CleanText clean_text_from_json(const std::string &line, std::uint64_t lineno) {
    auto where = [lineno] { return "corpus line " + std::to_string(lineno); };
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        fail_input(where() + ": not a JSON object");
    CleanText c;
    if (!j.contains("chain") || !j["chain"].is_string())
        fail_input(where() + ": missing chain");
    auto chain = chain_from_name(j["chain"].get<std::string>());
    if (!chain) fail_input(where() + ": unknown chain");
    c.chain = *chain;
    if (!j.contains("text") || !j["text"].is_string())
        fail_input(where() + ": missing text");
    c.text = j["text"].get<std::string>();
    if (!j.contains("block_timestamp") || !j["block_timestamp"].is_string())
        fail_input(where() + ": missing block_timestamp");
    auto ts = parse_iso8601_utc(j["block_timestamp"].get<std::string>());
    if (!ts) fail_input(where() + ": bad block_timestamp");
    c.block_timestamp = *ts;
    if (!j.contains("tokens") || !j["tokens"].is_array())
        fail_input(where() + ": missing tokens");
    for (const auto &t : j["tokens"]) {
        if (!t.is_string()) fail_input(where() + ": non-string token");
        c.tokens.push_back(t.get<std::string>());
    }
    return c;
}

std::vector<CleanText> read_corpus(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail_io("cannot open corpus: " + path);
    std::vector<CleanText> rows;
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        rows.push_back(clean_text_from_json(line, lineno));
    }
    return rows;
}

bool clean_record(Chain chain, const std::string &text, EpochSeconds ts,
                  const CorpusOptions &opt, CleanText &out, bool &financial) {
    if (opt.lexicon == nullptr) fail_config("financial lexicon not loaded");
    if (opt.minimal) {
        auto kept = clean_text_minimal(text);
        if (!kept) return false;
        out.text = *kept;
        out.tokens = tokenize_words(to_lower(*kept));
    } else {
        if (opt.vocab == nullptr) fail_config("vocabulary not loaded");
        auto kept = clean_text(text, opt.max_run);
        if (!kept) return false;
        std::string expanded = opt.abbreviations
                                   ? expand_abbreviations(*kept, *opt.abbreviations)
                                   : *kept;
        out.text = expanded;
        out.tokens = remove_oov(tokenize_words(expanded), *opt.vocab, *opt.lexicon);
    }
    out.chain = chain;
    out.block_timestamp = ts;
    financial = financial_match(out.tokens, *opt.lexicon);
    return true;
}

CorpusCounts build_corpora(const std::string &in_path,
                           const std::string &corpus_path,
                           const std::string &financial_path,
                           const CorpusOptions &opt) {
    std::ifstream in(in_path);
    if (!in) fail_io("cannot open decoded input: " + in_path);
    std::ofstream corpus_out;
    std::ofstream financial_out;
    if (!corpus_path.empty()) {
        corpus_out.open(corpus_path, std::ios::binary | std::ios::trunc);
        if (!corpus_out) fail_io("cannot write corpus: " + corpus_path);
    }
    if (!financial_path.empty()) {
        financial_out.open(financial_path, std::ios::binary | std::ios::trunc);
        if (!financial_out) fail_io("cannot write corpus: " + financial_path);
    }

    CorpusCounts counts;
    std::string line;
    std::uint64_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("chain") ||
            !j.contains("text") || !j.contains("block_timestamp") ||
            !j["chain"].is_string() || !j["text"].is_string() ||
            !j["block_timestamp"].is_string()) {
            log_warn("skipping undecodable line " + std::to_string(lineno) +
                     " in " + in_path);
            continue;
        }
        auto chain = chain_from_name(j["chain"].get<std::string>());
        auto ts = parse_iso8601_utc(j["block_timestamp"].get<std::string>());
        if (!chain || !ts) {
            log_warn("skipping undecodable line " + std::to_string(lineno) +
                     " in " + in_path);
            continue;
        }
        counts.input += 1;
        CleanText row;
        bool financial = false;
        if (!clean_record(*chain, j["text"].get<std::string>(), *ts, opt, row,
                          financial))
            continue;
        std::string serialized = clean_text_to_json(row);
        counts.corpus += 1;
        if (corpus_out.is_open()) corpus_out << serialized << '\n';
        if (financial) {
            counts.financial += 1;
            if (financial_out.is_open()) financial_out << serialized << '\n';
        }
    }
    if (corpus_out.is_open()) {
        corpus_out.flush();
        if (!corpus_out) fail_io("short write: " + corpus_path);
    }
    if (financial_out.is_open()) {
        financial_out.flush();
        if (!financial_out) fail_io("short write: " + financial_path);
    }
    return counts;
}

} // namespace chainsent
