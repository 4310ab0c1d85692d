#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textprep/lexicons.hpp"
#include "txdecoder/decoder.hpp"
#include "util/datetime.hpp"

namespace chainsent {

struct CleanText {
    Chain chain = Chain::Btc;
    std::string text;
    std::vector<std::string> tokens;
    EpochSeconds block_timestamp = 0;
};

std::string clean_text_to_json(const CleanText &c);

// Parses one corpus NDJSON line; lineno is reported in error messages.
CleanText clean_text_from_json(const std::string &line, std::uint64_t lineno);

std::vector<CleanText> read_corpus(const std::string &path);

struct CorpusOptions {
    const TokenSet *vocab = nullptr;             // required unless minimal
    const FinancialLexicon *lexicon = nullptr;   // required
    const AbbreviationMap *abbreviations = nullptr; // optional
    bool minimal = false; // skip the full cascade: unwrap/length checks only
    std::size_t max_run = 25;
};

struct CorpusCounts {
    std::uint64_t input = 0;
    std::uint64_t corpus = 0;
    std::uint64_t financial = 0;
};

// Reads decoded-text NDJSON and writes the cleaned corpus and/or its
// financial subset (either path may be empty to skip that artifact).
// Counts cover both regardless of what is written.
CorpusCounts build_corpora(const std::string &in_path,
                           const std::string &corpus_path,
                           const std::string &financial_path,
                           const CorpusOptions &opt);

// Single-record version of the transform behind build_corpora. Returns false
// when the text is rejected; on success fills `out` and `financial`.
bool clean_record(Chain chain, const std::string &text, EpochSeconds ts,
                  const CorpusOptions &opt, CleanText &out, bool &financial);

} // namespace chainsent
