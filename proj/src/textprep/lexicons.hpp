#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace chainsent {

using TokenSet = std::set<std::string>;

// One token per line, '#' starts a comment, tokens are lowercased on load.
TokenSet load_token_set(const std::string &path);

struct FinancialLexicon {
    TokenSet words;
    bool contains(const std::string &w) const { return words.count(w) != 0; }
};

// Same file format; an empty result is a configuration error.
FinancialLexicon load_financial_lexicon(const std::string &path);

struct AbbreviationMap {
    std::map<std::string, std::string> entries;
};

// token<TAB>phrase per line, '#' comments. Keys are lowercased; a key that
// maps to itself or appears inside any replacement phrase is rejected, which
// is what makes expansion idempotent.
AbbreviationMap load_abbreviations(const std::string &path);

// Whole-token replacement over whitespace-separated lowercase text.
std::string expand_abbreviations(const std::string &text,
                                 const AbbreviationMap &map);

// Keeps tokens found in the vocabulary or the lexicon, preserving order.
// An empty vocabulary is a configuration error.
std::vector<std::string> remove_oov(const std::vector<std::string> &tokens,
                                    const TokenSet &vocab,
                                    const FinancialLexicon &lex);

// True iff at least one token is a lexicon word.
bool financial_match(const std::vector<std::string> &tokens,
                     const FinancialLexicon &lex);

} // namespace chainsent
