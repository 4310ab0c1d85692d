#include "textprep/lexicons.hpp"

#include <fstream>

#include "util/kvconfig.hpp"
#include "util/status.hpp"
#include "util/textutil.hpp"

namespace chainsent {

namespace {

std::string strip_comment(const std::string &line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

} // namespace

TokenSet load_token_set(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail_io("cannot open lexicon file: " + path);
    TokenSet words;
    std::string line;
    while (std::getline(in, line)) {
        std::string tok = trim(strip_comment(line));
        if (tok.empty()) continue;
        words.insert(to_lower(tok));
    }
    return words;
}

FinancialLexicon load_financial_lexicon(const std::string &path) {
    FinancialLexicon lex{load_token_set(path)};
    if (lex.words.empty())
        fail_config("financial lexicon is empty: " + path);
    return lex;
}

AbbreviationMap load_abbreviations(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail_io("cannot open abbreviation file: " + path);
    AbbreviationMap map;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = strip_comment(line);
        if (trim(body).empty()) continue;
        auto tab = body.find('\t');
        if (tab == std::string::npos)
            fail_config("abbreviations line " + std::to_string(lineno) +
                        ": expected token<TAB>phrase");
        std::string key = to_lower(trim(body.substr(0, tab)));
        std::string phrase = trim(body.substr(tab + 1));
        if (key.empty() || phrase.empty())
            fail_config("abbreviations line " + std::to_string(lineno) +
                        ": empty token or phrase");
        if (key == phrase)
            fail_config("abbreviations line " + std::to_string(lineno) +
                        ": token maps to itself: " + key);
        map.entries[key] = phrase;
    }
    // a key hiding inside a phrase would make expansion grow on re-application
    for (const auto &[key, unused] : map.entries) {
        (void)unused;
        for (const auto &[other, phrase] : map.entries) {
            (void)other;
            for (const auto &word : tokenize_words(phrase)) {
                if (word == key)
                    fail_config("abbreviation token '" + key +
                                "' appears inside a replacement phrase");
            }
        }
    }
    return map;
}

std::string expand_abbreviations(const std::string &text,
                                 const AbbreviationMap &map) {
    std::string out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == ' ') {
            out += ' ';
            ++i;
            continue;
        }
        std::size_t j = text.find(' ', i);
        if (j == std::string::npos) j = text.size();
        std::string tok = text.substr(i, j - i);
        auto it = map.entries.find(tok);
        out += it == map.entries.end() ? tok : it->second;
        i = j;
    }
    return out;
}

std::vector<std::string> remove_oov(const std::vector<std::string> &tokens,
                                    const TokenSet &vocab,
                                    const FinancialLexicon &lex) {
    if (vocab.empty()) fail_config("vocabulary is empty");
    std::vector<std::string> kept;
    kept.reserve(tokens.size());
    for (const auto &tok : tokens)
        if (vocab.count(tok) != 0 || lex.contains(tok)) kept.push_back(tok);
    return kept;
}

bool financial_match(const std::vector<std::string> &tokens,
                     const FinancialLexicon &lex) {
    for (const auto &tok : tokens)
        if (lex.contains(tok)) return true;
    return false;
}

} // namespace chainsent
