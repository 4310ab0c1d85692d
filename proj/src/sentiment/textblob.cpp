#include "sentiment/textblob.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>

#include "util/status.hpp"
#include "util/textutil.hpp"

namespace chainsent {

namespace {

const char *const NEGATIONS[] = {"no", "not", "n't", "never"};

bool is_negation(const std::string &w) {
    for (const char *n : NEGATIONS)
        if (w == n) return true;
    return false;
}

bool is_ascii_punct(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u < 0x80 && std::ispunct(u) != 0;
}

// Lowercase word tokens with punctuation split off as separate tokens and
// trailing "n't" peeled from contractions ("isn't" -> "is", "n't").
std::vector<std::string> blob_tokens(const std::string &text) {
    std::vector<std::string> out;
    std::string low = to_lower(text);
    std::size_t i = 0;
    while (i < low.size()) {
        if (std::isspace(static_cast<unsigned char>(low[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < low.size() &&
               !std::isspace(static_cast<unsigned char>(low[j])))
            ++j;
        std::string chunk = low.substr(i, j - i);
        i = j;

        std::size_t a = 0;
        std::size_t b = chunk.size();
        while (a < b && is_ascii_punct(chunk[a])) ++a;
        while (b > a && is_ascii_punct(chunk[b - 1])) --b;
        for (std::size_t k = 0; k < a; ++k) out.push_back(std::string(1, chunk[k]));
        std::string core = chunk.substr(a, b - a);
        if (!core.empty()) {
            if (core.size() > 3 && core.compare(core.size() - 3, 3, "n't") == 0) {
                out.push_back(core.substr(0, core.size() - 3));
                out.push_back("n't");
            } else {
                out.push_back(core);
            }
        }
        for (std::size_t k = b; k < chunk.size(); ++k)
            out.push_back(std::string(1, chunk[k]));
    }
    return out;
}

std::string strip_quotes(const std::string &w) {
    std::size_t a = 0;
    std::size_t b = w.size();
    while (a < b && w[a] == '\'') ++a;
    while (b > a && w[b - 1] == '\'') --b;
    return w.substr(a, b - a);
}

double clamp1(double v) { return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v); }

struct Assessment {
    double p = 0.0;
    double s = 0.0;
    double i = 1.0;
    int n = 1; // -1 once a negation attached
};

} // namespace

BlobScorer::BlobScorer(const std::string &lexicon_path) {
    std::ifstream in(lexicon_path);
    if (!in) fail_io("cannot open sentiment lexicon: " + lexicon_path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (;;) {
            auto tab = line.find('\t', start);
            fields.push_back(line.substr(
                start, tab == std::string::npos ? tab : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        auto where = [lineno] {
            return "sentiment lexicon line " + std::to_string(lineno);
        };
        if (fields.size() < 4) fail_config(where() + ": expected word, polarity, subjectivity, intensity");
        BlobEntry e;
        char *stop = nullptr;
        e.polarity = std::strtod(fields[1].c_str(), &stop);
        if (stop == fields[1].c_str()) fail_config(where() + ": bad polarity");
        e.subjectivity = std::strtod(fields[2].c_str(), &stop);
        if (stop == fields[2].c_str())
            fail_config(where() + ": bad subjectivity");
        e.intensity = std::strtod(fields[3].c_str(), &stop);
        if (stop == fields[3].c_str() || e.intensity <= 0.0)
            fail_config(where() + ": bad intensity");
        if (e.polarity < -1.0 || e.polarity > 1.0 || e.subjectivity < 0.0 ||
            e.subjectivity > 1.0)
            fail_config(where() + ": scores out of range");
        e.modifier = fields.size() > 4 &&
                     fields[4].find("RB") != std::string::npos;
        lexicon_[to_lower(fields[0])] = e;
    }
    if (lexicon_.empty())
        fail_config("sentiment lexicon is empty: " + lexicon_path);
}

BlobScores BlobScorer::score(const std::string &text) const {
    std::vector<Assessment> a;
    bool have_modifier = false;   // previous match was an adverb
    bool have_negation = false;   // pending "not"/"no"/"n't"/"never"

    for (const std::string &w : blob_tokens(text)) {
        auto it = lexicon_.find(w);
        if (it != lexicon_.end()) {
            const BlobEntry &e = it->second;
            if (!have_modifier) {
                a.push_back({e.polarity, e.subjectivity, e.intensity, 1});
            } else {
                // fold this word into the modifier's assessment, scaled by
                // the modifier's (possibly negation-inverted) intensity
                Assessment &last = a.back();
                last.p = clamp1(e.polarity * last.i);
                last.s = clamp1(e.subjectivity * last.i);
                last.i = e.intensity;
            }
            if (have_negation) {
                Assessment &last = a.back();
                last.i = 1.0 / last.i;
                last.n = -1;
            }
            if (is_negation(w)) {
                have_negation = true;
            } else if (e.modifier) {
                have_modifier = true;
            } else {
                have_negation = false;
                have_modifier = false;
            }
        } else if (w == "!" && !a.empty()) {
            a.back().p = clamp1(a.back().p * 1.25);
        } else if (is_negation(w)) {
            have_negation = true;
            have_modifier = false;
        } else {
            if (have_negation && strip_quotes(w).size() > 1)
                have_negation = false;
            have_modifier = false;
        }
    }

    if (a.empty()) return {0.0, 0.0};
    double p_sum = 0.0;
    double s_sum = 0.0;
    for (const Assessment &x : a) {
        p_sum += x.n < 0 ? x.p * -0.5 : x.p;
        s_sum += x.s;
    }
    return {p_sum / static_cast<double>(a.size()),
            s_sum / static_cast<double>(a.size())};
}

} // namespace chainsent
