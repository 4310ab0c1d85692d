#include "sentiment/vader.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>

#include "util/status.hpp"
#include "util/textutil.hpp"

namespace chainsent {

namespace {

constexpr double B_INCR = 0.293;
constexpr double B_DECR = -0.293;
constexpr double C_INCR = 0.733;
constexpr double N_SCALAR = -0.74;

const std::set<std::string> &negate_words() {
    static const std::set<std::string> words = {
        "aint",     "arent",    "cannot",   "cant",     "couldnt", "darent",
        "didnt",    "doesnt",   "ain't",    "aren't",   "can't",   "couldn't",
        "daren't",  "didn't",   "doesn't",  "dont",     "hadnt",   "hasnt",
        "havent",   "isnt",     "mightnt",  "mustnt",   "neither", "don't",
        "hadn't",   "hasn't",   "haven't",  "isn't",    "mightn't", "mustn't",
        "neednt",   "needn't",  "never",    "none",     "nope",    "nor",
        "not",      "nothing",  "nowhere",  "oughtnt",  "shant",   "shouldnt",
        "uhuh",     "wasnt",    "werent",   "oughtn't", "shan't",  "shouldn't",
        "uh-uh",    "wasn't",   "weren't",  "without",  "wont",    "wouldnt",
        "won't",    "wouldn't", "rarely",   "seldom",   "despite"};
    return words;
}

const std::map<std::string, double> &booster_dict() {
    static const std::map<std::string, double> dict = {
        {"absolutely", B_INCR},   {"amazingly", B_INCR},
        {"awfully", B_INCR},      {"completely", B_INCR},
        {"considerable", B_INCR}, {"considerably", B_INCR},
        {"decidedly", B_INCR},    {"deeply", B_INCR},
        {"effing", B_INCR},       {"enormous", B_INCR},
        {"enormously", B_INCR},   {"entirely", B_INCR},
        {"especially", B_INCR},   {"exceptional", B_INCR},
        {"exceptionally", B_INCR},{"extreme", B_INCR},
        {"extremely", B_INCR},    {"fabulously", B_INCR},
        {"flipping", B_INCR},     {"flippin", B_INCR},
        {"frackin", B_INCR},      {"fracking", B_INCR},
        {"fricking", B_INCR},     {"frickin", B_INCR},
        {"frigging", B_INCR},     {"friggin", B_INCR},
        {"fully", B_INCR},        {"fuckin", B_INCR},
        {"fucking", B_INCR},      {"fuggin", B_INCR},
        {"fugging", B_INCR},      {"greatly", B_INCR},
        {"hella", B_INCR},        {"highly", B_INCR},
        {"hugely", B_INCR},       {"incredible", B_INCR},
        {"incredibly", B_INCR},   {"intensely", B_INCR},
        {"major", B_INCR},        {"majorly", B_INCR},
        {"more", B_INCR},         {"most", B_INCR},
        {"particularly", B_INCR}, {"purely", B_INCR},
        {"quite", B_INCR},        {"really", B_INCR},
        {"remarkably", B_INCR},   {"so", B_INCR},
        {"substantially", B_INCR},{"thoroughly", B_INCR},
        {"total", B_INCR},        {"totally", B_INCR},
        {"tremendous", B_INCR},   {"tremendously", B_INCR},
        {"uber", B_INCR},         {"unbelievably", B_INCR},
        {"unusually", B_INCR},    {"utter", B_INCR},
        {"utterly", B_INCR},      {"very", B_INCR},
        {"almost", B_DECR},       {"barely", B_DECR},
        {"hardly", B_DECR},       {"just enough", B_DECR},
        {"kind of", B_DECR},      {"kinda", B_DECR},
        {"kindof", B_DECR},       {"kind-of", B_DECR},
        {"less", B_DECR},         {"little", B_DECR},
        {"marginal", B_DECR},     {"marginally", B_DECR},
        {"occasional", B_DECR},   {"occasionally", B_DECR},
        {"partly", B_DECR},       {"scarce", B_DECR},
        {"scarcely", B_DECR},     {"slight", B_DECR},
        {"slightly", B_DECR},     {"somewhat", B_DECR},
        {"sort of", B_DECR},      {"sorta", B_DECR},
        {"sortof", B_DECR},       {"sort-of", B_DECR}};
    return dict;
}

const std::map<std::string, double> &special_cases() {
    static const std::map<std::string, double> dict = {
        {"the shit", 3.0},       {"the bomb", 3.0},
        {"bad ass", 1.5},        {"badass", 1.5},
        {"bus stop", 0.0},       {"yeah right", -2.0},
        {"kiss of death", -1.5}, {"to die for", 3.0},
        {"beating heart", 3.1},  {"broken heart", -2.9}};
    return dict;
}

bool is_ascii_punct(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return u < 0x80 && std::ispunct(u) != 0;
}

// ASCII stand-in for str.isupper(): at least one A-Z and no a-z.
bool token_isupper(const std::string &w) {
    bool any_upper = false;
    for (char c : w) {
        if (c >= 'a' && c <= 'z') return false;
        if (c >= 'A' && c <= 'Z') any_upper = true;
    }
    return any_upper;
}

std::string lower_ascii(const std::string &w) { return to_lower(w); }

// Whitespace split, then leading/trailing punctuation stripped — unless the
// stripped core is two codepoints or fewer, in which case the token is kept
// intact (preserves emoticons like ":)" and short fragments like "by,").
std::vector<std::string> vader_tokens(const std::string &text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        unsigned char u = static_cast<unsigned char>(text[i]);
        if (std::isspace(u)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() &&
               !std::isspace(static_cast<unsigned char>(text[j])))
            ++j;
        std::string tok = text.substr(i, j - i);
        std::size_t a = 0;
        std::size_t b = tok.size();
        while (a < b && is_ascii_punct(tok[a])) ++a;
        while (b > a && is_ascii_punct(tok[b - 1])) --b;
        std::string stripped = tok.substr(a, b - a);
        out.push_back(codepoint_count(stripped) <= 2 ? tok : stripped);
        i = j;
    }
    return out;
}

bool allcap_differential(const std::vector<std::string> &words) {
    std::size_t allcap = 0;
    for (const auto &w : words)
        if (token_isupper(w)) ++allcap;
    std::size_t diff = words.size() - allcap;
    return diff > 0 && diff < words.size();
}

bool negated(const std::string &word_lower) {
    if (negate_words().count(word_lower) != 0) return true;
    return word_lower.find("n't") != std::string::npos;
}

double scalar_inc_dec(const std::string &word, const std::string &word_lower,
                      double valence, bool cap_diff) {
    auto it = booster_dict().find(word_lower);
    if (it == booster_dict().end()) return 0.0;
    double scalar = it->second;
    if (valence < 0) scalar = -scalar;
    if (token_isupper(word) && cap_diff)
        scalar += valence > 0 ? C_INCR : -C_INCR;
    return scalar;
}

double negation_check(double valence, const std::vector<std::string> &lower,
                      std::size_t start_i, std::size_t i) {
    if (start_i == 0) {
        if (negated(lower[i - 1])) valence *= N_SCALAR;
    }
    if (start_i == 1) {
        if (lower[i - 2] == "never" &&
            (lower[i - 1] == "so" || lower[i - 1] == "this")) {
            valence *= 1.25;
        } else if (lower[i - 2] == "without" && lower[i - 1] == "doubt") {
            // explicit no-op: certainty idiom, not a negation
        } else if (negated(lower[i - 2])) {
            valence *= N_SCALAR;
        }
    }
    if (start_i == 2) {
        // "so"/"this" one step back intensifies even without a leading
        // "never"; kept as-is to match the reference scorer's behavior.
        if ((lower[i - 3] == "never" &&
             (lower[i - 2] == "so" || lower[i - 2] == "this")) ||
            (lower[i - 1] == "so" || lower[i - 1] == "this")) {
            valence *= 1.25;
        } else if (lower[i - 3] == "without" &&
                   (lower[i - 2] == "doubt" || lower[i - 1] == "doubt")) {
            // explicit no-op
        } else if (negated(lower[i - 3])) {
            valence *= N_SCALAR;
        }
    }
    return valence;
}

double special_idioms_check(double valence,
                            const std::vector<std::string> &lower,
                            std::size_t i) {
    auto cat2 = [&](std::size_t a, std::size_t b) {
        return lower[a] + " " + lower[b];
    };
    auto cat3 = [&](std::size_t a, std::size_t b, std::size_t c) {
        return lower[a] + " " + lower[b] + " " + lower[c];
    };
    const std::string onezero = cat2(i - 1, i);
    const std::string twoonezero = cat3(i - 2, i - 1, i);
    const std::string twoone = cat2(i - 2, i - 1);
    const std::string threetwoone = cat3(i - 3, i - 2, i - 1);
    const std::string threetwo = cat2(i - 3, i - 2);
    const std::array<const std::string *, 5> seqs = {
        &onezero, &twoonezero, &twoone, &threetwoone, &threetwo};
    for (const auto *seq : seqs) {
        auto it = special_cases().find(*seq);
        if (it != special_cases().end()) {
            valence = it->second;
            break;
        }
    }
    if (lower.size() > i + 1) {
        auto it = special_cases().find(cat2(i, i + 1));
        if (it != special_cases().end()) valence = it->second;
    }
    if (lower.size() > i + 2) {
        auto it = special_cases().find(cat3(i, i + 1, i + 2));
        if (it != special_cases().end()) valence = it->second;
    }
    for (const auto *gram : {&threetwoone, &threetwo, &twoone}) {
        auto it = booster_dict().find(*gram);
        if (it != booster_dict().end()) valence += it->second;
    }
    return valence;
}

// Clauses after a contrastive "but" outweigh those before it. Matches the
// reference quirk of locating each value's first occurrence while rescaling.
void but_check(const std::vector<std::string> &lower,
               std::vector<double> &sentiments) {
    auto bit = std::find(lower.begin(), lower.end(), "but");
    if (bit == lower.end()) return;
    std::size_t bi = static_cast<std::size_t>(bit - lower.begin());
    for (std::size_t p = 0; p < sentiments.size(); ++p) {
        double v = sentiments[p];
        std::size_t si = static_cast<std::size_t>(
            std::find(sentiments.begin(), sentiments.end(), v) -
            sentiments.begin());
        if (si < bi)
            sentiments[si] = v * 0.5;
        else if (si > bi)
            sentiments[si] = v * 1.5;
    }
}

double amplify_ep(const std::string &text) {
    long count = std::count(text.begin(), text.end(), '!');
    if (count > 4) count = 4;
    return static_cast<double>(count) * 0.292;
}

double amplify_qm(const std::string &text) {
    long count = std::count(text.begin(), text.end(), '?');
    if (count > 1) return count <= 3 ? static_cast<double>(count) * 0.18 : 0.96;
    return 0.0;
}

VaderScores score_valence(const std::vector<double> &sentiments,
                          const std::string &text) {
    if (sentiments.empty()) return {0.0, 0.0, 0.0, 0.0};
    double sum_s = std::accumulate(sentiments.begin(), sentiments.end(), 0.0);
    double punct = amplify_ep(text) + amplify_qm(text);
    if (sum_s > 0)
        sum_s += punct;
    else if (sum_s < 0)
        sum_s -= punct;
    double compound = vader_normalize(sum_s);
    double pos_sum = 0.0;
    double neg_sum = 0.0;
    double neu_count = 0.0;
    for (double v : sentiments) {
        if (v > 0) pos_sum += v + 1.0; // +1 keeps one-word texts off the rails
        if (v < 0) neg_sum += v - 1.0;
        if (v == 0) neu_count += 1.0;
    }
    if (pos_sum > std::fabs(neg_sum))
        pos_sum += punct;
    else if (pos_sum < std::fabs(neg_sum))
        neg_sum -= punct;
    double total = pos_sum + std::fabs(neg_sum) + neu_count;
    VaderScores out;
    out.compound = round_places(compound, 4);
    out.pos = std::fabs(pos_sum / total);
    out.neg = std::fabs(neg_sum / total);
    out.neu = std::fabs(neu_count / total);
    return out;
}

} // namespace

double vader_normalize(double s) {
    double n = s / std::sqrt(s * s + 15.0);
    if (n < -1.0) return -1.0;
    if (n > 1.0) return 1.0;
    return n;
}

double round_places(double v, int places) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", places, v);
    return std::strtod(buf, nullptr);
}

VaderScorer::VaderScorer(const std::string &lexicon_path) {
    std::ifstream in(lexicon_path);
    if (!in) fail_io("cannot open sentiment lexicon: " + lexicon_path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            fail_config("sentiment lexicon line " + std::to_string(lineno) +
                        ": expected token<TAB>score");
        std::string token = line.substr(0, tab);
        std::string rest = line.substr(tab + 1);
        auto end = rest.find('\t');
        if (end != std::string::npos) rest = rest.substr(0, end);
        char *stop = nullptr;
        double score = std::strtod(rest.c_str(), &stop);
        if (stop == rest.c_str())
            fail_config("sentiment lexicon line " + std::to_string(lineno) +
                        ": bad score");
        if (score < -4.0 || score > 4.0)
            fail_config("sentiment lexicon line " + std::to_string(lineno) +
                        ": score outside [-4,4]");
        lexicon_[token] = score; // later duplicates win
    }
    if (lexicon_.empty())
        fail_config("sentiment lexicon is empty: " + lexicon_path);
}

double VaderScorer::least_check(double valence,
                                const std::vector<std::string> &lower,
                                std::size_t i) const {
    if (i >= 2 && lexicon_.count(lower[i - 1]) == 0 &&
        lower[i - 1] == "least") {
        if (lower[i - 2] != "at" && lower[i - 2] != "very")
            valence *= N_SCALAR;
    } else if (i >= 1 && lexicon_.count(lower[i - 1]) == 0 &&
               lower[i - 1] == "least") {
        valence *= N_SCALAR;
    }
    return valence;
}

double VaderScorer::sentiment_valence(std::size_t i,
                                      const std::vector<std::string> &words,
                                      const std::vector<std::string> &lower,
                                      bool cap_diff) const {
    auto hit = lexicon_.find(lower[i]);
    if (hit == lexicon_.end()) return 0.0;
    double valence = hit->second;
    std::size_t n = lower.size();

    // "no" right before a lexicon word negates it instead of scoring itself
    if (lower[i] == "no" && i + 1 < n && lexicon_.count(lower[i + 1]) != 0)
        valence = 0.0;
    if ((i >= 1 && lower[i - 1] == "no") || (i >= 2 && lower[i - 2] == "no") ||
        (i >= 3 && lower[i - 3] == "no" &&
         (lower[i - 1] == "or" || lower[i - 1] == "nor")))
        valence = hit->second * N_SCALAR;

    if (token_isupper(words[i]) && cap_diff)
        valence += valence > 0 ? C_INCR : -C_INCR;

    for (std::size_t start_i = 0; start_i < 3; ++start_i) {
        if (i > start_i && lexicon_.count(lower[i - (start_i + 1)]) == 0) {
            double s = scalar_inc_dec(words[i - (start_i + 1)],
                                      lower[i - (start_i + 1)], valence,
                                      cap_diff);
            // boosters lose force with distance from the word they modify
            if (start_i == 1 && s != 0.0) s *= 0.95;
            if (start_i == 2 && s != 0.0) s *= 0.9;
            valence += s;
            valence = negation_check(valence, lower, start_i, i);
            if (start_i == 2)
                valence = special_idioms_check(valence, lower, i);
        }
    }
    return least_check(valence, lower, i);
}

VaderScores VaderScorer::score(const std::string &text) const {
    std::vector<std::string> words = vader_tokens(text);
    std::vector<std::string> lower;
    lower.reserve(words.size());
    for (const auto &w : words) lower.push_back(lower_ascii(w));
    bool cap_diff = allcap_differential(words);

    std::vector<double> sentiments;
    sentiments.reserve(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (booster_dict().count(lower[i]) != 0) {
            sentiments.push_back(0.0);
            continue;
        }
        if (i + 1 < words.size() && lower[i] == "kind" &&
            lower[i + 1] == "of") {
            sentiments.push_back(0.0);
            continue;
        }
        sentiments.push_back(sentiment_valence(i, words, lower, cap_diff));
    }
    but_check(lower, sentiments);
    return score_valence(sentiments, text);
}

} // namespace chainsent
