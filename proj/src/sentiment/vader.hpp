#pragma once

#include <map>
#include <string>
#include <vector>

namespace chainsent {

struct VaderScores {
    double compound = 0.0;
    double neg = 0.0;
    double neu = 0.0;
    double pos = 0.0;
};

// Lexicon-and-rules sentiment scorer. Word valences from the lexicon file are
// adjusted for intensifiers/dampeners, negations, all-caps emphasis,
// contrastive "but" clauses, a handful of set idioms, and terminal
// !/? emphasis; the summed valence is squashed to [-1,1].
class VaderScorer {
  public:
    // token<TAB>valence per line, full-line '#' comments. Later duplicates
    // override earlier ones.
    explicit VaderScorer(const std::string &lexicon_path);

    VaderScores score(const std::string &text) const;

    const std::map<std::string, double> &lexicon() const { return lexicon_; }

  private:
    double sentiment_valence(std::size_t i,
                             const std::vector<std::string> &words,
                             const std::vector<std::string> &lower,
                             bool cap_diff) const;
    double least_check(double valence, const std::vector<std::string> &lower,
                       std::size_t i) const;

    std::map<std::string, double> lexicon_;
};

// Squash an unbounded summed valence into (-1,1): s / sqrt(s^2 + 15).
double vader_normalize(double s);

// Decimal rounding via fixed-point formatting (ties away from zero at the
// printed digit, which matches how reference scores are reported).
double round_places(double v, int places);

} // namespace chainsent
