#pragma once

#include <map>
#include <string>
#include <vector>

namespace chainsent {

struct BlobScores {
    double polarity = 0.0;     // [-1, 1]
    double subjectivity = 0.0; // [0, 1]
};

struct BlobEntry {
    double polarity = 0.0;
    double subjectivity = 0.0;
    double intensity = 1.0;
    bool modifier = false; // adverb-tagged words scale the next match
};

// Pattern-lexicon scorer: averages per-word polarity/subjectivity over the
// matched words, with adverb intensifiers, negation halving-and-flipping and
// exclamation emphasis.
class BlobScorer {
  public:
    // word<TAB>polarity<TAB>subjectivity<TAB>intensity[<TAB>tags] per line,
    // full-line '#' comments; the RB tag marks a modifier.
    explicit BlobScorer(const std::string &lexicon_path);

    BlobScores score(const std::string &text) const;

    const std::map<std::string, BlobEntry> &lexicon() const {
        return lexicon_;
    }

  private:
    std::map<std::string, BlobEntry> lexicon_;
};

} // namespace chainsent
