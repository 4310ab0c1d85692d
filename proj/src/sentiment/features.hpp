#pragma once

#include <map>
#include <string>
#include <vector>

#include "sentiment/textblob.hpp"
#include "sentiment/vader.hpp"
#include "util/datetime.hpp"

namespace chainsent {

// Per-document sentiment feature bundle produced by running both scorers on
// the same text.
struct SentimentVector {
    double compound = 0.0;
    double neg = 0.0;
    double neu = 1.0;
    double pos = 0.0;
    double polarity = 0.0;
    double subjectivity = 0.0;
};

SentimentVector score_document(const VaderScorer &vader, const BlobScorer &blob,
                               const std::string &text);

// Column order used in correlation reports and for pruning tie-breaks.
const std::vector<std::string> &continuous_feature_order();

// Extracts the named continuous columns from per-day vectors, in
// continuous_feature_order().
std::vector<std::vector<double>>
continuous_columns(const std::vector<SentimentVector> &days);

struct CorrelationMatrix {
    std::vector<std::string> names;
    // r[i][j] is meaningful only where defined[i][j]; a column with zero
    // variance has every entry involving it marked undefined.
    std::vector<std::vector<double>> r;
    std::vector<std::vector<bool>> defined;
};

// Pearson correlations over feature columns. Every column must have the same
// length (the number of days); fewer than two days is an input error.
CorrelationMatrix pearson_matrix(const std::vector<std::string> &names,
                                 const std::vector<std::vector<double>> &columns);

// Greedy redundancy pruning: while some retained pair has |r| >= threshold,
// drop the column with the most such partners (ties: the later column in the
// matrix order). Returns retained names in their original order.
std::vector<std::string> prune_correlated(const CorrelationMatrix &m,
                                          double threshold = 0.8);

// CSV rendering of a correlation matrix; undefined entries become "NA".
std::string correlations_csv(const CorrelationMatrix &m);

// Extra per-day feature columns supplied by the user (e.g. scores exported
// from some external classifier). Joined by calendar date; days missing from
// the file simply have no row here.
struct ExternalFeatures {
    std::vector<std::string> names;
    std::map<EpochDay, std::vector<double>> rows;
};

ExternalFeatures load_external_features(const std::string &path);

} // namespace chainsent
