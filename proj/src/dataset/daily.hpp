#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dataset/prices.hpp"
#include "sentiment/features.hpp"
#include "textprep/corpus.hpp"

namespace chainsent {

// Buckets corpus texts by UTC calendar day, drops exact duplicate strings
// within a day, and joins the survivors with '\n'. Line order is timestamp
// ascending, then text ascending, so the result is independent of record
// order. Records from every chain land in the same day's document.
std::map<EpochDay, std::string> aggregate_daily(const std::vector<CleanText> &corpus);

// Supervised per-day table: x rows align with dates and y.
struct Dataset {
    std::vector<std::string> features; // column names after date,label
    std::vector<EpochDay> dates;
    std::vector<std::vector<double>> x;
    std::vector<int> y;
};

// Joins price-derived columns with sentiment scored on the day's cleaned
// document and on its lightly-cleaned counterpart. A day is kept only when
// every ingredient exists: both documents, a previous close (for the price
// move and return), a next close (for the label), and — when external
// columns are supplied — an external row.
Dataset build_dataset(const PriceSeries &prices,
                      const std::map<EpochDay, std::string> &docs,
                      const std::map<EpochDay, std::string> &raw_docs,
                      const VaderScorer &vader, const BlobScorer &blob,
                      const ExternalFeatures *external);

std::string dataset_csv(const Dataset &d);
Dataset read_dataset_csv(const std::string &path);

// First ⌊fraction·N⌋ rows train, the rest test. Requires date-sorted rows
// and at least 20 of them.
std::pair<Dataset, Dataset> chrono_split(const Dataset &d, double fraction = 0.85);

} // namespace chainsent
