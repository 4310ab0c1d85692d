#pragma once

#include <string>
#include <utility>
#include <vector>

#include "util/datetime.hpp"

namespace chainsent {

struct PricePoint {
    EpochDay date = 0;
    double close = 0.0;
};

// Strictly ascending dates, positive closes.
using PriceSeries = std::vector<PricePoint>;

// CSV with header Date,Close. Rows are sorted; duplicates, non-positive
// closes and unparseable cells are input errors reported with the row index.
PriceSeries load_prices(const std::string &path);

// label_t = 1 iff close_{t+1} > close_t, else 0 (equality counts as a
// non-rise). The final day has no label.
std::vector<std::pair<EpochDay, int>> make_labels(const PriceSeries &series);

// ln(close_t / close_{t-1}); the first day has no return.
std::vector<std::pair<EpochDay, double>> log_returns(const PriceSeries &series);

// (share of 0s, share of 1s), exact fractions.
std::pair<double, double> class_balance(const std::vector<int> &labels);

} // namespace chainsent
