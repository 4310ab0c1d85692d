#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dataset/daily.hpp"
#include "ml/cv.hpp"
#include "ml/metrics.hpp"
#include "util/kvconfig.hpp"

namespace chainsent {

struct ReportRow {
    std::string model;  // "RFC+Sentiment", "Random Guess", ...
    std::string config; // feature configuration label, "-" for baselines
    bool accuracy_only = false; // the coin-flip reference row carries no P/R/F1
    bool failed = false;        // every family failed for this configuration
    Metrics metrics;
    std::string selected_features; // ';'-joined column names
    std::string best_params;       // ';'-joined key=value pairs
};

struct Report {
    std::vector<ReportRow> rows;
};

// Reference rows: a fixed 0.5-accuracy coin-flip line and the train-set
// majority class evaluated against the test labels.
std::vector<ReportRow> baseline_rows(const std::vector<int> &train_labels,
                                     const std::vector<int> &test_labels);

// The five feature configurations, assembled from whichever of the expected
// columns the dataset actually has. Extra (external) columns ride along with
// the sentiment sets.
std::vector<std::pair<std::string, std::vector<std::string>>>
experiment_configs(const std::vector<std::string> &columns);

// Search-space overrides from config keys:
//   families = lrc,gbc              restricts the suite (default: all six)
//   grid.rfc.n_estimators = 50,100  replaces one parameter's value list
//   grid.rfc.rfe = 4,6              feature-subset sizes (selector_k for knnc)
//   grid.lrc.rfe = none             disables subsetting for that family
std::vector<ModelSpec> model_specs_from_config(const KvConfig &cfg);

// Full protocol: chronological 85/15 split, 5-fold expanding-window search
// per family and configuration, best family by mean CV accuracy (ties → the
// earlier family in suite order), test metrics on the refit winner.
Report run_experiments(const Dataset &full, const std::vector<ModelSpec> &specs,
                       std::uint64_t seed);

std::string report_csv(const Report &r);
std::string report_json(const Report &r);
Report report_from_csv(const std::string &path);

// Fixed-width text rendering: accuracy with two decimals, the other metrics
// as whole percentages.
std::string report_table(const Report &r);

} // namespace chainsent
