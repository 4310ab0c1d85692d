#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ml/tree.hpp"

namespace chainsent {

struct Fold {
    std::vector<std::size_t> train, val;
};

// Expanding-window folds: fold i (1-based) trains on the first i·⌊n/(k+1)⌋
// rows and validates on the following block of the same size. Validation
// rows always come strictly after every training row.
std::vector<Fold> ts_cv_folds(std::size_t n, std::size_t k = 5);

enum class Family { Lrc, Knnc, Rfc, Etc, Gbc, Abc };

// Declaration order; also the tie-break order when configurations score equal.
const std::vector<Family> &family_order();
std::string family_name(Family f);
Family parse_family(const std::string &name);

using Params = std::map<std::string, std::string>;

class FittedModel {
public:
    virtual ~FittedModel() = default;
    virtual std::vector<int> predict(const Matrix &x) const = 0;
    // empty when the family has no importance notion (nearest neighbors)
    virtual std::vector<double> importances() const = 0;
};

// Validates hyperparameters and trains one model. Unknown parameter names,
// out-of-domain values, and single-class labels are errors.
std::unique_ptr<FittedModel> fit_model(Family family, const Params &params,
                                       const Matrix &x, const std::vector<int> &y,
                                       std::uint64_t seed);

struct ModelSpec {
    Family family = Family::Lrc;
    // declaration order fixes candidate enumeration (first entry outermost)
    std::vector<std::pair<std::string, std::vector<std::string>>> grid;
    // feature-subset sizes searched innermost: elimination targets for
    // importance families, variance-ratio selector sizes for neighbors.
    // Empty → models always see every feature.
    std::vector<std::size_t> feature_counts;
};

// Stock search space per family.
ModelSpec default_model_spec(Family family);

struct SearchResult {
    Params params;
    std::vector<std::size_t> features; // ascending indices into the input columns
    double cv_accuracy = 0.0;
    std::vector<double> fold_accuracies;
    std::unique_ptr<FittedModel> model; // best candidate refit on all rows
};

// Exhaustive search over grid × feature counts, scored by mean validation
// accuracy over the folds (ties → earliest candidate). Candidates that fail
// to fit are logged and skipped; every candidate failing is an error.
// Feature subsets are chosen inside each fold from its training rows only.
SearchResult grid_search(const ModelSpec &spec, const Matrix &x,
                         const std::vector<int> &y,
                         const std::vector<Fold> &folds, std::uint64_t seed);

} // namespace chainsent
