#pragma once

#include <cstdint>
#include <vector>

#include "ml/tree.hpp"

namespace chainsent {

struct ForestOptions {
    std::size_t n_estimators = 100;
    int max_depth = -1;
    std::size_t min_samples_split = 2;
    std::size_t min_samples_leaf = 1;
    bool bootstrap = true;          // bagged forest; false = whole sample
    bool random_thresholds = false; // extremely randomized variant
    std::uint64_t seed = 0;
};

// Ensemble of Gini trees on sqrt(d) feature subsets. Prediction averages the
// per-tree leaf class distributions and takes the argmax (ties → class 0).
class ForestClassifier {
public:
    void fit(const Matrix &x, const std::vector<int> &y, const ForestOptions &opt);
    int predict(const std::vector<double> &row) const;
    std::vector<int> predict_all(const Matrix &x) const;
    std::vector<double> feature_importances() const;

private:
    std::vector<ClassificationTree> trees_;
    std::size_t n_features_ = 0;
};

} // namespace chainsent
