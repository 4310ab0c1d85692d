#pragma once

#include <cstdint>
#include <vector>

#include "ml/tree.hpp"

namespace chainsent {

struct GbcOptions {
    std::size_t n_estimators = 100;
    double learning_rate = 0.1;
    int max_depth = 3;
    double subsample = 1.0; // fraction of rows per round, without replacement
    std::size_t min_samples_split = 2;
    std::size_t min_samples_leaf = 1;
    std::uint64_t seed = 0;
};

// Additive regression trees on the logistic loss gradient, Newton leaf
// values. Training loss over the full set is recorded each round.
class GradientBoostingClassifier {
public:
    void fit(const Matrix &x, const std::vector<int> &y, const GbcOptions &opt);
    int predict(const std::vector<double> &row) const;
    std::vector<int> predict_all(const Matrix &x) const;
    std::vector<double> feature_importances() const;
    const std::vector<double> &loss_trace() const { return loss_; }

private:
    double raw_score(const std::vector<double> &row) const;

    double f0_ = 0.0;
    double learning_rate_ = 0.1;
    std::vector<RegressionTree> trees_;
    std::vector<double> loss_;
    std::size_t n_features_ = 0;
};

struct AbcOptions {
    std::size_t n_estimators = 50;
    double learning_rate = 1.0;
    std::uint64_t seed = 0;
};

// Discrete boosting of depth-1 stumps with multiplicative weight updates.
class AdaBoostClassifier {
public:
    void fit(const Matrix &x, const std::vector<int> &y, const AbcOptions &opt);
    int predict(const std::vector<double> &row) const;
    std::vector<int> predict_all(const Matrix &x) const;
    std::vector<double> feature_importances() const;

private:
    std::vector<ClassificationTree> stumps_;
    std::vector<double> alphas_;
    std::size_t n_features_ = 0;
};

} // namespace chainsent
