#pragma once

#include <cstdint>
#include <vector>

#include "util/rng.hpp"

namespace chainsent {

using Matrix = std::vector<std::vector<double>>; // row-major samples

struct TreeOptions {
    int max_depth = -1; // -1 = unbounded
    std::size_t min_samples_split = 2;
    std::size_t min_samples_leaf = 1;
    std::size_t max_features = 0;   // 0 = consider every feature at each node
    bool random_thresholds = false; // one uniform cut per feature instead of
                                    // scanning midpoints (extremely randomized)
};

// Binary CART with Gini splits and per-sample weights. Rows are addressed
// through an index list so callers can fit on bootstrap samples without
// copying the matrix.
class ClassificationTree {
public:
    void fit(const Matrix &x, const std::vector<int> &y,
             const std::vector<std::size_t> &indices,
             const std::vector<double> &weights, const TreeOptions &opt,
             Rng &rng);

    int predict(const std::vector<double> &row) const;
    // weighted class distribution at the reached leaf, sums to 1
    const double *leaf_distribution(const std::vector<double> &row) const;

    // normalized weighted-impurity-decrease importances
    std::vector<double> feature_importances() const;

private:
    struct Node {
        int feature = -1;
        double threshold = 0.0;
        int left = -1, right = -1;
        double dist[2] = {0.0, 0.0};
    };
    std::size_t build(const Matrix &x, const std::vector<int> &y,
                      std::vector<std::size_t> &idx, std::size_t lo,
                      std::size_t hi, const std::vector<double> &weights,
                      const TreeOptions &opt, Rng &rng, int depth);
    std::size_t leaf_index(const std::vector<double> &row) const;

    std::vector<Node> nodes_;
    std::vector<double> importance_;
    std::size_t n_features_ = 0;
};

// CART on squared error, used as the base learner for gradient boosting.
// Leaf values are Newton steps: sum(residual) / max(sum(hessian), 1e-12).
class RegressionTree {
public:
    void fit(const Matrix &x, const std::vector<double> &residual,
             const std::vector<double> &hessian,
             const std::vector<std::size_t> &indices, const TreeOptions &opt);

    double predict(const std::vector<double> &row) const;
    std::vector<double> feature_importances() const; // unnormalized SSE decrease

private:
    struct Node {
        int feature = -1;
        double threshold = 0.0;
        int left = -1, right = -1;
        double value = 0.0;
    };
    std::size_t build(const Matrix &x, const std::vector<double> &residual,
                      const std::vector<double> &hessian,
                      std::vector<std::size_t> &idx, std::size_t lo,
                      std::size_t hi, const TreeOptions &opt, int depth);

    std::vector<Node> nodes_;
    std::vector<double> importance_;
    std::size_t n_features_ = 0;
};

} // namespace chainsent
