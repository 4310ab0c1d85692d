#include "ml/forest.hpp"

#include <cmath>
#include <string>

#include "util/status.hpp"

namespace chainsent {

void ForestClassifier::fit(const Matrix &x, const std::vector<int> &y,
                           const ForestOptions &opt) {
    if (x.empty() || x.size() != y.size())
        fail_input("forest: bad training shape");
    if (opt.n_estimators < 1)
        fail_input("forest: n_estimators must be positive");
    n_features_ = x[0].size();

    TreeOptions topt;
    topt.max_depth = opt.max_depth;
    topt.min_samples_split = opt.min_samples_split;
    topt.min_samples_leaf = opt.min_samples_leaf;
    topt.random_thresholds = opt.random_thresholds;
    topt.max_features = std::max<std::size_t>(
        1, static_cast<std::size_t>(
               std::floor(std::sqrt(static_cast<double>(n_features_)))));

    const std::size_t n = x.size();
    std::vector<double> weights(n, 1.0);

    trees_.assign(opt.n_estimators, ClassificationTree());
    for (std::size_t t = 0; t < opt.n_estimators; ++t) {
        Rng rng(derive_seed(opt.seed, "tree" + std::to_string(t)));
        std::vector<std::size_t> indices(n);
        if (opt.bootstrap) {
            for (std::size_t i = 0; i < n; ++i)
                indices[i] = rng.below(n);
        } else {
            for (std::size_t i = 0; i < n; ++i)
                indices[i] = i;
        }
        trees_[t].fit(x, y, indices, weights, topt, rng);
    }
}

int ForestClassifier::predict(const std::vector<double> &row) const {
    double p0 = 0.0, p1 = 0.0;
    for (const auto &tree : trees_) {
        const double *d = tree.leaf_distribution(row);
        p0 += d[0];
        p1 += d[1];
    }
    return p1 > p0 ? 1 : 0;
}

std::vector<int> ForestClassifier::predict_all(const Matrix &x) const {
    std::vector<int> out;
    out.reserve(x.size());
    for (const auto &row : x)
        out.push_back(predict(row));
    return out;
}

std::vector<double> ForestClassifier::feature_importances() const {
    std::vector<double> sum(n_features_, 0.0);
    for (const auto &tree : trees_) {
        auto imp = tree.feature_importances();
        for (std::size_t f = 0; f < n_features_; ++f)
            sum[f] += imp[f];
    }
    double total = 0.0;
    for (double v : sum)
        total += v;
    if (total > 0)
        for (double &v : sum)
            v /= total;
    return sum;
}

} // namespace chainsent
