#include "ml/boosting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "util/status.hpp"

namespace chainsent {

namespace {

double stable_softplus(double z) {
    // log(1 + exp(z)) without overflow
    if (z > 0)
        return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

} // namespace

void GradientBoostingClassifier::fit(const Matrix &x, const std::vector<int> &y,
                                     const GbcOptions &opt) {
    const std::size_t n = x.size();
    if (n == 0 || n != y.size())
        fail_input("boosting: bad training shape");
    if (opt.n_estimators < 1 || opt.learning_rate <= 0 || opt.subsample <= 0 ||
        opt.subsample > 1)
        fail_input("boosting: invalid options");
    n_features_ = x[0].size();
    learning_rate_ = opt.learning_rate;
    trees_.clear();
    loss_.clear();

    double ones = 0.0;
    for (int v : y)
        ones += v;
    double p0 = std::clamp(ones / static_cast<double>(n), 1e-12, 1.0 - 1e-12);
    f0_ = std::log(p0 / (1.0 - p0));

    std::vector<double> f(n, f0_), prob(n), residual(n), hessian(n);

    TreeOptions topt;
    topt.max_depth = opt.max_depth;
    topt.min_samples_split = opt.min_samples_split;
    topt.min_samples_leaf = opt.min_samples_leaf;

    for (std::size_t round = 0; round < opt.n_estimators; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            prob[i] = 1.0 / (1.0 + std::exp(-f[i]));
            residual[i] = static_cast<double>(y[i]) - prob[i];
            hessian[i] = std::max(prob[i] * (1.0 - prob[i]), 1e-12);
        }

        std::vector<std::size_t> indices;
        if (opt.subsample < 1.0) {
            Rng rng(derive_seed(opt.seed, "round" + std::to_string(round)));
            std::size_t k = std::max<std::size_t>(
                1, static_cast<std::size_t>(
                       std::floor(opt.subsample * static_cast<double>(n))));
            std::vector<std::size_t> pool(n);
            for (std::size_t i = 0; i < n; ++i)
                pool[i] = i;
            for (std::size_t j = 0; j < k; ++j)
                std::swap(pool[j], pool[j + rng.below(n - j)]);
            pool.resize(k);
            std::sort(pool.begin(), pool.end());
            indices = std::move(pool);
        } else {
            indices.resize(n);
            for (std::size_t i = 0; i < n; ++i)
                indices[i] = i;
        }

        RegressionTree tree;
        tree.fit(x, residual, hessian, indices, topt);
        for (std::size_t i = 0; i < n; ++i)
            f[i] += opt.learning_rate * tree.predict(x[i]);
        trees_.push_back(std::move(tree));

        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double sign = y[i] == 1 ? 1.0 : -1.0;
            loss += stable_softplus(-sign * f[i]);
        }
        loss_.push_back(loss);
    }
}

double GradientBoostingClassifier::raw_score(const std::vector<double> &row) const {
    double f = f0_;
    for (const auto &tree : trees_)
        f += learning_rate_ * tree.predict(row);
    return f;
}

int GradientBoostingClassifier::predict(const std::vector<double> &row) const {
    return raw_score(row) > 0 ? 1 : 0;
}

std::vector<int> GradientBoostingClassifier::predict_all(const Matrix &x) const {
    std::vector<int> out;
    out.reserve(x.size());
    for (const auto &row : x)
        out.push_back(predict(row));
    return out;
}

std::vector<double> GradientBoostingClassifier::feature_importances() const {
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

void AdaBoostClassifier::fit(const Matrix &x, const std::vector<int> &y,
                             const AbcOptions &opt) {
    const std::size_t n = x.size();
    if (n == 0 || n != y.size())
        fail_input("boosting: bad training shape");
    if (opt.n_estimators < 1 || opt.learning_rate <= 0)
        fail_input("boosting: invalid options");
    n_features_ = x[0].size();
    stumps_.clear();
    alphas_.clear();

    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i)
        all[i] = i;

    TreeOptions topt;
    topt.max_depth = 1;

    for (std::size_t round = 0; round < opt.n_estimators; ++round) {
        Rng rng(derive_seed(opt.seed, "stump" + std::to_string(round)));
        ClassificationTree stump;
        stump.fit(x, y, all, w, topt, rng);

        double err = 0.0;
        std::vector<int> pred(n);
        for (std::size_t i = 0; i < n; ++i) {
            pred[i] = stump.predict(x[i]);
            if (pred[i] != y[i])
                err += w[i];
        }

        if (err <= 0.0) {
            stumps_.push_back(std::move(stump));
            alphas_.push_back(1.0);
            break;
        }
        if (err >= 0.5) {
            if (stumps_.empty())
                fail_input("boosting: first stump is no better than chance");
            break;
        }

        double alpha = opt.learning_rate * std::log((1.0 - err) / err);
        stumps_.push_back(std::move(stump));
        alphas_.push_back(alpha);

        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pred[i] != y[i])
                w[i] *= std::exp(alpha);
            total += w[i];
        }
        for (double &wi : w)
            wi /= total;
    }
}

int AdaBoostClassifier::predict(const std::vector<double> &row) const {
    double score[2] = {0.0, 0.0};
    for (std::size_t m = 0; m < stumps_.size(); ++m)
        score[stumps_[m].predict(row)] += alphas_[m];
    return score[1] > score[0] ? 1 : 0;
}

std::vector<int> AdaBoostClassifier::predict_all(const Matrix &x) const {
    std::vector<int> out;
    out.reserve(x.size());
    for (const auto &row : x)
        out.push_back(predict(row));
    return out;
}

std::vector<double> AdaBoostClassifier::feature_importances() const {
    std::vector<double> sum(n_features_, 0.0);
    for (std::size_t m = 0; m < stumps_.size(); ++m) {
        auto imp = stumps_[m].feature_importances();
        for (std::size_t f = 0; f < n_features_; ++f)
            sum[f] += alphas_[m] * imp[f];
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
