#include "ml/tree.hpp"

#include <algorithm>
#include <cmath>

#include "util/status.hpp"

namespace chainsent {

namespace {

// Partial Fisher-Yates draw of `take` distinct values from [0, d).
std::vector<std::size_t> sample_features(std::size_t d, std::size_t take, Rng &rng) {
    std::vector<std::size_t> pool(d);
    for (std::size_t i = 0; i < d; ++i)
        pool[i] = i;
    for (std::size_t j = 0; j < take; ++j)
        std::swap(pool[j], pool[j + rng.below(d - j)]);
    pool.resize(take);
    return pool;
}

} // namespace

void ClassificationTree::fit(const Matrix &x, const std::vector<int> &y,
                             const std::vector<std::size_t> &indices,
                             const std::vector<double> &weights,
                             const TreeOptions &opt, Rng &rng) {
    if (indices.empty())
        fail_internal("tree fit on empty sample");
    nodes_.clear();
    n_features_ = x[0].size();
    importance_.assign(n_features_, 0.0);
    std::vector<std::size_t> idx = indices;
    build(x, y, idx, 0, idx.size(), weights, opt, rng, 0);
}

std::size_t ClassificationTree::build(const Matrix &x, const std::vector<int> &y,
                                      std::vector<std::size_t> &idx,
                                      std::size_t lo, std::size_t hi,
                                      const std::vector<double> &weights,
                                      const TreeOptions &opt, Rng &rng,
                                      int depth) {
    const std::size_t n = hi - lo;
    double w0 = 0.0, w1 = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        if (y[idx[i]] == 0)
            w0 += weights[idx[i]];
        else
            w1 += weights[idx[i]];
    }
    const double w = w0 + w1;

    const std::size_t node_id = nodes_.size();
    nodes_.emplace_back();
    if (w > 0) {
        nodes_[node_id].dist[0] = w0 / w;
        nodes_[node_id].dist[1] = w1 / w;
    } else {
        nodes_[node_id].dist[0] = nodes_[node_id].dist[1] = 0.5;
    }

    const bool depth_ok = opt.max_depth < 0 || depth < opt.max_depth;
    if (!depth_ok || n < opt.min_samples_split || n < 2 * opt.min_samples_leaf ||
        w0 == 0.0 || w1 == 0.0 || w <= 0.0)
        return node_id;

    const double parent_gini = 1.0 - (w0 * w0 + w1 * w1) / (w * w);

    std::vector<std::size_t> candidates;
    if (opt.max_features > 0 && opt.max_features < n_features_)
        candidates = sample_features(n_features_, opt.max_features, rng);
    else {
        candidates.resize(n_features_);
        for (std::size_t f = 0; f < n_features_; ++f)
            candidates[f] = f;
    }

    int best_feature = -1;
    double best_threshold = 0.0, best_gain = 1e-12;

    struct Item {
        double v, w;
        int y;
    };
    std::vector<Item> items(n);

    for (std::size_t f : candidates) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t s = idx[lo + i];
            items[i] = {x[s][f], weights[s], y[s]};
        }
        if (opt.random_thresholds) {
            double fmin = items[0].v, fmax = items[0].v;
            for (const Item &it : items) {
                fmin = std::min(fmin, it.v);
                fmax = std::max(fmax, it.v);
            }
            if (fmin == fmax)
                continue;
            double thr = fmin + rng.unit() * (fmax - fmin);
            double lw0 = 0, lw1 = 0, rw0 = 0, rw1 = 0;
            std::size_t ln = 0;
            for (const Item &it : items) {
                if (it.v <= thr) {
                    ++ln;
                    (it.y == 0 ? lw0 : lw1) += it.w;
                } else {
                    (it.y == 0 ? rw0 : rw1) += it.w;
                }
            }
            std::size_t rn = n - ln;
            if (ln < opt.min_samples_leaf || rn < opt.min_samples_leaf)
                continue;
            double lw = lw0 + lw1, rw = rw0 + rw1;
            double lg = lw > 0 ? 1.0 - (lw0 * lw0 + lw1 * lw1) / (lw * lw) : 0.0;
            double rg = rw > 0 ? 1.0 - (rw0 * rw0 + rw1 * rw1) / (rw * rw) : 0.0;
            double gain = parent_gini - (lw * lg + rw * rg) / w;
            if (gain > best_gain) {
                best_gain = gain;
                best_feature = static_cast<int>(f);
                best_threshold = thr;
            }
        } else {
            std::sort(items.begin(), items.end(),
                      [](const Item &a, const Item &b) { return a.v < b.v; });
            double lw0 = 0, lw1 = 0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                (items[i].y == 0 ? lw0 : lw1) += items[i].w;
                if (items[i].v == items[i + 1].v)
                    continue;
                std::size_t ln = i + 1, rn = n - ln;
                if (ln < opt.min_samples_leaf || rn < opt.min_samples_leaf)
                    continue;
                double rw0 = w0 - lw0, rw1 = w1 - lw1;
                double lw = lw0 + lw1, rw = rw0 + rw1;
                double lg = lw > 0 ? 1.0 - (lw0 * lw0 + lw1 * lw1) / (lw * lw) : 0.0;
                double rg = rw > 0 ? 1.0 - (rw0 * rw0 + rw1 * rw1) / (rw * rw) : 0.0;
                double gain = parent_gini - (lw * lg + rw * rg) / w;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = static_cast<int>(f);
                    best_threshold = (items[i].v + items[i + 1].v) / 2.0;
                }
            }
        }
    }

    if (best_feature < 0)
        return node_id;

    auto mid_it = std::stable_partition(
        idx.begin() + static_cast<std::ptrdiff_t>(lo),
        idx.begin() + static_cast<std::ptrdiff_t>(hi), [&](std::size_t s) {
            return x[s][static_cast<std::size_t>(best_feature)] <= best_threshold;
        });
    std::size_t mid = static_cast<std::size_t>(mid_it - idx.begin());
    if (mid == lo || mid == hi)
        return node_id; // numerically degenerate split

    importance_[static_cast<std::size_t>(best_feature)] += w * best_gain;

    std::size_t left = build(x, y, idx, lo, mid, weights, opt, rng, depth + 1);
    std::size_t right = build(x, y, idx, mid, hi, weights, opt, rng, depth + 1);
    nodes_[node_id].feature = best_feature;
    nodes_[node_id].threshold = best_threshold;
    nodes_[node_id].left = static_cast<int>(left);
    nodes_[node_id].right = static_cast<int>(right);
    return node_id;
}

std::size_t ClassificationTree::leaf_index(const std::vector<double> &row) const {
    std::size_t cur = 0;
    while (nodes_[cur].feature >= 0) {
        const Node &nd = nodes_[cur];
        cur = static_cast<std::size_t>(
            row[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left
                                                                      : nd.right);
    }
    return cur;
}

int ClassificationTree::predict(const std::vector<double> &row) const {
    const Node &leaf = nodes_[leaf_index(row)];
    return leaf.dist[1] > leaf.dist[0] ? 1 : 0;
}

const double *ClassificationTree::leaf_distribution(const std::vector<double> &row) const {
    return nodes_[leaf_index(row)].dist;
}

std::vector<double> ClassificationTree::feature_importances() const {
    std::vector<double> imp = importance_;
    double total = 0.0;
    for (double v : imp)
        total += v;
    if (total > 0)
        for (double &v : imp)
            v /= total;
    return imp;
}

void RegressionTree::fit(const Matrix &x, const std::vector<double> &residual,
                         const std::vector<double> &hessian,
                         const std::vector<std::size_t> &indices,
                         const TreeOptions &opt) {
    if (indices.empty())
        fail_internal("tree fit on empty sample");
    nodes_.clear();
    n_features_ = x[0].size();
    importance_.assign(n_features_, 0.0);
    std::vector<std::size_t> idx = indices;
    build(x, residual, hessian, idx, 0, idx.size(), opt, 0);
}

std::size_t RegressionTree::build(const Matrix &x,
                                  const std::vector<double> &residual,
                                  const std::vector<double> &hessian,
                                  std::vector<std::size_t> &idx, std::size_t lo,
                                  std::size_t hi, const TreeOptions &opt,
                                  int depth) {
    const std::size_t n = hi - lo;
    double sum_r = 0.0, sum_r2 = 0.0, sum_h = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
        double r = residual[idx[i]];
        sum_r += r;
        sum_r2 += r * r;
        sum_h += hessian[idx[i]];
    }

    const std::size_t node_id = nodes_.size();
    nodes_.emplace_back();
    nodes_[node_id].value = sum_r / std::max(sum_h, 1e-12);

    const bool depth_ok = opt.max_depth < 0 || depth < opt.max_depth;
    if (!depth_ok || n < opt.min_samples_split || n < 2 * opt.min_samples_leaf)
        return node_id;

    const double parent_sse = sum_r2 - sum_r * sum_r / static_cast<double>(n);

    int best_feature = -1;
    double best_threshold = 0.0, best_gain = 1e-12;

    struct Item {
        double v, r;
    };
    std::vector<Item> items(n);
    for (std::size_t f = 0; f < n_features_; ++f) {
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t s = idx[lo + i];
            items[i] = {x[s][f], residual[s]};
        }
        std::sort(items.begin(), items.end(),
                  [](const Item &a, const Item &b) { return a.v < b.v; });
        double lr = 0.0, lr2 = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            lr += items[i].r;
            lr2 += items[i].r * items[i].r;
            if (items[i].v == items[i + 1].v)
                continue;
            std::size_t ln = i + 1, rn = n - ln;
            if (ln < opt.min_samples_leaf || rn < opt.min_samples_leaf)
                continue;
            double rr = sum_r - lr, rr2 = sum_r2 - lr2;
            double sse_l = lr2 - lr * lr / static_cast<double>(ln);
            double sse_r = rr2 - rr * rr / static_cast<double>(rn);
            double gain = parent_sse - sse_l - sse_r;
            if (gain > best_gain) {
                best_gain = gain;
                best_feature = static_cast<int>(f);
                best_threshold = (items[i].v + items[i + 1].v) / 2.0;
            }
        }
    }

    if (best_feature < 0)
        return node_id;

    auto mid_it = std::stable_partition(
        idx.begin() + static_cast<std::ptrdiff_t>(lo),
        idx.begin() + static_cast<std::ptrdiff_t>(hi), [&](std::size_t s) {
            return x[s][static_cast<std::size_t>(best_feature)] <= best_threshold;
        });
    std::size_t mid = static_cast<std::size_t>(mid_it - idx.begin());
    if (mid == lo || mid == hi)
        return node_id;

    importance_[static_cast<std::size_t>(best_feature)] += best_gain;

    std::size_t left = build(x, residual, hessian, idx, lo, mid, opt, depth + 1);
    std::size_t right = build(x, residual, hessian, idx, mid, hi, opt, depth + 1);
    nodes_[node_id].feature = best_feature;
    nodes_[node_id].threshold = best_threshold;
    nodes_[node_id].left = static_cast<int>(left);
    nodes_[node_id].right = static_cast<int>(right);
    return node_id;
}

double RegressionTree::predict(const std::vector<double> &row) const {
    std::size_t cur = 0;
    while (nodes_[cur].feature >= 0) {
        const Node &nd = nodes_[cur];
        cur = static_cast<std::size_t>(
            row[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left
                                                                      : nd.right);
    }
    return nodes_[cur].value;
}

std::vector<double> RegressionTree::feature_importances() const {
    return importance_;
}

} // namespace chainsent
