#pragma once

#include <functional>
#include <vector>

#include "ml/tree.hpp"

namespace chainsent {

// Column subset of a row-major matrix, in the given index order.
Matrix subset_columns(const Matrix &x, const std::vector<std::size_t> &cols);

// One-way ANOVA F statistic per feature between the two classes. A feature
// with zero within-class variance scores infinite (separating) or zero
// (constant).
std::vector<double> anova_f_scores(const Matrix &x, const std::vector<int> &y);

// Indices of the k best features by F-score, ascending index order.
// Ties rank the lower index first.
std::vector<std::size_t> select_k_features(const Matrix &x,
                                           const std::vector<int> &y,
                                           std::size_t k);

// Fits on a column subset and returns one importance per column.
using ImportanceFn = std::function<std::vector<double>(
    const Matrix &x, const std::vector<int> &y)>;

// Recursive elimination: refit, drop the lowest-importance feature (ties →
// lowest index), repeat until n_features remain. Returns ascending indices
// into the original columns. n_features >= total is the identity.
std::vector<std::size_t> rfe_select(const ImportanceFn &fit_importances,
                                    const Matrix &x, const std::vector<int> &y,
                                    std::size_t n_features);

} // namespace chainsent
