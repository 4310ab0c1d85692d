#include "ml/selection.hpp"

#include <algorithm>
#include <limits>

#include "util/status.hpp"

namespace chainsent {

Matrix subset_columns(const Matrix &x, const std::vector<std::size_t> &cols) {
    Matrix out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i].reserve(cols.size());
        for (std::size_t c : cols)
            out[i].push_back(x[i][c]);
    }
    return out;
}

std::vector<double> anova_f_scores(const Matrix &x, const std::vector<int> &y) {
    const std::size_t n = x.size();
    if (n == 0 || n != y.size())
        fail_input("feature scoring: bad shape");
    const std::size_t d = x[0].size();

    std::size_t n1 = 0;
    for (int v : y)
        n1 += (v != 0);
    std::size_t n0 = n - n1;
    if (n0 == 0 || n1 == 0)
        fail_input("feature scoring needs both classes");

    std::vector<double> scores(d, 0.0);
    for (std::size_t f = 0; f < d; ++f) {
        double sum0 = 0, sum1 = 0;
        for (std::size_t i = 0; i < n; ++i)
            (y[i] == 0 ? sum0 : sum1) += x[i][f];
        double mean0 = sum0 / static_cast<double>(n0);
        double mean1 = sum1 / static_cast<double>(n1);
        double mean = (sum0 + sum1) / static_cast<double>(n);
        double ssw = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double m = y[i] == 0 ? mean0 : mean1;
            ssw += (x[i][f] - m) * (x[i][f] - m);
        }
        double ssb = static_cast<double>(n0) * (mean0 - mean) * (mean0 - mean) +
                     static_cast<double>(n1) * (mean1 - mean) * (mean1 - mean);
        if (ssw <= 0.0) {
            scores[f] = ssb > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
        } else if (n <= 2) {
            scores[f] = 0.0;
        } else {
            scores[f] = ssb / (ssw / static_cast<double>(n - 2));
        }
    }
    return scores;
}

std::vector<std::size_t> select_k_features(const Matrix &x,
                                           const std::vector<int> &y,
                                           std::size_t k) {
    const std::size_t d = x.empty() ? 0 : x[0].size();
    if (k > d)
        fail_input("feature selection: k exceeds feature count");
    auto scores = anova_f_scores(x, y);
    std::vector<std::size_t> order(d);
    for (std::size_t i = 0; i < d; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });
    order.resize(k);
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<std::size_t> rfe_select(const ImportanceFn &fit_importances,
                                    const Matrix &x, const std::vector<int> &y,
                                    std::size_t n_features) {
    const std::size_t d = x.empty() ? 0 : x[0].size();
    if (n_features < 1)
        fail_input("feature elimination: need at least one feature");
    std::vector<std::size_t> current(d);
    for (std::size_t i = 0; i < d; ++i)
        current[i] = i;

    while (current.size() > n_features) {
        Matrix sub = subset_columns(x, current);
        std::vector<double> imp = fit_importances(sub, y);
        if (imp.size() != current.size())
            fail_internal("feature elimination: importance length mismatch");
        std::size_t drop = 0;
        for (std::size_t i = 1; i < imp.size(); ++i)
            if (imp[i] < imp[drop])
                drop = i;
        current.erase(current.begin() + static_cast<std::ptrdiff_t>(drop));
    }
    return current;
}

} // namespace chainsent
