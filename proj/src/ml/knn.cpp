#include "ml/knn.hpp"

#include <algorithm>
#include <cmath>

#include "util/status.hpp"

namespace chainsent {

void KnnClassifier::fit(const Matrix &x, const std::vector<int> &y,
                        const KnnOptions &opt) {
    if (x.empty() || x.size() != y.size())
        fail_input("knn: bad training shape");
    if (opt.n_neighbors < 1 || opt.n_neighbors > x.size())
        fail_input("knn: n_neighbors out of range");
    if (opt.p != 1 && opt.p != 2)
        fail_input("knn: p must be 1 or 2");
    x_ = x;
    y_ = y;
    opt_ = opt;
}

int KnnClassifier::predict(const std::vector<double> &row) const {
    std::vector<std::pair<double, std::size_t>> dists;
    dists.reserve(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) {
        double d = 0.0;
        for (std::size_t f = 0; f < row.size(); ++f) {
            double diff = std::fabs(x_[i][f] - row[f]);
            d += opt_.p == 1 ? diff : diff * diff;
        }
        if (opt_.p == 2)
            d = std::sqrt(d);
        dists.emplace_back(d, i);
    }
    std::sort(dists.begin(), dists.end());

    double vote[2] = {0.0, 0.0};
    if (opt_.distance_weighted) {
        bool any_zero = false;
        for (std::size_t k = 0; k < opt_.n_neighbors; ++k)
            if (dists[k].first == 0.0)
                any_zero = true;
        for (std::size_t k = 0; k < opt_.n_neighbors; ++k) {
            const auto &[d, i] = dists[k];
            // coincident training points take the whole vote
            double w = any_zero ? (d == 0.0 ? 1.0 : 0.0) : 1.0 / d;
            vote[y_[i]] += w;
        }
    } else {
        for (std::size_t k = 0; k < opt_.n_neighbors; ++k)
            vote[y_[dists[k].second]] += 1.0;
    }
    return vote[1] > vote[0] ? 1 : 0;
}

std::vector<int> KnnClassifier::predict_all(const Matrix &x) const {
    std::vector<int> out;
    out.reserve(x.size());
    for (const auto &row : x)
        out.push_back(predict(row));
    return out;
}

} // namespace chainsent
