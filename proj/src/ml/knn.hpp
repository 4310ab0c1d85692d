#pragma once

#include <vector>

#include "ml/tree.hpp"

namespace chainsent {

struct KnnOptions {
    std::size_t n_neighbors = 5;
    bool distance_weighted = false; // false = uniform vote
    int p = 2;                      // Minkowski exponent, 1 or 2
};

// Brute-force k-nearest-neighbor vote. Neighbor order is (distance, index)
// ascending, so equidistant points resolve deterministically.
class KnnClassifier {
public:
    void fit(const Matrix &x, const std::vector<int> &y, const KnnOptions &opt);
    int predict(const std::vector<double> &row) const;
    std::vector<int> predict_all(const Matrix &x) const;

private:
    Matrix x_;
    std::vector<int> y_;
    KnnOptions opt_;
};

} // namespace chainsent
