#pragma once

#include <vector>

#include "ml/tree.hpp"

namespace chainsent {

struct LrcOptions {
    double c = 1.0; // inverse regularization strength
    std::size_t max_iter = 100;
    double tol = 1e-8;
};

// L2-regularized logistic regression fit by damped Newton iterations.
// The intercept is not penalized.
class LogisticRegressionClassifier {
public:
    void fit(const Matrix &x, const std::vector<int> &y, const LrcOptions &opt);
    int predict(const std::vector<double> &row) const;
    std::vector<int> predict_all(const Matrix &x) const;
    // |coefficient| per feature
    std::vector<double> feature_importances() const;
    const std::vector<double> &coefficients() const { return weights_; }
    double intercept() const { return intercept_; }

private:
    std::vector<double> weights_;
    double intercept_ = 0.0;
};

} // namespace chainsent
