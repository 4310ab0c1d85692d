#include "ml/linear.hpp"

#include <cmath>

#include "util/status.hpp"

namespace chainsent {

namespace {

double softplus(double z) {
    if (z > 0)
        return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

// Gaussian elimination with partial pivoting; a is destroyed.
std::vector<double> solve_linear(std::vector<std::vector<double>> a,
                                 std::vector<double> b) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col]))
                pivot = r;
        if (std::fabs(a[pivot][col]) < 1e-300)
            fail_internal("singular system in logistic solver");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = col + 1; r < n; ++r) {
            double factor = a[r][col] / a[col][col];
            if (factor == 0.0)
                continue;
            for (std::size_t c = col; c < n; ++c)
                a[r][c] -= factor * a[col][c];
            b[r] -= factor * b[col];
        }
    }
    std::vector<double> x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t c = i + 1; c < n; ++c)
            s -= a[i][c] * x[c];
        x[i] = s / a[i][i];
    }
    return x;
}

} // namespace

void LogisticRegressionClassifier::fit(const Matrix &x, const std::vector<int> &y,
                                       const LrcOptions &opt) {
    const std::size_t n = x.size();
    if (n == 0 || n != y.size())
        fail_input("logistic: bad training shape");
    if (opt.c <= 0)
        fail_input("logistic: C must be positive");
    const std::size_t d = x[0].size();
    weights_.assign(d, 0.0);
    intercept_ = 0.0;

    const double lambda = 1.0 / opt.c;

    auto objective = [&](const std::vector<double> &w, double b) {
        double obj = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double z = b;
            for (std::size_t f = 0; f < d; ++f)
                z += w[f] * x[i][f];
            double sign = y[i] == 1 ? 1.0 : -1.0;
            obj += softplus(-sign * z);
        }
        double reg = 0.0;
        for (double wf : w)
            reg += wf * wf;
        return obj + 0.5 * lambda * reg;
    };

    double cur_obj = objective(weights_, intercept_);

    for (std::size_t iter = 0; iter < opt.max_iter; ++iter) {
        // gradient and Hessian of the penalized log-loss
        std::vector<double> grad(d + 1, 0.0);
        std::vector<std::vector<double>> hess(d + 1,
                                              std::vector<double>(d + 1, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            double z = intercept_;
            for (std::size_t f = 0; f < d; ++f)
                z += weights_[f] * x[i][f];
            double p = 1.0 / (1.0 + std::exp(-z));
            double r = p - static_cast<double>(y[i]);
            double s = std::max(p * (1.0 - p), 1e-12);
            for (std::size_t f = 0; f < d; ++f) {
                grad[f] += r * x[i][f];
                for (std::size_t g = f; g < d; ++g)
                    hess[f][g] += s * x[i][f] * x[i][g];
                hess[f][d] += s * x[i][f];
            }
            grad[d] += r;
            hess[d][d] += s;
        }
        for (std::size_t f = 0; f < d; ++f) {
            grad[f] += lambda * weights_[f];
            hess[f][f] += lambda;
        }
        for (std::size_t f = 0; f < d + 1; ++f) {
            hess[f][f] += 1e-12;
            for (std::size_t g = 0; g < f; ++g)
                hess[f][g] = hess[g][f];
        }

        std::vector<double> neg_grad(d + 1);
        for (std::size_t f = 0; f < d + 1; ++f)
            neg_grad[f] = -grad[f];
        std::vector<double> step = solve_linear(hess, neg_grad);

        double scale = 1.0;
        std::vector<double> w_new(d);
        double b_new = 0.0, new_obj = 0.0;
        bool accepted = false;
        for (int halving = 0; halving < 50; ++halving) {
            for (std::size_t f = 0; f < d; ++f)
                w_new[f] = weights_[f] + scale * step[f];
            b_new = intercept_ + scale * step[d];
            new_obj = objective(w_new, b_new);
            if (new_obj <= cur_obj + 1e-12) {
                accepted = true;
                break;
            }
            scale *= 0.5;
        }
        if (!accepted)
            break;

        double max_move = std::fabs(scale * step[d]);
        for (std::size_t f = 0; f < d; ++f)
            max_move = std::max(max_move, std::fabs(scale * step[f]));
        weights_ = w_new;
        intercept_ = b_new;
        cur_obj = new_obj;
        if (max_move < opt.tol)
            break;
    }
}

int LogisticRegressionClassifier::predict(const std::vector<double> &row) const {
    double z = intercept_;
    for (std::size_t f = 0; f < weights_.size(); ++f)
        z += weights_[f] * row[f];
    return z > 0 ? 1 : 0;
}

std::vector<int> LogisticRegressionClassifier::predict_all(const Matrix &x) const {
    std::vector<int> out;
    out.reserve(x.size());
    for (const auto &row : x)
        out.push_back(predict(row));
    return out;
}

std::vector<double> LogisticRegressionClassifier::feature_importances() const {
    std::vector<double> imp(weights_.size());
    for (std::size_t f = 0; f < weights_.size(); ++f)
        imp[f] = std::fabs(weights_[f]);
    return imp;
}

} // namespace chainsent
