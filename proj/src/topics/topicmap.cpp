#include "topics/topicmap.hpp"

#include <algorithm>
#include <cmath>

#include "util/csv.hpp"
#include "util/status.hpp"
#include "util/textutil.hpp"

namespace chainsent {

double js_divergence(const std::vector<double> &p, const std::vector<double> &q) {
    if (p.size() != q.size())
        fail_internal("js_divergence: length mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        double m = 0.5 * (p[i] + q[i]);
        if (p[i] > 0)
            d += 0.5 * p[i] * std::log(p[i] / m);
        if (q[i] > 0)
            d += 0.5 * q[i] * std::log(q[i] / m);
    }
    return d;
}

namespace {

// Cyclic Jacobi eigensolver for a symmetric matrix. Returns eigenvalues in
// `values` and eigenvectors as columns of `vectors`.
void jacobi_eigen(std::vector<std::vector<double>> a,
                  std::vector<double> &values,
                  std::vector<std::vector<double>> &vectors) {
    const std::size_t n = a.size();
    vectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        vectors[i][i] = 1.0;

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            scale = std::max(scale, std::fabs(a[i][j]));
    if (scale == 0.0)
        scale = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                off += a[i][j] * a[i][j];
        if (off < 1e-28 * scale * scale)
            break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::fabs(a[p][q]) < 1e-300)
                    continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double vkp = vectors[k][p], vkq = vectors[k][q];
                    vectors[k][p] = c * vkp - s * vkq;
                    vectors[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    values.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        values[i] = a[i][i];
}

} // namespace

std::vector<std::vector<double>>
classical_mds(const std::vector<std::vector<double>> &dist, std::size_t dim) {
    const std::size_t n = dist.size();
    for (const auto &row : dist)
        if (row.size() != n)
            fail_internal("mds: distance matrix not square");

    std::vector<std::vector<double>> d2(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            d2[i][j] = dist[i][j] * dist[i][j];

    std::vector<double> row_mean(n, 0.0), col_mean(n, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            row_mean[i] += d2[i][j];
            col_mean[j] += d2[i][j];
            grand += d2[i][j];
        }
    for (std::size_t i = 0; i < n; ++i) {
        row_mean[i] /= static_cast<double>(n);
        col_mean[i] /= static_cast<double>(n);
    }
    grand /= static_cast<double>(n * n);

    std::vector<std::vector<double>> b(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            b[i][j] = -0.5 * (d2[i][j] - row_mean[i] - col_mean[j] + grand);

    std::vector<double> values;
    std::vector<std::vector<double>> vectors;
    jacobi_eigen(b, values, vectors);

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });

    std::vector<std::vector<double>> coords(n, std::vector<double>(dim, 0.0));
    for (std::size_t a = 0; a < dim && a < n; ++a) {
        double lambda = values[order[a]];
        if (lambda <= 0.0)
            continue;
        double s = std::sqrt(lambda);
        for (std::size_t i = 0; i < n; ++i)
            coords[i][a] = vectors[i][order[a]] * s;
    }
    return coords;
}

std::vector<TopicPoint> intertopic_map(const LdaModel &model) {
    const std::size_t K = model.topics;
    if (K < 2)
        fail_input("intertopic map needs at least two topics");

    std::vector<std::vector<double>> dist(K, std::vector<double>(K, 0.0));
    for (std::size_t i = 0; i < K; ++i)
        for (std::size_t j = i + 1; j < K; ++j)
            dist[i][j] = dist[j][i] = js_divergence(model.phi[i], model.phi[j]);

    auto coords = classical_mds(dist, 2);

    // resolve the eigenvector sign ambiguity so reruns are byte-identical
    for (std::size_t axis = 0; axis < 2; ++axis) {
        for (std::size_t i = 0; i < K; ++i) {
            if (std::fabs(coords[i][axis]) > 1e-12) {
                if (coords[i][axis] < 0)
                    for (std::size_t j = 0; j < K; ++j)
                        coords[j][axis] = -coords[j][axis];
                break;
            }
        }
    }

    std::vector<TopicPoint> points(K);
    for (std::size_t k = 0; k < K; ++k) {
        points[k].topic = k;
        points[k].x = coords[k][0];
        points[k].y = coords[k][1];
        points[k].weight = model.total_tokens > 0
                               ? static_cast<double>(model.topic_tokens[k]) /
                                     static_cast<double>(model.total_tokens)
                               : 0.0;
    }
    return points;
}

std::string intertopic_csv(const std::vector<TopicPoint> &points) {
    std::string out = csv_row({"topic", "x", "y", "weight"});
    for (const auto &p : points)
        out += csv_row({std::to_string(p.topic + 1), format_double(p.x),
                        format_double(p.y), format_double(p.weight)});
    return out;
}

} // namespace chainsent
