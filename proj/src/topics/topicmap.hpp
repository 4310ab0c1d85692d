#pragma once

#include <string>
#include <vector>

#include "topics/lda.hpp"

namespace chainsent {

// Jensen–Shannon divergence between two distributions of equal length,
// natural log. Ranges [0, ln 2]; disjoint supports hit the upper bound.
double js_divergence(const std::vector<double> &p, const std::vector<double> &q);

// Classical (Torgerson) MDS: double-centers the squared distance matrix and
// projects onto the top `dim` eigenvectors. Non-positive eigenvalues yield
// zero coordinates.
std::vector<std::vector<double>>
classical_mds(const std::vector<std::vector<double>> &dist, std::size_t dim);

struct TopicPoint {
    std::size_t topic = 0; // zero-based
    double x = 0.0;
    double y = 0.0;
    double weight = 0.0; // share of corpus tokens assigned to the topic
};

// 2D embedding of inter-topic JS divergences. Axis signs are canonicalized:
// the first topic with a nonzero coordinate on an axis gets a positive value.
std::vector<TopicPoint> intertopic_map(const LdaModel &model);

// CSV with header topic,x,y,weight; topic ids are 1-based.
std::string intertopic_csv(const std::vector<TopicPoint> &points);

} // namespace chainsent
