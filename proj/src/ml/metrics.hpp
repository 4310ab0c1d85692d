#pragma once

#include <vector>

namespace chainsent {

struct Metrics {
    double accuracy = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

// Accuracy plus support-weighted precision/recall/F1 over the classes present
// in `truth`. A class predicted never (zero tp+fp) contributes precision 0.
Metrics evaluate(const std::vector<int> &pred, const std::vector<int> &truth);

} // namespace chainsent
