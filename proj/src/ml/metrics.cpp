#include "ml/metrics.hpp"

#include "util/status.hpp"

namespace chainsent {

Metrics evaluate(const std::vector<int> &pred, const std::vector<int> &truth) {
    if (truth.empty() || pred.size() != truth.size())
        fail_input("evaluate: empty or mismatched prediction/label lists");

    const double n = static_cast<double>(truth.size());
    double correct = 0.0;
    double tp[2] = {0, 0}, fp[2] = {0, 0}, support[2] = {0, 0};
    for (std::size_t i = 0; i < truth.size(); ++i) {
        int t = truth[i] ? 1 : 0;
        int p = pred[i] ? 1 : 0;
        support[t] += 1;
        if (p == t) {
            correct += 1;
            tp[t] += 1;
        } else {
            fp[p] += 1;
        }
    }

    Metrics m;
    m.accuracy = correct / n;
    for (int c = 0; c < 2; ++c) {
        if (support[c] == 0)
            continue;
        double prec = (tp[c] + fp[c]) > 0 ? tp[c] / (tp[c] + fp[c]) : 0.0;
        double rec = tp[c] / support[c];
        double f1 = (prec + rec) > 0 ? 2 * prec * rec / (prec + rec) : 0.0;
        double weight = support[c] / n;
        m.precision += weight * prec;
        m.recall += weight * rec;
        m.f1 += weight * f1;
    }
    return m;
}

} // namespace chainsent
