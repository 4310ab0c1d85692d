#include "ml/cv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "ml/boosting.hpp"
#include "ml/forest.hpp"
#include "ml/knn.hpp"
#include "ml/linear.hpp"
#include "ml/selection.hpp"
#include "util/logging.hpp"
#include "util/status.hpp"

namespace chainsent {

std::vector<Fold> ts_cv_folds(std::size_t n, std::size_t k) {
    if (k < 1)
        fail_input("cross-validation needs at least one fold");
    std::size_t block = n / (k + 1);
    if (block < 1)
        fail_input("too few rows for " + std::to_string(k) + "-fold time-series CV");
    std::vector<Fold> folds;
    for (std::size_t i = 1; i <= k; ++i) {
        Fold fold;
        for (std::size_t t = 0; t < i * block; ++t)
            fold.train.push_back(t);
        for (std::size_t t = i * block; t < i * block + block; ++t)
            fold.val.push_back(t);
        folds.push_back(std::move(fold));
    }
    return folds;
}

const std::vector<Family> &family_order() {
    static const std::vector<Family> order = {Family::Lrc, Family::Knnc,
                                              Family::Rfc, Family::Etc,
                                              Family::Gbc, Family::Abc};
    return order;
}

std::string family_name(Family f) {
    switch (f) {
    case Family::Lrc: return "LRC";
    case Family::Knnc: return "KNNC";
    case Family::Rfc: return "RFC";
    case Family::Etc: return "ETC";
    case Family::Gbc: return "GBC";
    case Family::Abc: return "ABC";
    }
    fail_internal("unknown model family");
}

Family parse_family(const std::string &name) {
    std::string up;
    for (char c : name)
        up += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    for (Family f : family_order())
        if (family_name(f) == up)
            return f;
    fail_config("unknown model family '" + name + "'");
}

namespace {

long long parse_int_value(const std::string &key, const std::string &value) {
    char *end = nullptr;
    long long v = std::strtoll(value.c_str(), &end, 10);
    if (value.empty() || end != value.c_str() + value.size())
        fail_config("parameter " + key + ": expected an integer, got '" + value + "'");
    return v;
}

double parse_double_value(const std::string &key, const std::string &value) {
    char *end = nullptr;
    double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end != value.c_str() + value.size() || !std::isfinite(v))
        fail_config("parameter " + key + ": expected a number, got '" + value + "'");
    return v;
}

int parse_depth(const std::string &key, const std::string &value) {
    if (value == "None")
        return -1;
    long long v = parse_int_value(key, value);
    if (v < 1)
        fail_config("parameter " + key + " must be positive or None");
    return static_cast<int>(v);
}

void reject_unknown(const Params &params, const std::vector<std::string> &known,
                    Family family) {
    for (const auto &[key, value] : params) {
        (void)value;
        if (std::find(known.begin(), known.end(), key) == known.end())
            fail_config("unknown parameter '" + key + "' for " + family_name(family));
    }
}

template <typename M> class ModelWrapper : public FittedModel {
public:
    explicit ModelWrapper(M m) : model_(std::move(m)) {}
    std::vector<int> predict(const Matrix &x) const override {
        return model_.predict_all(x);
    }
    std::vector<double> importances() const override {
        return model_.feature_importances();
    }
    const M &inner() const { return model_; }

private:
    M model_;
};

class KnnWrapper : public FittedModel {
public:
    explicit KnnWrapper(KnnClassifier m) : model_(std::move(m)) {}
    std::vector<int> predict(const Matrix &x) const override {
        return model_.predict_all(x);
    }
    std::vector<double> importances() const override { return {}; }

private:
    KnnClassifier model_;
};

} // namespace

std::unique_ptr<FittedModel> fit_model(Family family, const Params &params,
                                       const Matrix &x, const std::vector<int> &y,
                                       std::uint64_t seed) {
    if (x.empty() || x.size() != y.size())
        fail_input("model fit: bad training shape");
    bool has0 = false, has1 = false;
    for (int v : y)
        (v == 0 ? has0 : has1) = true;
    if (!has0 || !has1)
        fail_input("model fit: training labels contain a single class");

    auto get = [&](const char *key) -> const std::string * {
        auto it = params.find(key);
        return it == params.end() ? nullptr : &it->second;
    };

    switch (family) {
    case Family::Lrc: {
        reject_unknown(params, {"C", "solver"}, family);
        LrcOptions opt;
        if (const auto *v = get("C"))
            opt.c = parse_double_value("C", *v);
        if (opt.c <= 0)
            fail_config("parameter C must be positive");
        if (const auto *v = get("solver"); v && *v != "liblinear")
            fail_config("unsupported solver '" + *v + "'");
        LogisticRegressionClassifier m;
        m.fit(x, y, opt);
        return std::make_unique<ModelWrapper<LogisticRegressionClassifier>>(std::move(m));
    }
    case Family::Knnc: {
        reject_unknown(params, {"n_neighbors", "weights", "p"}, family);
        KnnOptions opt;
        if (const auto *v = get("n_neighbors")) {
            long long k = parse_int_value("n_neighbors", *v);
            if (k < 1)
                fail_config("parameter n_neighbors must be positive");
            opt.n_neighbors = static_cast<std::size_t>(k);
        }
        if (const auto *v = get("weights")) {
            if (*v == "uniform")
                opt.distance_weighted = false;
            else if (*v == "distance")
                opt.distance_weighted = true;
            else
                fail_config("parameter weights must be uniform or distance");
        }
        if (const auto *v = get("p")) {
            long long p = parse_int_value("p", *v);
            if (p != 1 && p != 2)
                fail_config("parameter p must be 1 or 2");
            opt.p = static_cast<int>(p);
        }
        KnnClassifier m;
        m.fit(x, y, opt);
        return std::make_unique<KnnWrapper>(std::move(m));
    }
    case Family::Rfc:
    case Family::Etc: {
        reject_unknown(params,
                       {"n_estimators", "max_depth", "min_samples_split",
                        "min_samples_leaf"},
                       family);
        ForestOptions opt;
        opt.seed = seed;
        opt.bootstrap = family == Family::Rfc;
        opt.random_thresholds = family == Family::Etc;
        if (const auto *v = get("n_estimators")) {
            long long ne = parse_int_value("n_estimators", *v);
            if (ne < 1)
                fail_config("parameter n_estimators must be positive");
            opt.n_estimators = static_cast<std::size_t>(ne);
        }
        if (const auto *v = get("max_depth"))
            opt.max_depth = parse_depth("max_depth", *v);
        if (const auto *v = get("min_samples_split")) {
            long long s = parse_int_value("min_samples_split", *v);
            if (s < 2)
                fail_config("parameter min_samples_split must be at least 2");
            opt.min_samples_split = static_cast<std::size_t>(s);
        }
        if (const auto *v = get("min_samples_leaf")) {
            long long s = parse_int_value("min_samples_leaf", *v);
            if (s < 1)
                fail_config("parameter min_samples_leaf must be positive");
            opt.min_samples_leaf = static_cast<std::size_t>(s);
        }
        ForestClassifier m;
        m.fit(x, y, opt);
        return std::make_unique<ModelWrapper<ForestClassifier>>(std::move(m));
    }
    case Family::Gbc: {
        reject_unknown(params,
                       {"n_estimators", "learning_rate", "max_depth", "subsample"},
                       family);
        GbcOptions opt;
        opt.seed = seed;
        if (const auto *v = get("n_estimators")) {
            long long ne = parse_int_value("n_estimators", *v);
            if (ne < 1)
                fail_config("parameter n_estimators must be positive");
            opt.n_estimators = static_cast<std::size_t>(ne);
        }
        if (const auto *v = get("learning_rate")) {
            opt.learning_rate = parse_double_value("learning_rate", *v);
            if (opt.learning_rate <= 0)
                fail_config("parameter learning_rate must be positive");
        }
        if (const auto *v = get("max_depth")) {
            long long dmax = parse_int_value("max_depth", *v);
            if (dmax < 1)
                fail_config("parameter max_depth must be positive");
            opt.max_depth = static_cast<int>(dmax);
        }
        if (const auto *v = get("subsample")) {
            opt.subsample = parse_double_value("subsample", *v);
            if (opt.subsample <= 0 || opt.subsample > 1)
                fail_config("parameter subsample must be in (0, 1]");
        }
        GradientBoostingClassifier m;
        m.fit(x, y, opt);
        return std::make_unique<ModelWrapper<GradientBoostingClassifier>>(std::move(m));
    }
    case Family::Abc: {
        reject_unknown(params, {"n_estimators", "learning_rate"}, family);
        AbcOptions opt;
        opt.seed = seed;
        if (const auto *v = get("n_estimators")) {
            long long ne = parse_int_value("n_estimators", *v);
            if (ne < 1)
                fail_config("parameter n_estimators must be positive");
            opt.n_estimators = static_cast<std::size_t>(ne);
        }
        if (const auto *v = get("learning_rate")) {
            opt.learning_rate = parse_double_value("learning_rate", *v);
            if (opt.learning_rate <= 0)
                fail_config("parameter learning_rate must be positive");
        }
        AdaBoostClassifier m;
        m.fit(x, y, opt);
        return std::make_unique<ModelWrapper<AdaBoostClassifier>>(std::move(m));
    }
    }
    fail_internal("unknown model family");
}

ModelSpec default_model_spec(Family family) {
    ModelSpec spec;
    spec.family = family;
    const std::vector<std::size_t> subset_sizes = {4, 5, 6, 7, 8, 9};
    switch (family) {
    case Family::Lrc:
        spec.grid = {
            {"C", {"0.01", "0.1", "1", "10", "50", "100"}},
            {"solver", {"liblinear"}},
        };
        break;
    case Family::Knnc:
        spec.grid = {
            {"n_neighbors", {"2", "3", "5", "7"}},
            {"weights", {"uniform", "distance"}},
            {"p", {"1", "2"}},
        };
        spec.feature_counts = subset_sizes;
        break;
    case Family::Rfc:
        spec.grid = {
            {"n_estimators", {"100", "200", "300", "400", "500"}},
            {"max_depth", {"None", "5", "10", "15", "20"}},
            {"min_samples_split", {"2", "5", "10"}},
            {"min_samples_leaf", {"1", "2", "4"}},
        };
        spec.feature_counts = subset_sizes;
        break;
    case Family::Etc:
        spec.grid = {
            {"n_estimators", {"100", "200", "300", "400", "500"}},
            {"max_depth", {"None", "10", "20", "30"}},
            {"min_samples_split", {"2", "5", "10"}},
            {"min_samples_leaf", {"1", "2", "4"}},
        };
        spec.feature_counts = subset_sizes;
        break;
    case Family::Gbc:
        spec.grid = {
            {"n_estimators", {"100", "200", "300", "400", "500"}},
            {"learning_rate", {"0.001", "0.01", "0.1", "0.2"}},
            {"max_depth", {"3", "5", "6", "7", "10", "15", "20"}},
            {"subsample", {"0.6", "0.8", "1.0"}},
        };
        spec.feature_counts = subset_sizes;
        break;
    case Family::Abc:
        spec.grid = {
            {"n_estimators", {"100", "200", "300", "400", "500"}},
            {"learning_rate", {"0.001", "0.01", "0.1", "1"}},
        };
        spec.feature_counts = subset_sizes;
        break;
    }
    return spec;
}

namespace {

std::vector<std::size_t> all_indices(std::size_t d) {
    std::vector<std::size_t> v(d);
    for (std::size_t i = 0; i < d; ++i)
        v[i] = i;
    return v;
}

// Feature subset for one candidate on one training slice.
std::vector<std::size_t> choose_features(Family family, const Params &params,
                                         const Matrix &x, const std::vector<int> &y,
                                         std::size_t count, std::uint64_t seed) {
    const std::size_t d = x.empty() ? 0 : x[0].size();
    if (count == 0 || count >= d)
        return all_indices(d);
    if (family == Family::Knnc)
        return select_k_features(x, y, count);
    ImportanceFn fn = [&](const Matrix &sub, const std::vector<int> &suby) {
        auto model = fit_model(family, params, sub, suby, derive_seed(seed, "rank"));
        auto imp = model->importances();
        if (imp.empty())
            fail_input("family exposes no feature importances");
        return imp;
    };
    return rfe_select(fn, x, y, count);
}

Matrix subset_rows(const Matrix &x, const std::vector<std::size_t> &rows) {
    Matrix out;
    out.reserve(rows.size());
    for (std::size_t r : rows)
        out.push_back(x[r]);
    return out;
}

std::vector<int> subset_labels(const std::vector<int> &y,
                               const std::vector<std::size_t> &rows) {
    std::vector<int> out;
    out.reserve(rows.size());
    for (std::size_t r : rows)
        out.push_back(y[r]);
    return out;
}

std::string candidate_tag(Family family, const Params &params, std::size_t count) {
    std::string tag = family_name(family);
    for (const auto &[k, v] : params)
        tag += ";" + k + "=" + v;
    tag += ";subset=" + std::to_string(count);
    return tag;
}

} // namespace

SearchResult grid_search(const ModelSpec &spec, const Matrix &x,
                         const std::vector<int> &y,
                         const std::vector<Fold> &folds, std::uint64_t seed) {
    if (x.empty() || x.size() != y.size())
        fail_input("grid search: bad training shape");
    if (folds.empty())
        fail_input("grid search: no folds");
    const std::size_t d = x[0].size();
    for (const auto &[name, values] : spec.grid)
        if (values.empty())
            fail_config("grid for parameter '" + name + "' is empty");

    // clamp subset sizes to the actual column count, dropping duplicates
    std::vector<std::size_t> counts;
    if (spec.feature_counts.empty()) {
        counts.push_back(0); // sentinel: every feature
    } else {
        for (std::size_t c : spec.feature_counts) {
            if (c < 1)
                fail_config("feature subset size must be positive");
            std::size_t eff = std::min(c, d);
            if (std::find(counts.begin(), counts.end(), eff) == counts.end())
                counts.push_back(eff);
        }
    }

    // odometer over grid values, first parameter outermost
    std::vector<std::size_t> pos(spec.grid.size(), 0);
    bool exhausted = false;

    SearchResult best;
    bool have_best = false;

    while (!exhausted) {
        Params params;
        for (std::size_t i = 0; i < spec.grid.size(); ++i)
            params.emplace(spec.grid[i].first, spec.grid[i].second[pos[i]]);

        for (std::size_t count : counts) {
            const std::uint64_t cand_seed =
                derive_seed(seed, candidate_tag(spec.family, params, count));
            try {
                double acc_sum = 0.0;
                std::vector<double> fold_accs;
                for (std::size_t fi = 0; fi < folds.size(); ++fi) {
                    const Fold &fold = folds[fi];
                    Matrix x_tr = subset_rows(x, fold.train);
                    std::vector<int> y_tr = subset_labels(y, fold.train);
                    auto feats = choose_features(
                        spec.family, params, x_tr, y_tr, count,
                        derive_seed(cand_seed, "fold" + std::to_string(fi)));
                    Matrix x_tr_sel = subset_columns(x_tr, feats);
                    Matrix x_val_sel =
                        subset_columns(subset_rows(x, fold.val), feats);
                    auto model = fit_model(
                        spec.family, params, x_tr_sel, y_tr,
                        derive_seed(cand_seed, "fit" + std::to_string(fi)));
                    auto pred = model->predict(x_val_sel);
                    double correct = 0.0;
                    for (std::size_t i = 0; i < pred.size(); ++i)
                        if (pred[i] == y[fold.val[i]])
                            correct += 1.0;
                    double acc = correct / static_cast<double>(fold.val.size());
                    fold_accs.push_back(acc);
                    acc_sum += acc;
                }
                double mean_acc = acc_sum / static_cast<double>(folds.size());
                if (!have_best || mean_acc > best.cv_accuracy) {
                    have_best = true;
                    best.params = params;
                    best.cv_accuracy = mean_acc;
                    best.fold_accuracies = fold_accs;
                    best.features.assign(1, count); // finalized below
                }
            } catch (const Error &e) {
                log_warn("grid candidate skipped (" +
                         candidate_tag(spec.family, params, count) +
                         "): " + e.what());
            }
        }

        // advance odometer, last parameter fastest
        exhausted = true;
        for (std::size_t i = spec.grid.size(); i-- > 0;) {
            if (++pos[i] < spec.grid[i].second.size()) {
                exhausted = false;
                break;
            }
            pos[i] = 0;
        }
        if (spec.grid.empty())
            break;
    }

    if (!have_best)
        fail_input("every grid candidate failed for " + family_name(spec.family));

    const std::size_t final_count = best.features[0];
    const std::uint64_t best_seed =
        derive_seed(seed, candidate_tag(spec.family, best.params, final_count));
    best.features = choose_features(spec.family, best.params, x, y, final_count,
                                    derive_seed(best_seed, "final-select"));
    Matrix x_sel = subset_columns(x, best.features);
    best.model = fit_model(spec.family, best.params, x_sel, y,
                           derive_seed(best_seed, "final-fit"));
    return best;
}

} // namespace chainsent
