#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "dataset/daily.hpp"
#include "ml/boosting.hpp"
#include "ml/cv.hpp"
#include "ml/experiments.hpp"
#include "ml/forest.hpp"
#include "ml/knn.hpp"
#include "ml/linear.hpp"
#include "ml/metrics.hpp"
#include "ml/selection.hpp"
#include "util/datetime.hpp"
#include "util/kvconfig.hpp"
#include "util/rng.hpp"
#include "util/status.hpp"

using namespace chainsent;

namespace {

// n samples, d columns: the first `informative` columns shift with the label,
// the rest are label-independent noise.
void planted_matrix(std::size_t n, std::size_t d, std::size_t informative,
                    std::uint64_t seed, Matrix &x, std::vector<int> &y) {
    Rng rng(seed);
    x.assign(n, std::vector<double>(d, 0.0));
    y.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        int label = static_cast<int>(i % 2);
        y[i] = label;
        for (std::size_t j = 0; j < d; ++j) {
            double noise = rng.unit();
            x[i][j] = (j < informative) ? label * 2.0 + 0.3 * noise : noise;
        }
    }
}

std::size_t rank_of_top3(const std::vector<double> &scores,
                         std::size_t informative) {
    std::vector<std::size_t> order(scores.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });
    std::size_t hits = 0;
    for (std::size_t i = 0; i < 3 && i < order.size(); ++i)
        hits += order[i] < informative;
    return hits;
}

} // namespace

// ------------------------------------------------------------------- folds

TEST_CASE("expanding-window folds grow the train side block by block") {
    auto folds = ts_cv_folds(12, 5);
    REQUIRE(folds.size() == 5);
    // block = 12 / (5 + 1) = 2
    CHECK(folds[0].train == std::vector<std::size_t>{0, 1});
    CHECK(folds[0].val == std::vector<std::size_t>{2, 3});
    CHECK(folds[1].train == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(folds[1].val == std::vector<std::size_t>{4, 5});
    CHECK(folds[4].train.size() == 10);
    CHECK(folds[4].val == std::vector<std::size_t>{10, 11});
}

TEST_CASE("every fold validates strictly after its training rows") {
    for (std::size_t n : {12u, 13u, 20u, 34u, 45u, 100u}) {
        for (std::size_t k : {3u, 5u}) {
            auto folds = ts_cv_folds(n, k);
            REQUIRE(folds.size() == k);
            for (const auto &fold : folds) {
                REQUIRE(!fold.train.empty());
                REQUIRE(!fold.val.empty());
                std::size_t max_train =
                    *std::max_element(fold.train.begin(), fold.train.end());
                std::size_t min_val =
                    *std::min_element(fold.val.begin(), fold.val.end());
                CHECK(max_train < min_val);
                for (std::size_t i = 1; i < fold.val.size(); ++i)
                    CHECK(fold.val[i] == fold.val[i - 1] + 1);
            }
        }
    }
    CHECK_THROWS_AS(ts_cv_folds(5, 5), Error); // block would be empty
}

// ----------------------------------------------------------------- metrics

TEST_CASE("metrics follow support-weighted arithmetic") {
    Metrics m = evaluate({1, 0, 1, 1}, {1, 0, 0, 1});
    CHECK(m.accuracy == doctest::Approx(0.75));
    // class 1: precision 2/3, recall 1; class 0: precision 1, recall 1/2
    CHECK(m.precision == doctest::Approx(0.5 * (2.0 / 3.0) + 0.5 * 1.0));
    CHECK(m.recall == doctest::Approx(0.75));
    CHECK(m.f1 == doctest::Approx(0.5 * 0.8 + 0.5 * (2.0 / 3.0)));

    Metrics perfect = evaluate({0, 1, 0}, {0, 1, 0});
    CHECK(perfect.accuracy == doctest::Approx(1.0));
    CHECK(perfect.precision == doctest::Approx(1.0));
    CHECK(perfect.recall == doctest::Approx(1.0));
    CHECK(perfect.f1 == doctest::Approx(1.0));

    CHECK_THROWS_AS(evaluate({}, {}), Error);
    CHECK_THROWS_AS(evaluate({1}, {1, 0}), Error);
}

TEST_CASE("an always-up guess on a slightly long test set scores its share") {
    // 1000 test days, 523 of them rises; predicting a rise every day
    std::vector<int> truth(1000, 0);
    for (std::size_t i = 0; i < 523; ++i)
        truth[i] = 1;
    std::vector<int> pred(1000, 1);
    Metrics m = evaluate(pred, truth);
    CHECK(m.accuracy == doctest::Approx(0.523));
    // weighted precision collapses to share^2: class 0 is never predicted
    CHECK(std::fabs(m.precision - 0.523 * 0.523) < 1e-12);
    CHECK(m.precision == doctest::Approx(0.27).epsilon(0.02));
    CHECK(m.recall == doctest::Approx(0.523));
}

TEST_CASE("reference rows are a coin flip and the train majority") {
    auto rows = baseline_rows({1, 1, 0}, {1, 0, 0, 1});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].model == "Random Guess");
    CHECK(rows[0].accuracy_only);
    CHECK(rows[0].metrics.accuracy == doctest::Approx(0.5));
    CHECK(rows[1].model == "Lucky Guess");
    CHECK(!rows[1].accuracy_only);
    // majority of train is 1 → predict all 1 → half the test set is right
    CHECK(rows[1].metrics.accuracy == doctest::Approx(0.5));

    // an even train split falls back to predicting 0
    auto tied = baseline_rows({1, 0}, {0, 0, 1});
    CHECK(tied[1].metrics.accuracy == doctest::Approx(2.0 / 3.0));

    CHECK_THROWS_AS(baseline_rows({}, {1}), Error);
}

// ------------------------------------------------------------------ models

TEST_CASE("logistic regression separates a linearly separable cloud") {
    Matrix x;
    std::vector<int> y;
    Rng rng(17);
    for (std::size_t i = 0; i < 80; ++i) {
        int label = static_cast<int>(i % 2);
        double base = label ? 1.5 : -1.5;
        x.push_back({base + rng.unit(), rng.unit()});
        y.push_back(label);
    }
    LogisticRegressionClassifier m;
    m.fit(x, y, {});
    auto pred = m.predict_all(x);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
        correct += pred[i] == y[i];
    CHECK(static_cast<double>(correct) / y.size() >= 0.95);
    REQUIRE(m.coefficients().size() == 2);
    CHECK(m.coefficients()[0] > 0.0); // larger x0 → class 1
    CHECK(std::fabs(m.coefficients()[0]) > std::fabs(m.coefficients()[1]));
    CHECK(m.feature_importances()[0] ==
          doctest::Approx(std::fabs(m.coefficients()[0])));
}

TEST_CASE("stronger regularization shrinks the coefficients") {
    Matrix x;
    std::vector<int> y;
    planted_matrix(60, 2, 1, 23, x, y);
    LogisticRegressionClassifier strong, weak;
    strong.fit(x, y, {0.01, 100, 1e-8});
    weak.fit(x, y, {100.0, 100, 1e-8});
    CHECK(std::fabs(strong.coefficients()[0]) < std::fabs(weak.coefficients()[0]));
}

TEST_CASE("a single neighbor reproduces the training labels") {
    Matrix x;
    std::vector<int> y;
    planted_matrix(50, 3, 1, 31, x, y);
    KnnClassifier m;
    m.fit(x, y, {1, false, 2});
    CHECK(m.predict_all(x) == y);

    // Manhattan vs Euclidean disagree between an axis point and a diagonal
    // one: from the origin, (1.8,0) is L1-closer (1.8 < 2) but L2-farther
    // (1.8 > sqrt 2)
    Matrix tri = {{1.8, 0.0}, {1.0, 1.0}};
    std::vector<int> tri_y = {0, 1};
    KnnClassifier man, euc;
    man.fit(tri, tri_y, {1, false, 1});
    euc.fit(tri, tri_y, {1, false, 2});
    CHECK(man.predict({0.0, 0.0}) == 0);
    CHECK(euc.predict({0.0, 0.0}) == 1);
}

TEST_CASE("distance weighting lets a close neighbor outvote a far pair") {
    Matrix x = {{0.0}, {1.0}, {1.05}};
    std::vector<int> y = {0, 1, 1};
    // query at 0.1: neighbors are 0 (d=0.1), 1 (d=0.9), 1 (d=0.95)
    KnnClassifier uniform, weighted;
    uniform.fit(x, y, {3, false, 2});
    weighted.fit(x, y, {3, true, 2});
    CHECK(uniform.predict({0.1}) == 1);
    CHECK(weighted.predict({0.1}) == 0);
}

TEST_CASE("gradient boosting drives its training loss monotonically down") {
    Matrix x;
    std::vector<int> y;
    planted_matrix(60, 4, 2, 41, x, y);
    GradientBoostingClassifier m;
    GbcOptions opt;
    opt.n_estimators = 30;
    opt.learning_rate = 0.2;
    opt.seed = 5;
    m.fit(x, y, opt);
    const auto &loss = m.loss_trace();
    REQUIRE(loss.size() == 30);
    for (std::size_t i = 1; i < loss.size(); ++i)
        CHECK(loss[i] <= loss[i - 1] + 1e-12);
    auto pred = m.predict_all(x);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
        correct += pred[i] == y[i];
    CHECK(static_cast<double>(correct) / y.size() >= 0.95);
}

TEST_CASE("stump boosting solves a one-dimensional threshold") {
    Matrix x;
    std::vector<int> y;
    for (int i = 0; i < 40; ++i) {
        x.push_back({static_cast<double>(i)});
        y.push_back(i < 20 ? 0 : 1);
    }
    AdaBoostClassifier m;
    m.fit(x, y, {25, 1.0, 9});
    CHECK(m.predict_all(x) == y);
    CHECK(m.feature_importances().size() == 1);
}

TEST_CASE("forests fit the planted signal and expose importances") {
    Matrix x;
    std::vector<int> y;
    planted_matrix(80, 5, 2, 53, x, y);
    ForestOptions opt;
    opt.n_estimators = 30;
    opt.seed = 11;
    ForestClassifier bagged;
    bagged.fit(x, y, opt);
    auto pred = bagged.predict_all(x);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y.size(); ++i)
        correct += pred[i] == y[i];
    CHECK(static_cast<double>(correct) / y.size() >= 0.95);
    auto imp = bagged.feature_importances();
    REQUIRE(imp.size() == 5);
    double total = 0.0;
    for (double v : imp)
        total += v;
    CHECK(total == doctest::Approx(1.0));

    // the extremely-randomized variant stays deterministic per seed
    opt.bootstrap = false;
    opt.random_thresholds = true;
    ForestClassifier extra1, extra2;
    extra1.fit(x, y, opt);
    extra2.fit(x, y, opt);
    CHECK(extra1.predict_all(x) == extra2.predict_all(x));
}

TEST_CASE("the model factory validates its inputs") {
    Matrix x;
    std::vector<int> y;
    planted_matrix(30, 2, 1, 61, x, y);

    CHECK_THROWS_AS(fit_model(Family::Lrc, {{"gamma", "1"}}, x, y, 0), Error);
    CHECK_THROWS_AS(fit_model(Family::Lrc, {{"C", "-1"}}, x, y, 0), Error);
    CHECK_THROWS_AS(fit_model(Family::Lrc, {{"solver", "saga"}}, x, y, 0), Error);
    CHECK_THROWS_AS(fit_model(Family::Knnc, {{"p", "3"}}, x, y, 0), Error);
    CHECK_THROWS_AS(fit_model(Family::Knnc, {{"weights", "cosine"}}, x, y, 0), Error);
    CHECK_THROWS_AS(fit_model(Family::Gbc, {{"subsample", "0"}}, x, y, 0), Error);

    std::vector<int> one_class(30, 1);
    CHECK_THROWS_AS(fit_model(Family::Lrc, {}, x, one_class, 0), Error);

    auto m = fit_model(Family::Knnc, {{"n_neighbors", "1"}}, x, y, 0);
    CHECK(m->predict(x) == y);
    CHECK(m->importances().empty()); // neighbors carry no importance notion

    CHECK(parse_family("rfc") == Family::Rfc);
    CHECK(parse_family("GBC") == Family::Gbc);
    CHECK_THROWS_AS(parse_family("svc"), Error);
    CHECK(family_name(Family::Etc) == "ETC");
}

// --------------------------------------------------------------- selection

TEST_CASE("column subsets preserve the requested order") {
    Matrix x = {{1, 2, 3}, {4, 5, 6}};
    auto sub = subset_columns(x, {2, 0});
    CHECK(sub == Matrix{{3, 1}, {6, 4}});
}

TEST_CASE("variance-ratio scores rank planted features first") {
    Matrix x;
    std::vector<int> y;
    planted_matrix(120, 8, 3, 71, x, y);

    auto scores = anova_f_scores(x, y);
    REQUIRE(scores.size() == 8);
    CHECK(rank_of_top3(scores, 3) >= 2);

    auto top = select_k_features(x, y, 3);
    REQUIRE(top.size() == 3);
    CHECK(std::is_sorted(top.begin(), top.end()));
    std::size_t informative_hits = 0;
    for (std::size_t i : top)
        informative_hits += i < 3;
    CHECK(informative_hits >= 2);

    // a perfectly separating feature scores infinite, a constant one zero
    Matrix degenerate = {{1, 5}, {1, 5}, {2, 5}, {2, 5}};
    std::vector<int> dy = {0, 0, 1, 1};
    auto dscores = anova_f_scores(degenerate, dy);
    CHECK(std::isinf(dscores[0]));
    CHECK(dscores[1] == doctest::Approx(0.0));
}

TEST_CASE("forest and linear importances also surface the planted features") {
    Matrix x;
    std::vector<int> y;
    planted_matrix(120, 8, 3, 83, x, y);

    auto rfc = fit_model(Family::Rfc, {{"n_estimators", "40"}}, x, y, 7);
    CHECK(rank_of_top3(rfc->importances(), 3) >= 2);

    auto lrc = fit_model(Family::Lrc, {}, x, y, 7);
    CHECK(rank_of_top3(lrc->importances(), 3) >= 2);
}

TEST_CASE("recursive elimination drops the weakest column each round") {
    // hand-scripted importances: column value IS its importance
    Matrix x = {{0.1, 0.9, 0.5, 0.3}, {0.1, 0.9, 0.5, 0.3}};
    std::vector<int> y = {0, 1};
    ImportanceFn by_value = [](const Matrix &m, const std::vector<int> &) {
        std::vector<double> imp;
        for (std::size_t j = 0; j < m[0].size(); ++j)
            imp.push_back(m[0][j]);
        return imp;
    };
    CHECK(rfe_select(by_value, x, y, 2) == std::vector<std::size_t>{1, 2});
    CHECK(rfe_select(by_value, x, y, 1) == std::vector<std::size_t>{1});
    // n >= columns is the identity
    CHECK(rfe_select(by_value, x, y, 4) == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(rfe_select(by_value, x, y, 9) == std::vector<std::size_t>{0, 1, 2, 3});

    // equal importances break toward dropping the lowest index
    ImportanceFn flat = [](const Matrix &m, const std::vector<int> &) {
        return std::vector<double>(m[0].size(), 1.0);
    };
    CHECK(rfe_select(flat, x, y, 2) == std::vector<std::size_t>{2, 3});
}

// ------------------------------------------------------------------ search

TEST_CASE("grid search scores candidates on held-out blocks and breaks ties early") {
    Matrix x;
    std::vector<int> y;
    planted_matrix(36, 2, 1, 97, x, y);
    auto folds = ts_cv_folds(36, 5);

    ModelSpec spec;
    spec.family = Family::Lrc;
    spec.grid = {{"C", {"0.5", "1"}}, {"solver", {"liblinear"}}};
    auto result = grid_search(spec, x, y, folds, 3);
    CHECK(result.cv_accuracy == doctest::Approx(1.0));
    REQUIRE(result.fold_accuracies.size() == 5);
    // both C values are perfect on separable data; the first listed wins
    CHECK(result.params.at("C") == "0.5");
    CHECK(result.features == std::vector<std::size_t>{0, 1});
    REQUIRE(result.model != nullptr);
    CHECK(result.model->predict(x) == y);
}

TEST_CASE("grid search can shrink the feature set during the fold loop") {
    Matrix x;
    std::vector<int> y;
    planted_matrix(36, 3, 1, 101, x, y);
    ModelSpec spec;
    spec.family = Family::Lrc;
    spec.grid = {{"C", {"1"}}};
    spec.feature_counts = {1};
    auto result = grid_search(spec, x, y, ts_cv_folds(36, 5), 3);
    CHECK(result.features == std::vector<std::size_t>{0});
    CHECK(result.cv_accuracy == doctest::Approx(1.0));
}

// ----------------------------------------------------------- configuration

TEST_CASE("feature configurations assemble from the available columns") {
    std::vector<std::string> cols = {
        "price_move_today", "log_return_today",
        "compound", "neg", "neu", "pos", "polarity", "subjectivity",
        "raw_compound", "raw_neg", "raw_neu", "raw_pos",
        "raw_polarity", "raw_subjectivity", "cryptobert_sentiment"};
    auto configs = experiment_configs(cols);
    REQUIRE(configs.size() == 5);
    CHECK(configs[0].first == "Price");
    CHECK(configs[1].first == "Sentiment");
    CHECK(configs[2].first == "Sentiment+Price");
    CHECK(configs[3].first == "Raw Sentiment");
    CHECK(configs[4].first == "Raw Sentiment+Price");

    CHECK(configs[0].second ==
          std::vector<std::string>{"price_move_today", "log_return_today"});
    // the dropped share column stays out; externals join the sentiment sets
    for (const auto &[label, names] : configs) {
        CHECK(std::find(names.begin(), names.end(), "pos") == names.end());
        CHECK(std::find(names.begin(), names.end(), "raw_pos") == names.end());
    }
    CHECK(std::find(configs[1].second.begin(), configs[1].second.end(),
                    "cryptobert_sentiment") != configs[1].second.end());
    CHECK(std::find(configs[2].second.begin(), configs[2].second.end(),
                    "cryptobert_sentiment") != configs[2].second.end());
    CHECK(std::find(configs[3].second.begin(), configs[3].second.end(),
                    "cryptobert_sentiment") == configs[3].second.end());

    // without price columns only the pure sentiment sets remain
    auto no_price = experiment_configs({"compound", "raw_compound"});
    REQUIRE(no_price.size() == 2);
    CHECK(no_price[0].first == "Sentiment");
    CHECK(no_price[1].first == "Raw Sentiment");
}

TEST_CASE("search-space overrides parse from config keys") {
    KvConfig cfg;
    auto specs = model_specs_from_config(cfg);
    REQUIRE(specs.size() == 6); // every family, suite order
    CHECK(specs[0].family == Family::Lrc);
    CHECK(specs[5].family == Family::Abc);
    CHECK(!specs[2].feature_counts.empty()); // forests search subsets by default

    cfg.set("families", "lrc, gbc");
    cfg.set("grid.gbc.learning_rate", "0.05");
    cfg.set("grid.gbc.rfe", "none");
    specs = model_specs_from_config(cfg);
    REQUIRE(specs.size() == 2);
    CHECK(specs[0].family == Family::Lrc);
    CHECK(specs[1].family == Family::Gbc);
    CHECK(specs[1].feature_counts.empty());
    bool found = false;
    for (const auto &[param, values] : specs[1].grid)
        if (param == "learning_rate") {
            found = true;
            CHECK(values == std::vector<std::string>{"0.05"});
        }
    CHECK(found);

    KvConfig dupe;
    dupe.set("families", "lrc, lrc");
    CHECK_THROWS_AS(model_specs_from_config(dupe), Error);
    KvConfig empty_list;
    empty_list.set("families", " ");
    CHECK_THROWS_AS(model_specs_from_config(empty_list), Error);
    KvConfig bad_param;
    bad_param.set("grid.lrc.alpha", "1");
    CHECK_THROWS_AS(model_specs_from_config(bad_param), Error);
    KvConfig wrong_subset_key;
    wrong_subset_key.set("grid.knnc.rfe", "4");
    CHECK_THROWS_AS(model_specs_from_config(wrong_subset_key), Error);
    KvConfig knn_ok;
    knn_ok.set("families", "knnc");
    knn_ok.set("grid.knnc.selector_k", "3,5");
    auto knn_specs = model_specs_from_config(knn_ok);
    CHECK(knn_specs[0].feature_counts == std::vector<std::size_t>{3, 5});
}

// ------------------------------------------------------------- full report

namespace {

Dataset report_dataset() {
    Dataset d;
    d.features = {"price_move_today", "log_return_today", "compound"};
    Rng rng(2021);
    for (std::size_t i = 0; i < 40; ++i) {
        int label = static_cast<int>(i % 2);
        d.dates.push_back(*parse_date("2021-02-01") + static_cast<EpochDay>(i));
        d.x.push_back({static_cast<double>(label), rng.unit() - 0.5,
                       label ? 0.5 + rng.unit() : -0.5 - rng.unit()});
        d.y.push_back(label);
    }
    return d;
}

} // namespace

TEST_CASE("the experiment protocol reports baselines plus one row per configuration") {
    Dataset d = report_dataset();
    ModelSpec spec;
    spec.family = Family::Lrc;
    spec.grid = {{"C", {"1"}}};
    Report report = run_experiments(d, {spec}, 7);

    REQUIRE(report.rows.size() == 5); // 2 baselines + Price, Sentiment, S+P
    CHECK(report.rows[0].model == "Random Guess");
    CHECK(report.rows[1].model == "Lucky Guess");
    CHECK(report.rows[2].model == "LRC+Price");
    CHECK(report.rows[2].config == "Price");
    CHECK(report.rows[3].model == "LRC+Sentiment");
    CHECK(report.rows[4].model == "LRC+Sentiment+Price");
    // the planted signal is fully predictive
    CHECK(report.rows[2].metrics.accuracy == doctest::Approx(1.0));
    CHECK(report.rows[3].metrics.accuracy == doctest::Approx(1.0));
    CHECK(report.rows[2].best_params.find("C=1") != std::string::npos);
    CHECK(report.rows[2].selected_features.find("price_move_today") !=
          std::string::npos);

    // same seed, same bytes
    Report again = run_experiments(d, {spec}, 7);
    CHECK(report_csv(again) == report_csv(report));
}

TEST_CASE("reports round trip through CSV and render as a table") {
    Dataset d = report_dataset();
    ModelSpec spec;
    spec.family = Family::Lrc;
    spec.grid = {{"C", {"1"}}};
    Report report = run_experiments(d, {spec}, 7);

    std::string path = "report_roundtrip_test.csv";
    {
        std::ofstream f(path);
        f << report_csv(report);
    }
    Report back = report_from_csv(path);
    REQUIRE(back.rows.size() == report.rows.size());
    for (std::size_t i = 0; i < back.rows.size(); ++i) {
        CHECK(back.rows[i].model == report.rows[i].model);
        CHECK(back.rows[i].config == report.rows[i].config);
        CHECK(back.rows[i].accuracy_only == report.rows[i].accuracy_only);
        CHECK(back.rows[i].metrics.accuracy ==
              doctest::Approx(report.rows[i].metrics.accuracy));
        CHECK(back.rows[i].best_params == report.rows[i].best_params);
    }
    CHECK(report_csv(back) == report_csv(report));

    std::string table = report_table(report);
    CHECK(table.find("Random Guess") != std::string::npos);
    CHECK(table.find("LRC+Price") != std::string::npos);

    std::string json = report_json(report);
    CHECK(json.find("\"model\"") != std::string::npos);
}
