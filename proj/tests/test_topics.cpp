#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "topics/lda.hpp"
#include "util/status.hpp"
#include "topics/topicmap.hpp"
#include "util/rng.hpp"

using namespace chainsent;

namespace {

// Two disjoint ten-word vocabularies; documents draw from exactly one side.
std::vector<std::vector<std::string>> planted_corpus(std::size_t docs_per_side,
                                                     std::uint64_t seed) {
    std::vector<std::string> a = {"buy",  "sell", "market", "price", "coin",
                                  "chart", "trade", "profit", "margin", "asset"};
    std::vector<std::string> b = {"cat",  "dog",  "bird",  "fish",  "horse",
                                  "mouse", "sheep", "goat",  "duck",  "pony"};
    Rng rng(seed);
    std::vector<std::vector<std::string>> corpus;
    for (std::size_t d = 0; d < docs_per_side * 2; ++d) {
        const auto &side = (d % 2 == 0) ? a : b;
        std::vector<std::string> doc;
        std::size_t len = 8 + rng.below(8);
        for (std::size_t i = 0; i < len; ++i)
            doc.push_back(side[rng.below(side.size())]);
        corpus.push_back(std::move(doc));
    }
    return corpus;
}

} // namespace

TEST_CASE("document term matrices merge counts and sort the vocabulary") {
    auto dtm = build_dtm({{"b", "a", "b"}, {"c", "a"}, {}});
    REQUIRE(dtm.vocabulary == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(dtm.docs.size() == 3);
    // doc 0: a once, b twice
    int a_count = 0, b_count = 0;
    for (auto &[w, c] : dtm.docs[0]) {
        if (dtm.vocabulary[w] == "a") a_count = c;
        if (dtm.vocabulary[w] == "b") b_count = c;
    }
    CHECK(a_count == 1);
    CHECK(b_count == 2);
    CHECK(dtm.docs[2].empty());
}

TEST_CASE("a single topic model degenerates to the corpus distribution") {
    auto dtm = build_dtm({{"x", "x", "y"}, {"y", "z"}});
    LdaOptions opt;
    opt.topics = 1;
    opt.iterations = 10;
    opt.seed = 3;
    auto model = fit_lda(dtm, opt);
    REQUIRE(model.phi.size() == 1);
    REQUIRE(model.theta.size() == 2);
    CHECK(model.theta[0][0] == doctest::Approx(1.0));
    CHECK(model.theta[1][0] == doctest::Approx(1.0));
    double sum = 0.0;
    for (double v : model.phi[0]) sum += v;
    CHECK(sum == doctest::Approx(1.0));
    // x appears twice of five tokens; smoothing keeps it near 2/5
    std::size_t xi =
        std::lower_bound(model.vocabulary.begin(), model.vocabulary.end(), "x") -
        model.vocabulary.begin();
    CHECK(model.phi[0][xi] == doctest::Approx(0.4).epsilon(0.05));
}

TEST_CASE("fitting accounts for every token") {
    auto corpus = planted_corpus(20, 5);
    auto dtm = build_dtm(corpus);
    long long tokens = 0;
    for (const auto &doc : dtm.docs)
        for (auto &[w, c] : doc) tokens += c;
    LdaOptions opt;
    opt.topics = 3;
    opt.iterations = 30;
    opt.seed = 11;
    auto model = fit_lda(dtm, opt);
    long long assigned = 0;
    for (long long t : model.topic_tokens) assigned += t;
    CHECK(assigned == tokens);
    CHECK(model.total_tokens == tokens);
    for (const auto &row : model.phi) {
        double s = 0.0;
        for (double v : row) s += v;
        CHECK(s == doctest::Approx(1.0));
    }
    for (const auto &row : model.theta) {
        double s = 0.0;
        for (double v : row) s += v;
        CHECK(s == doctest::Approx(1.0));
    }
}

TEST_CASE("defaults derive from the topic count") {
    auto dtm = build_dtm({{"x", "y"}, {"y", "z"}});
    LdaOptions opt;
    opt.topics = 4;
    opt.iterations = 2;
    opt.seed = 1;
    auto model = fit_lda(dtm, opt);
    CHECK(model.alpha == doctest::Approx(50.0 / 4.0));
    CHECK(model.beta == doctest::Approx(0.01));
    LdaOptions custom = opt;
    custom.alpha = 0.3;
    custom.beta = 0.2;
    auto model2 = fit_lda(dtm, custom);
    CHECK(model2.alpha == doctest::Approx(0.3));
    CHECK(model2.beta == doctest::Approx(0.2));
}

TEST_CASE("the same seed reproduces the fit and another seed moves it") {
    auto corpus = planted_corpus(15, 7);
    auto dtm = build_dtm(corpus);
    LdaOptions opt;
    opt.topics = 2;
    opt.iterations = 50;
    opt.seed = 99;
    auto m1 = fit_lda(dtm, opt);
    auto m2 = fit_lda(dtm, opt);
    CHECK(m1.phi == m2.phi);
    CHECK(m1.theta == m2.theta);
    opt.seed = 100;
    auto m3 = fit_lda(dtm, opt);
    CHECK(m1.phi != m3.phi);
}

TEST_CASE("two planted topics separate cleanly") {
    auto corpus = planted_corpus(100, 42); // 200 documents
    auto dtm = build_dtm(corpus);
    LdaOptions opt;
    opt.topics = 2;
    opt.iterations = 200;
    opt.seed = 7;
    auto model = fit_lda(dtm, opt);
    auto tops = top_words(model, 10);
    REQUIRE(tops.size() == 2);

    const std::set<std::string> finance = {"buy",  "sell",  "market", "price",
                                           "coin", "chart", "trade",  "profit",
                                           "margin", "asset"};
    for (const auto &topic : tops) {
        REQUIRE(topic.size() == 10);
        std::size_t in_finance = 0;
        for (const auto &[word, prob] : topic)
            if (finance.count(word)) in_finance += 1;
        double purity =
            std::max(in_finance, topic.size() - in_finance) / 10.0;
        CHECK(purity >= 0.9);
        // ranked by probability
        for (std::size_t i = 1; i < topic.size(); ++i)
            CHECK(topic[i - 1].second >= topic[i].second);
    }
}

TEST_CASE("training likelihood trends upward when tracked") {
    auto corpus = planted_corpus(30, 9);
    auto dtm = build_dtm(corpus);
    LdaOptions opt;
    opt.topics = 2;
    opt.iterations = 60;
    opt.seed = 4;
    opt.track_log_likelihood = true;
    auto model = fit_lda(dtm, opt);
    REQUIRE(model.log_likelihood.size() == 60);
    double first = model.log_likelihood.front();
    double last = model.log_likelihood.back();
    CHECK(last > first);
}

TEST_CASE("top word listings reject out-of-range counts") {
    auto dtm = build_dtm({{"x", "y"}, {"y", "z"}});
    LdaOptions opt;
    opt.topics = 2;
    opt.iterations = 5;
    opt.seed = 1;
    auto model = fit_lda(dtm, opt);
    CHECK_THROWS_AS((void)top_words(model, 50), Error);
    CHECK_THROWS_AS((void)top_words(model, 0), Error);
    auto tops = top_words(model, 3); // n == vocabulary size is the max
    for (const auto &topic : tops) CHECK(topic.size() == 3);

    auto csv = topics_csv(model, 2);
    CHECK(csv.rfind("topic,rank,word,probability\n", 0) == 0);
    // 2 topics x 2 rows + header
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(csv.find("1,1,") != std::string::npos);
    CHECK(csv.find("2,1,") != std::string::npos);
}

TEST_CASE("distribution distance is symmetric and bounded") {
    std::vector<double> p = {1.0, 0.0, 0.0};
    std::vector<double> q = {0.0, 0.5, 0.5};
    std::vector<double> r = {0.5, 0.25, 0.25};
    CHECK(js_divergence(p, p) == doctest::Approx(0.0));
    CHECK(js_divergence(p, q) == doctest::Approx(js_divergence(q, p)));
    // disjoint supports sit at the natural-log ceiling
    CHECK(js_divergence(p, q) == doctest::Approx(std::log(2.0)));
    CHECK(js_divergence(p, r) > 0.0);
    CHECK(js_divergence(p, r) < std::log(2.0));
}

TEST_CASE("classical scaling preserves pairwise distances in the plane") {
    // four points already in 2D; their distance matrix must be reproduced
    std::vector<std::pair<double, double>> pts = {
        {0, 0}, {3, 0}, {0, 4}, {3, 4}};
    std::size_t n = pts.size();
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dist[i][j] = std::hypot(pts[i].first - pts[j].first,
                                    pts[i].second - pts[j].second);
    auto coords = classical_mds(dist, 2);
    REQUIRE(coords.size() == n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double d = std::hypot(coords[i][0] - coords[j][0],
                                  coords[i][1] - coords[j][1]);
            CHECK(d == doctest::Approx(dist[i][j]).epsilon(1e-6));
        }
}

TEST_CASE("intertopic maps weight topics by their token share") {
    auto corpus = planted_corpus(40, 13);
    auto dtm = build_dtm(corpus);
    LdaOptions opt;
    opt.topics = 3;
    opt.iterations = 40;
    opt.seed = 21;
    auto model = fit_lda(dtm, opt);
    auto points = intertopic_map(model);
    REQUIRE(points.size() == 3);
    double weight = 0.0;
    for (const auto &p : points) {
        CHECK(p.weight > 0.0);
        weight += p.weight;
    }
    CHECK(weight == doctest::Approx(1.0));
    std::set<std::size_t> ids;
    for (const auto &p : points) ids.insert(p.topic);
    CHECK(ids.size() == 3);

    auto csv = intertopic_csv(points);
    CHECK(csv.rfind("topic,x,y,weight\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

    // rerunning the fit yields byte-identical map output
    auto model2 = fit_lda(dtm, opt);
    CHECK(intertopic_csv(intertopic_map(model2)) == csv);
}
