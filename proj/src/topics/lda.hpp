#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace chainsent {

// Bag-of-words view of a token corpus. The vocabulary is sorted so that
// ids (and everything downstream of them) never depend on input order.
struct DocTermMatrix {
    std::vector<std::string> vocabulary;
    // per document: (term id, count), term ids ascending
    std::vector<std::vector<std::pair<std::size_t, int>>> docs;
};

DocTermMatrix build_dtm(const std::vector<std::vector<std::string>> &token_docs);

struct LdaOptions {
    std::size_t topics = 2;
    double alpha = -1.0; // < 0 → 50/K
    double beta = -1.0;  // < 0 → 0.01
    std::size_t iterations = 1000;
    std::uint64_t seed = 0;
    bool track_log_likelihood = false;
};

struct LdaModel {
    std::size_t topics = 0;
    double alpha = 0.0;
    double beta = 0.0;
    std::size_t iterations = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> vocabulary;
    std::vector<std::vector<double>> phi;   // K x V, rows sum to 1
    std::vector<std::vector<double>> theta; // D x K, rows sum to 1
    std::vector<long long> topic_tokens;    // per-topic assigned token mass
    long long total_tokens = 0;
    std::vector<double> log_likelihood;     // per iteration, if tracked
};

// Collapsed Gibbs sampler. Deterministic for fixed inputs and seed.
// Accepts K = 1 (phi degenerates to the smoothed corpus frequency).
LdaModel fit_lda(const DocTermMatrix &dtm, const LdaOptions &opt);

// n highest-probability words per topic; equal probabilities order
// lexicographically.
std::vector<std::vector<std::pair<std::string, double>>>
top_words(const LdaModel &model, std::size_t n);

// CSV with header topic,rank,word,probability; topics and ranks are 1-based.
std::string topics_csv(const LdaModel &model, std::size_t n);

} // namespace chainsent
