#include "topics/lda.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "util/csv.hpp"
#include "util/rng.hpp"
#include "util/status.hpp"
#include "util/textutil.hpp"

namespace chainsent {

DocTermMatrix build_dtm(const std::vector<std::vector<std::string>> &token_docs) {
    std::set<std::string> vocab_set;
    for (const auto &doc : token_docs)
        for (const auto &tok : doc)
            vocab_set.insert(tok);

    DocTermMatrix dtm;
    dtm.vocabulary.assign(vocab_set.begin(), vocab_set.end());
    std::map<std::string, std::size_t> ids;
    for (std::size_t i = 0; i < dtm.vocabulary.size(); ++i)
        ids.emplace(dtm.vocabulary[i], i);

    dtm.docs.reserve(token_docs.size());
    for (const auto &doc : token_docs) {
        std::map<std::size_t, int> counts;
        for (const auto &tok : doc)
            ++counts[ids.at(tok)];
        dtm.docs.emplace_back(counts.begin(), counts.end());
    }
    return dtm;
}

LdaModel fit_lda(const DocTermMatrix &dtm, const LdaOptions &opt) {
    const std::size_t K = opt.topics;
    const std::size_t V = dtm.vocabulary.size();
    const std::size_t D = dtm.docs.size();
    if (K < 1)
        fail_input("lda: topic count must be at least 1");
    if (opt.iterations < 1)
        fail_input("lda: iteration count must be at least 1");
    if (V == 0 || D == 0)
        fail_input("lda: empty corpus");

    // flatten documents into token instances (stable order)
    std::vector<std::size_t> tok_doc, tok_term;
    for (std::size_t d = 0; d < D; ++d) {
        for (const auto &[term, count] : dtm.docs[d]) {
            if (count < 0)
                fail_input("lda: negative term count");
            for (int c = 0; c < count; ++c) {
                tok_doc.push_back(d);
                tok_term.push_back(term);
            }
        }
    }
    const std::size_t N = tok_doc.size();
    if (N == 0)
        fail_input("lda: no tokens in corpus");

    const double alpha = opt.alpha < 0 ? 50.0 / static_cast<double>(K) : opt.alpha;
    const double beta = opt.beta < 0 ? 0.01 : opt.beta;
    if (alpha <= 0 || beta <= 0)
        fail_input("lda: priors must be positive");

    std::vector<long long> n_dk(D * K, 0), n_kw(K * V, 0), n_k(K, 0), n_d(D, 0);
    std::vector<std::size_t> z(N);

    Rng rng(derive_seed(opt.seed, "lda"));
    for (std::size_t i = 0; i < N; ++i) {
        std::size_t k = rng.below(K);
        z[i] = k;
        ++n_dk[tok_doc[i] * K + k];
        ++n_kw[k * V + tok_term[i]];
        ++n_k[k];
        ++n_d[tok_doc[i]];
    }

    LdaModel model;
    model.topics = K;
    model.alpha = alpha;
    model.beta = beta;
    model.iterations = opt.iterations;
    model.seed = opt.seed;
    model.vocabulary = dtm.vocabulary;

    const double vbeta = static_cast<double>(V) * beta;
    std::vector<double> p(K);

    for (std::size_t iter = 0; iter < opt.iterations; ++iter) {
        for (std::size_t i = 0; i < N; ++i) {
            const std::size_t d = tok_doc[i], w = tok_term[i];
            std::size_t k = z[i];
            --n_dk[d * K + k];
            --n_kw[k * V + w];
            --n_k[k];

            double total = 0.0;
            for (std::size_t t = 0; t < K; ++t) {
                double val = (static_cast<double>(n_dk[d * K + t]) + alpha) *
                             (static_cast<double>(n_kw[t * V + w]) + beta) /
                             (static_cast<double>(n_k[t]) + vbeta);
                total += val;
                p[t] = total;
            }
            double u = rng.unit() * total;
            std::size_t pick = 0;
            while (pick + 1 < K && u >= p[pick])
                ++pick;

            z[i] = pick;
            ++n_dk[d * K + pick];
            ++n_kw[pick * V + w];
            ++n_k[pick];
        }

        long long assigned = 0;
        for (long long c : n_k)
            assigned += c;
        if (assigned != static_cast<long long>(N))
            fail_internal("lda: token count drifted during sampling");

        if (opt.track_log_likelihood) {
            // corpus log-likelihood under the current smoothed estimates
            double ll = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const std::size_t d = tok_doc[i], w = tok_term[i];
                double px = 0.0;
                for (std::size_t t = 0; t < K; ++t) {
                    double theta_dt =
                        (static_cast<double>(n_dk[d * K + t]) + alpha) /
                        (static_cast<double>(n_d[d]) + static_cast<double>(K) * alpha);
                    double phi_tw =
                        (static_cast<double>(n_kw[t * V + w]) + beta) /
                        (static_cast<double>(n_k[t]) + vbeta);
                    px += theta_dt * phi_tw;
                }
                ll += std::log(px);
            }
            model.log_likelihood.push_back(ll);
        }
    }

    model.phi.assign(K, std::vector<double>(V, 0.0));
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t w = 0; w < V; ++w)
            model.phi[k][w] = (static_cast<double>(n_kw[k * V + w]) + beta) /
                              (static_cast<double>(n_k[k]) + vbeta);
    model.theta.assign(D, std::vector<double>(K, 0.0));
    for (std::size_t d = 0; d < D; ++d)
        for (std::size_t k = 0; k < K; ++k)
            model.theta[d][k] =
                (static_cast<double>(n_dk[d * K + k]) + alpha) /
                (static_cast<double>(n_d[d]) + static_cast<double>(K) * alpha);

    model.topic_tokens.assign(n_k.begin(), n_k.end());
    model.total_tokens = static_cast<long long>(N);
    return model;
}

std::vector<std::vector<std::pair<std::string, double>>>
top_words(const LdaModel &model, std::size_t n) {
    const std::size_t V = model.vocabulary.size();
    if (n < 1 || n > V)
        fail_input("top_words: n out of range");
    std::vector<std::vector<std::pair<std::string, double>>> out;
    for (std::size_t k = 0; k < model.topics; ++k) {
        std::vector<std::size_t> order(V);
        for (std::size_t i = 0; i < V; ++i)
            order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (model.phi[k][a] != model.phi[k][b])
                return model.phi[k][a] > model.phi[k][b];
            return model.vocabulary[a] < model.vocabulary[b];
        });
        std::vector<std::pair<std::string, double>> words;
        for (std::size_t i = 0; i < n; ++i)
            words.emplace_back(model.vocabulary[order[i]], model.phi[k][order[i]]);
        out.push_back(std::move(words));
    }
    return out;
}

std::string topics_csv(const LdaModel &model, std::size_t n) {
    auto ranked = top_words(model, n);
    std::string out = csv_row({"topic", "rank", "word", "probability"});
    for (std::size_t k = 0; k < ranked.size(); ++k)
        for (std::size_t r = 0; r < ranked[k].size(); ++r)
            out += csv_row({std::to_string(k + 1), std::to_string(r + 1),
                            ranked[k][r].first, format_double(ranked[k][r].second)});
    return out;
}

} // namespace chainsent
