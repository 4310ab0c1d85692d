#include "pipeline/stages.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dataset/daily.hpp"
#include "dataset/prices.hpp"
#include "ml/experiments.hpp"
#include "sentiment/features.hpp"
#include "textprep/corpus.hpp"
#include "topics/lda.hpp"
#include "topics/topicmap.hpp"
#include "txdecoder/decoder.hpp"
#include "util/csv.hpp"
#include "util/logging.hpp"
#include "util/status.hpp"
#include "util/textutil.hpp"

namespace chainsent {

namespace {

void commit_partial(const std::string &final_path) {
    std::string partial = final_path + ".partial";
    if (std::rename(partial.c_str(), final_path.c_str()) != 0)
        fail_io("cannot move " + partial + " into place");
}

void write_artifact(const std::string &path, const std::string &content) {
    std::string partial = path + ".partial";
    {
        std::ofstream out(partial, std::ios::binary);
        if (!out)
            fail_io("cannot open " + partial + " for writing");
        out.write(content.data(),
                  static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            fail_io("short write to " + partial);
    }
    commit_partial(path);
}

std::uint64_t seed_of(const KvConfig &cfg) {
    long long seed = cfg.get_int("seed", 0);
    return static_cast<std::uint64_t>(seed);
}

} // namespace

void stage_decode(const KvConfig &cfg) {
    std::string in = cfg.require_path("in");
    std::string out = cfg.require_path("out");
    std::string chain = cfg.get_or("chain", "both");
    if (chain != "btc" && chain != "eth" && chain != "both")
        fail_config("chain must be btc, eth or both");
    long long threads = cfg.get_int("threads", 1);
    if (threads < 1)
        fail_config("threads must be positive");
    double printability = cfg.get_double("printability_threshold", 0.9);
    if (printability <= 0 || printability > 1)
        fail_config("printability_threshold must be in (0, 1]");

    DecodeStats stats = decode_stream(in, out + ".partial", chain, printability,
                                      static_cast<int>(threads));
    commit_partial(out);
    log_info("decode: " + std::to_string(stats.lines) + " lines, " +
             std::to_string(stats.texts) + " texts, " +
             std::to_string(stats.parse_errors) + " parse errors, " +
             std::to_string(stats.malformed_payloads) + " malformed payloads");
}

void stage_clean(const KvConfig &cfg) {
    std::string in = cfg.require_path("in");
    std::string out = cfg.require_path("out");
    bool minimal = cfg.get_bool("minimal", false);
    bool financial_only = cfg.get_bool("financial", false);
    auto financial_out = cfg.get_path("financial_out");
    long long max_run = cfg.get_int("max_run_length", 25);
    if (max_run < 1)
        fail_config("max_run_length must be positive");

    FinancialLexicon lexicon = load_financial_lexicon(cfg.require_path("financial_lexicon"));

    TokenSet vocab;
    AbbreviationMap abbreviations;
    CorpusOptions opt;
    opt.lexicon = &lexicon;
    opt.minimal = minimal;
    opt.max_run = static_cast<std::size_t>(max_run);
    if (!minimal) {
        vocab = load_token_set(cfg.require_path("vocab"));
        if (vocab.empty())
            fail_config("vocabulary file is empty");
        opt.vocab = &vocab;
        if (auto abbr = cfg.get_path("abbreviations")) {
            abbreviations = load_abbreviations(*abbr);
            opt.abbreviations = &abbreviations;
        }
    }

    CorpusCounts counts;
    if (financial_only) {
        counts = build_corpora(in, "", out + ".partial", opt);
        commit_partial(out);
    } else {
        counts = build_corpora(in, out + ".partial",
                               financial_out ? *financial_out + ".partial" : "",
                               opt);
        commit_partial(out);
        if (financial_out)
            commit_partial(*financial_out);
    }
    log_info("clean: " + std::to_string(counts.input) + " in, " +
             std::to_string(counts.corpus) + " kept, " +
             std::to_string(counts.financial) + " financial");
}

void stage_sentiment(const KvConfig &cfg) {
    std::string in = cfg.require_path("in");
    std::string out = cfg.require_path("out");
    VaderScorer vader(cfg.require_path("vader_lexicon"));
    BlobScorer blob(cfg.require_path("textblob_lexicon"));

    ExternalFeatures external;
    if (auto path = cfg.get_path("external"))
        external = load_external_features(*path);

    auto docs = aggregate_daily(read_corpus(in));

    std::vector<std::string> header = {"date",     "compound", "neg",
                                       "neu",      "pos",      "polarity",
                                       "subjectivity"};
    for (const auto &name : external.names)
        header.push_back(name);
    std::string content = csv_row(header);
    for (const auto &[day, doc] : docs) {
        SentimentVector v = score_document(vader, blob, doc);
        std::vector<std::string> row = {
            format_date(day),          format_double(v.compound),
            format_double(v.neg),      format_double(v.neu),
            format_double(v.pos),      format_double(v.polarity),
            format_double(v.subjectivity)};
        auto ext_it = external.rows.find(day);
        for (std::size_t i = 0; i < external.names.size(); ++i)
            row.push_back(ext_it != external.rows.end()
                              ? format_double(ext_it->second[i])
                              : std::string());
        content += csv_row(row);
    }
    write_artifact(out, content);
    log_info("sentiment: " + std::to_string(docs.size()) + " days scored");
}

void stage_topics(const KvConfig &cfg) {
    std::string in = cfg.require_path("in");
    std::string out_dir = cfg.require("out");
    long long k = cfg.get_int("k", 0);
    if (k < 1)
        fail_config("k must be a positive topic count");
    long long iters = cfg.get_int("iters", 1000);
    if (iters < 1)
        fail_config("iters must be positive");
    long long top_n = cfg.get_int("top_words", 10);
    if (top_n < 1)
        fail_config("top_words must be positive");

    auto corpus = read_corpus(in);
    std::vector<std::vector<std::string>> docs;
    docs.reserve(corpus.size());
    for (const auto &c : corpus)
        docs.push_back(c.tokens);

    LdaOptions opt;
    opt.topics = static_cast<std::size_t>(k);
    opt.alpha = cfg.get_double("alpha", -1.0);
    opt.beta = cfg.get_double("beta", -1.0);
    opt.iterations = static_cast<std::size_t>(iters);
    opt.seed = seed_of(cfg);

    DocTermMatrix dtm = build_dtm(docs);
    LdaModel model = fit_lda(dtm, opt);

    std::filesystem::create_directories(out_dir);
    std::size_t n = std::min<std::size_t>(static_cast<std::size_t>(top_n),
                                          model.vocabulary.size());
    write_artifact(out_dir + "/topics.csv", topics_csv(model, n));
    if (model.topics >= 2) {
        write_artifact(out_dir + "/map.csv", intertopic_csv(intertopic_map(model)));
    } else {
        log_info("topics: single topic, skipping the distance map");
    }
    log_info("topics: " + std::to_string(model.topics) + " topics over " +
             std::to_string(model.vocabulary.size()) + " terms");
}

void stage_dataset(const KvConfig &cfg) {
    PriceSeries btc = load_prices(cfg.require_path("prices_btc"));
    PriceSeries eth = load_prices(cfg.require_path("prices_eth"));
    std::string target = cfg.require("target");
    if (target != "btc" && target != "eth")
        fail_config("target must be btc or eth");
    const PriceSeries &prices = target == "btc" ? btc : eth;

    VaderScorer vader(cfg.require_path("vader_lexicon"));
    BlobScorer blob(cfg.require_path("textblob_lexicon"));

    auto docs = aggregate_daily(read_corpus(cfg.require_path("corpus")));
    auto raw_docs = aggregate_daily(read_corpus(cfg.require_path("raw_corpus")));

    ExternalFeatures external;
    bool has_external = false;
    if (auto path = cfg.get_path("external")) {
        external = load_external_features(*path);
        has_external = true;
    }

    Dataset d = build_dataset(prices, docs, raw_docs, vader, blob,
                              has_external ? &external : nullptr);
    std::string out = cfg.require_path("out");
    write_artifact(out, dataset_csv(d));
    log_info("dataset: " + std::to_string(d.dates.size()) + " rows for " + target);
}

void stage_train(const KvConfig &cfg) {
    std::string dataset_path = cfg.require_path("dataset");
    std::string out_dir = cfg.require("out");
    Dataset full = read_dataset_csv(dataset_path);
    auto specs = model_specs_from_config(cfg);
    Report report = run_experiments(full, specs, seed_of(cfg));

    std::filesystem::create_directories(out_dir);
    write_artifact(out_dir + "/report.csv", report_csv(report));
    write_artifact(out_dir + "/report.json", report_json(report));
    log_info("train: " + std::to_string(report.rows.size()) + " report rows");
}

void stage_report(const KvConfig &cfg) {
    std::string in = cfg.require_path("in");
    std::string out = cfg.require_path("out");
    Report report = report_from_csv(in);
    write_artifact(out, report_table(report));
    log_info("report: rendered " + std::to_string(report.rows.size()) + " rows");
}

void run_stage(const std::string &stage, const KvConfig &cfg) {
    if (stage == "decode")
        stage_decode(cfg);
    else if (stage == "clean")
        stage_clean(cfg);
    else if (stage == "sentiment")
        stage_sentiment(cfg);
    else if (stage == "topics")
        stage_topics(cfg);
    else if (stage == "dataset")
        stage_dataset(cfg);
    else if (stage == "train")
        stage_train(cfg);
    else if (stage == "report")
        stage_report(cfg);
    else
        fail_config("unknown stage '" + stage + "'");
}

} // namespace chainsent
