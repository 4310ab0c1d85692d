#include "dataset/daily.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "util/csv.hpp"
#include "util/status.hpp"
#include "util/textutil.hpp"

namespace chainsent {

std::map<EpochDay, std::string> aggregate_daily(const std::vector<CleanText> &corpus) {
    std::map<EpochDay, std::vector<std::pair<EpochSeconds, std::string>>> buckets;
    for (const CleanText &c : corpus)
        buckets[day_of(c.block_timestamp)].emplace_back(c.block_timestamp, c.text);

    std::map<EpochDay, std::string> docs;
    for (auto &[day, items] : buckets) {
        std::sort(items.begin(), items.end());
        std::set<std::string> seen;
        std::string doc;
        for (const auto &[ts, text] : items) {
            (void)ts;
            if (!seen.insert(text).second)
                continue;
            if (!doc.empty())
                doc += '\n';
            doc += text;
        }
        docs.emplace(day, std::move(doc));
    }
    return docs;
}

namespace {

const std::vector<std::string> &base_feature_names() {
    static const std::vector<std::string> names = {
        "price_move_today", "log_return_today",
        "compound", "neg", "neu", "pos", "polarity", "subjectivity",
        "raw_compound", "raw_neg", "raw_neu", "raw_pos",
        "raw_polarity", "raw_subjectivity",
    };
    return names;
}

void push_vector(std::vector<double> &row, const SentimentVector &v) {
    row.push_back(v.compound);
    row.push_back(v.neg);
    row.push_back(v.neu);
    row.push_back(v.pos);
    row.push_back(v.polarity);
    row.push_back(v.subjectivity);
}

} // namespace

Dataset build_dataset(const PriceSeries &prices,
                      const std::map<EpochDay, std::string> &docs,
                      const std::map<EpochDay, std::string> &raw_docs,
                      const VaderScorer &vader, const BlobScorer &blob,
                      const ExternalFeatures *external) {
    std::map<EpochDay, int> labels;
    for (const auto &[day, y] : make_labels(prices))
        labels.emplace(day, y);
    std::map<EpochDay, double> returns;
    std::map<EpochDay, int> moves;
    for (const auto &[day, r] : log_returns(prices))
        returns.emplace(day, r);
    for (std::size_t i = 1; i < prices.size(); ++i)
        moves.emplace(prices[i].date,
                      prices[i].close > prices[i - 1].close ? 1 : 0);

    const bool has_external = external && !external->names.empty();

    Dataset d;
    d.features = base_feature_names();
    if (has_external)
        for (const auto &name : external->names)
            d.features.push_back(name);

    for (const auto &[day, doc] : docs) {
        auto raw_it = raw_docs.find(day);
        if (raw_it == raw_docs.end())
            continue;
        auto label_it = labels.find(day);
        auto ret_it = returns.find(day);
        if (label_it == labels.end() || ret_it == returns.end())
            continue;
        std::map<EpochDay, std::vector<double>>::const_iterator ext_it;
        if (has_external) {
            ext_it = external->rows.find(day);
            if (ext_it == external->rows.end())
                continue;
        }

        std::vector<double> row;
        row.push_back(static_cast<double>(moves.at(day)));
        row.push_back(ret_it->second);
        push_vector(row, score_document(vader, blob, doc));
        push_vector(row, score_document(vader, blob, raw_it->second));
        if (has_external)
            for (double v : ext_it->second)
                row.push_back(v);

        d.dates.push_back(day);
        d.x.push_back(std::move(row));
        d.y.push_back(label_it->second);
    }
    return d;
}

std::string dataset_csv(const Dataset &d) {
    std::vector<std::string> header = {"date", "label"};
    for (const auto &f : d.features)
        header.push_back(f);
    std::string out = csv_row(header);
    for (std::size_t i = 0; i < d.dates.size(); ++i) {
        std::vector<std::string> row = {format_date(d.dates[i]),
                                        std::to_string(d.y[i])};
        for (double v : d.x[i])
            row.push_back(format_double(v));
        out += csv_row(row);
    }
    return out;
}

Dataset read_dataset_csv(const std::string &path) {
    auto rows = csv_read_file(path);
    if (rows.empty())
        fail_input("dataset file " + path + " is empty");
    const auto &header = rows[0];
    if (header.size() < 3 || header[0] != "date" || header[1] != "label")
        fail_input("dataset file " + path + ": header must start date,label");

    Dataset d;
    for (std::size_t c = 2; c < header.size(); ++c)
        d.features.push_back(header[c]);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto &row = rows[r];
        if (row.size() == 1 && row[0].empty())
            continue;
        if (row.size() != header.size())
            fail_input("dataset row " + std::to_string(r) + ": wrong field count");
        auto day = parse_date(row[0]);
        if (!day)
            fail_input("dataset row " + std::to_string(r) + ": bad date '" + row[0] + "'");
        if (row[1] != "0" && row[1] != "1")
            fail_input("dataset row " + std::to_string(r) + ": label must be 0 or 1");
        std::vector<double> x;
        for (std::size_t c = 2; c < row.size(); ++c) {
            const std::string &cell = row[c];
            char *end = nullptr;
            double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v))
                fail_input("dataset row " + std::to_string(r) + ": bad value '" +
                           cell + "'");
            x.push_back(v);
        }
        d.dates.push_back(*day);
        d.y.push_back(row[1] == "1" ? 1 : 0);
        d.x.push_back(std::move(x));
    }
    return d;
}

std::pair<Dataset, Dataset> chrono_split(const Dataset &d, double fraction) {
    const std::size_t n = d.dates.size();
    if (n < 20)
        fail_input("dataset too small to split: " + std::to_string(n) + " rows");
    for (std::size_t i = 1; i < n; ++i)
        if (d.dates[i] <= d.dates[i - 1])
            fail_input("dataset rows must be strictly date-sorted");
    auto n_train = static_cast<std::size_t>(
        std::floor(fraction * static_cast<double>(n)));
    if (n_train == 0 || n_train >= n)
        fail_input("split fraction leaves an empty side");

    Dataset train, test;
    train.features = test.features = d.features;
    for (std::size_t i = 0; i < n; ++i) {
        Dataset &side = i < n_train ? train : test;
        side.dates.push_back(d.dates[i]);
        side.x.push_back(d.x[i]);
        side.y.push_back(d.y[i]);
    }
    return {std::move(train), std::move(test)};
}

} // namespace chainsent
