#include "sentiment/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "util/csv.hpp"
#include "util/status.hpp"
#include "util/textutil.hpp"

namespace chainsent {

SentimentVector score_document(const VaderScorer &vader, const BlobScorer &blob,
                               const std::string &text) {
    SentimentVector v;
    VaderScores vs = vader.score(text);
    v.compound = vs.compound;
    v.neg = vs.neg;
    v.neu = vs.neu;
    v.pos = vs.pos;
    BlobScores bs = blob.score(text);
    v.polarity = bs.polarity;
    v.subjectivity = bs.subjectivity;
    return v;
}

const std::vector<std::string> &continuous_feature_order() {
    static const std::vector<std::string> order = {
        "subjectivity", "polarity", "compound", "neg", "neu", "pos",
    };
    return order;
}

std::vector<std::vector<double>>
continuous_columns(const std::vector<SentimentVector> &days) {
    std::vector<std::vector<double>> cols(6);
    for (auto &c : cols)
        c.reserve(days.size());
    for (const SentimentVector &d : days) {
        cols[0].push_back(d.subjectivity);
        cols[1].push_back(d.polarity);
        cols[2].push_back(d.compound);
        cols[3].push_back(d.neg);
        cols[4].push_back(d.neu);
        cols[5].push_back(d.pos);
    }
    return cols;
}

CorrelationMatrix pearson_matrix(const std::vector<std::string> &names,
                                 const std::vector<std::vector<double>> &columns) {
    if (names.size() != columns.size())
        fail_internal("correlation input shape mismatch");
    const std::size_t k = columns.size();
    std::size_t n = k ? columns[0].size() : 0;
    for (const auto &c : columns)
        if (c.size() != n)
            fail_input("correlation columns have unequal lengths");
    if (n < 2)
        fail_input("correlation needs at least two days");

    std::vector<double> mean(k, 0.0), var(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        double s = 0.0;
        for (double v : columns[i])
            s += v;
        mean[i] = s / static_cast<double>(n);
        double ss = 0.0;
        for (double v : columns[i])
            ss += (v - mean[i]) * (v - mean[i]);
        var[i] = ss;
    }

    CorrelationMatrix m;
    m.names = names;
    m.r.assign(k, std::vector<double>(k, 0.0));
    m.defined.assign(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            if (var[i] <= 0.0 || var[j] <= 0.0)
                continue;
            double value;
            if (i == j) {
                value = 1.0;
            } else {
                double cov = 0.0;
                for (std::size_t t = 0; t < n; ++t)
                    cov += (columns[i][t] - mean[i]) * (columns[j][t] - mean[j]);
                value = cov / std::sqrt(var[i] * var[j]);
                value = std::clamp(value, -1.0, 1.0);
            }
            m.r[i][j] = m.r[j][i] = value;
            m.defined[i][j] = m.defined[j][i] = true;
        }
    }
    return m;
}

std::vector<std::string> prune_correlated(const CorrelationMatrix &m,
                                          double threshold) {
    const std::size_t k = m.names.size();
    std::vector<bool> kept(k, true);
    for (;;) {
        std::vector<std::size_t> partners(k, 0);
        bool any = false;
        for (std::size_t i = 0; i < k; ++i) {
            if (!kept[i])
                continue;
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i || !kept[j] || !m.defined[i][j])
                    continue;
                if (std::fabs(m.r[i][j]) >= threshold) {
                    ++partners[i];
                    any = true;
                }
            }
        }
        if (!any)
            break;
        std::size_t worst = 0;
        std::size_t best_count = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (!kept[i])
                continue;
            if (partners[i] >= best_count) { // >= : ties go to the later column
                best_count = partners[i];
                worst = i;
            }
        }
        kept[worst] = false;
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i < k; ++i)
        if (kept[i])
            out.push_back(m.names[i]);
    return out;
}

std::string correlations_csv(const CorrelationMatrix &m) {
    std::string out;
    std::vector<std::string> header;
    header.push_back("");
    for (const auto &n : m.names)
        header.push_back(n);
    out += csv_row(header);
    for (std::size_t i = 0; i < m.names.size(); ++i) {
        std::vector<std::string> row;
        row.push_back(m.names[i]);
        for (std::size_t j = 0; j < m.names.size(); ++j)
            row.push_back(m.defined[i][j] ? format_double(m.r[i][j]) : "NA");
        out += csv_row(row);
    }
    return out;
}

ExternalFeatures load_external_features(const std::string &path) {
    auto rows = csv_read_file(path);
    ExternalFeatures ext;
    if (rows.empty())
        return ext;
    const auto &header = rows[0];
    if (header.empty() || header[0] != "date")
        fail_input("external features: header must start with 'date'");
    for (std::size_t i = 1; i < header.size(); ++i) {
        if (header[i].empty())
            fail_input("external features: empty column name in header");
        for (std::size_t j = 1; j < i; ++j)
            if (header[j] == header[i])
                fail_input("external features: duplicate column '" + header[i] + "'");
        ext.names.push_back(header[i]);
    }
    if (ext.names.empty())
        fail_input("external features: no feature columns");
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto &row = rows[r];
        if (row.size() == 1 && row[0].empty())
            continue; // trailing blank line
        if (row.size() != header.size())
            fail_input("external features row " + std::to_string(r) +
                       ": expected " + std::to_string(header.size()) + " fields");
        auto day = parse_date(row[0]);
        if (!day)
            fail_input("external features row " + std::to_string(r) +
                       ": bad date '" + row[0] + "'");
        if (ext.rows.count(*day))
            fail_input("external features row " + std::to_string(r) +
                       ": duplicate date " + row[0]);
        std::vector<double> values;
        for (std::size_t c = 1; c < row.size(); ++c) {
            const std::string &cell = row[c];
            char *end = nullptr;
            double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(v))
                fail_input("external features row " + std::to_string(r) +
                           ": bad value '" + cell + "'");
            values.push_back(v);
        }
        ext.rows.emplace(*day, std::move(values));
    }
    return ext;
}

} // namespace chainsent
