#include "ml/experiments.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "ml/selection.hpp"
#include "util/csv.hpp"
#include "util/logging.hpp"
#include "util/status.hpp"
#include "util/textutil.hpp"

namespace chainsent {

std::vector<ReportRow> baseline_rows(const std::vector<int> &train_labels,
                                     const std::vector<int> &test_labels) {
    if (train_labels.empty() || test_labels.empty())
        fail_input("baselines need nonempty label lists");

    ReportRow coin;
    coin.model = "Random Guess";
    coin.config = "-";
    coin.accuracy_only = true;
    coin.metrics.accuracy = 0.5;
    coin.selected_features = "-";
    coin.best_params = "-";

    std::size_t ones = 0;
    for (int v : train_labels)
        ones += (v != 0);
    int majority = ones > train_labels.size() - ones ? 1 : 0;

    ReportRow lucky;
    lucky.model = "Lucky Guess";
    lucky.config = "-";
    lucky.selected_features = "-";
    lucky.best_params = "-";
    std::vector<int> pred(test_labels.size(), majority);
    lucky.metrics = evaluate(pred, test_labels);

    return {coin, lucky};
}

namespace {

std::vector<std::string> present_columns(const std::vector<std::string> &wanted,
                                         const std::vector<std::string> &columns) {
    std::vector<std::string> out;
    for (const auto &name : wanted)
        if (std::find(columns.begin(), columns.end(), name) != columns.end())
            out.push_back(name);
    return out;
}

} // namespace

std::vector<std::pair<std::string, std::vector<std::string>>>
experiment_configs(const std::vector<std::string> &columns) {
    const std::vector<std::string> price_names = {"price_move_today",
                                                  "log_return_today"};
    const std::vector<std::string> sent_names = {"compound", "neg", "neu",
                                                 "polarity", "subjectivity"};
    const std::vector<std::string> raw_names = {"raw_compound", "raw_neg",
                                                "raw_neu", "raw_polarity",
                                                "raw_subjectivity"};
    const std::vector<std::string> exported_only = {"pos", "raw_pos"};

    auto price = present_columns(price_names, columns);
    auto sent = present_columns(sent_names, columns);
    auto raw = present_columns(raw_names, columns);

    // anything beyond the built-in columns is an external feature and joins
    // the (non-raw) sentiment sets
    for (const auto &col : columns) {
        if (std::find(price_names.begin(), price_names.end(), col) != price_names.end())
            continue;
        if (std::find(sent_names.begin(), sent_names.end(), col) != sent_names.end())
            continue;
        if (std::find(raw_names.begin(), raw_names.end(), col) != raw_names.end())
            continue;
        if (std::find(exported_only.begin(), exported_only.end(), col) !=
            exported_only.end())
            continue;
        sent.push_back(col);
    }

    auto concat = [](std::vector<std::string> a, const std::vector<std::string> &b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };

    std::vector<std::pair<std::string, std::vector<std::string>>> configs;
    if (!price.empty())
        configs.emplace_back("Price", price);
    if (!sent.empty()) {
        configs.emplace_back("Sentiment", sent);
        if (!price.empty())
            configs.emplace_back("Sentiment+Price", concat(sent, price));
    }
    if (!raw.empty()) {
        configs.emplace_back("Raw Sentiment", raw);
        if (!price.empty())
            configs.emplace_back("Raw Sentiment+Price", concat(raw, price));
    }
    return configs;
}

std::vector<ModelSpec> model_specs_from_config(const KvConfig &cfg) {
    std::vector<Family> families;
    if (auto listed = cfg.get("families")) {
        for (const auto &item : split_list(*listed)) {
            Family f = parse_family(item);
            if (std::find(families.begin(), families.end(), f) != families.end())
                fail_config("family '" + item + "' listed twice");
            families.push_back(f);
        }
        if (families.empty())
            fail_config("families list is empty");
    } else {
        families = family_order();
    }

    std::vector<ModelSpec> specs;
    for (Family f : families)
        specs.push_back(default_model_spec(f));

    for (const auto &[key, value] : cfg.entries()) {
        if (key.rfind("grid.", 0) != 0)
            continue;
        std::size_t second_dot = key.find('.', 5);
        if (second_dot == std::string::npos || second_dot + 1 >= key.size())
            fail_config("malformed grid key '" + key + "'");
        Family fam = parse_family(key.substr(5, second_dot - 5));
        std::string param = key.substr(second_dot + 1);

        auto spec_it = std::find_if(specs.begin(), specs.end(),
                                    [&](const ModelSpec &s) { return s.family == fam; });
        if (spec_it == specs.end())
            continue; // grid for a family not in the suite

        const std::string subset_key =
            fam == Family::Knnc ? "selector_k" : "rfe";
        if (param == subset_key) {
            spec_it->feature_counts.clear();
            if (trim(value) == "none")
                continue;
            for (const auto &item : split_list(value)) {
                char *end = nullptr;
                long long v = std::strtoll(item.c_str(), &end, 10);
                if (item.empty() || end != item.c_str() + item.size() || v < 1)
                    fail_config("grid key '" + key + "': bad subset size '" +
                                item + "'");
                spec_it->feature_counts.push_back(static_cast<std::size_t>(v));
            }
            if (spec_it->feature_counts.empty())
                fail_config("grid key '" + key + "': empty list");
            continue;
        }
        if (param == "rfe" || param == "selector_k")
            fail_config("grid key '" + key + "': " + family_name(fam) +
                        " uses " + subset_key);

        auto row = std::find_if(
            spec_it->grid.begin(), spec_it->grid.end(),
            [&](const auto &entry) { return entry.first == param; });
        if (row == spec_it->grid.end())
            fail_config("unknown grid parameter '" + param + "' for " +
                        family_name(fam));
        auto values = split_list(value);
        if (values.empty())
            fail_config("grid key '" + key + "': empty list");
        row->second = values;
    }
    return specs;
}

Report run_experiments(const Dataset &full, const std::vector<ModelSpec> &specs,
                       std::uint64_t seed) {
    if (specs.empty())
        fail_config("no model families configured");
    auto [train, test] = chrono_split(full);

    Report report;
    report.rows = baseline_rows(train.y, test.y);

    auto folds = ts_cv_folds(train.y.size(), 5);
    auto configs = experiment_configs(full.features);
    if (configs.empty())
        fail_input("dataset has no usable feature columns");

    for (const auto &[label, names] : configs) {
        std::vector<std::size_t> cols;
        for (const auto &name : names) {
            auto it = std::find(full.features.begin(), full.features.end(), name);
            cols.push_back(static_cast<std::size_t>(it - full.features.begin()));
        }
        Matrix x_tr = subset_columns(train.x, cols);
        Matrix x_te = subset_columns(test.x, cols);

        bool have_winner = false;
        SearchResult winner;
        Family winner_family = Family::Lrc;
        for (const ModelSpec &spec : specs) {
            try {
                SearchResult result = grid_search(
                    spec, x_tr, train.y, folds,
                    derive_seed(seed, label + "|" + family_name(spec.family)));
                if (!have_winner || result.cv_accuracy > winner.cv_accuracy) {
                    have_winner = true;
                    winner = std::move(result);
                    winner_family = spec.family;
                }
            } catch (const Error &e) {
                log_warn("search failed for " + family_name(spec.family) +
                         " on " + label + ": " + e.what());
            }
        }

        ReportRow row;
        row.config = label;
        if (!have_winner) {
            row.model = "-";
            row.failed = true;
            row.selected_features = "-";
            row.best_params = "-";
        } else {
            row.model = family_name(winner_family) + "+" + label;
            auto pred = winner.model->predict(subset_columns(x_te, winner.features));
            row.metrics = evaluate(pred, test.y);
            std::string feats;
            for (std::size_t i : winner.features) {
                if (!feats.empty())
                    feats += ';';
                feats += names[i];
            }
            row.selected_features = feats.empty() ? "-" : feats;
            std::string params;
            for (const auto &[k, v] : winner.params) {
                if (!params.empty())
                    params += ';';
                params += k + "=" + v;
            }
            row.best_params = params.empty() ? "-" : params;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

namespace {

std::string metric_cell(const ReportRow &row, double value, bool accuracy) {
    if (row.failed)
        return "failed";
    if (!accuracy && row.accuracy_only)
        return "-";
    return format_double(value);
}

} // namespace

std::string report_csv(const Report &r) {
    std::string out = csv_row({"model", "config", "accuracy", "precision",
                               "recall", "f1", "selected_features",
                               "best_params"});
    for (const auto &row : r.rows)
        out += csv_row({row.model, row.config,
                        metric_cell(row, row.metrics.accuracy, true),
                        metric_cell(row, row.metrics.precision, false),
                        metric_cell(row, row.metrics.recall, false),
                        metric_cell(row, row.metrics.f1, false),
                        row.selected_features, row.best_params});
    return out;
}

std::string report_json(const Report &r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : r.rows) {
        nlohmann::json j;
        j["model"] = row.model;
        j["config"] = row.config;
        if (row.failed) {
            j["accuracy"] = "failed";
            j["precision"] = "failed";
            j["recall"] = "failed";
            j["f1"] = "failed";
        } else {
            j["accuracy"] = row.metrics.accuracy;
            if (row.accuracy_only) {
                j["precision"] = "-";
                j["recall"] = "-";
                j["f1"] = "-";
            } else {
                j["precision"] = row.metrics.precision;
                j["recall"] = row.metrics.recall;
                j["f1"] = row.metrics.f1;
            }
        }
        j["selected_features"] = row.selected_features;
        j["best_params"] = row.best_params;
        rows.push_back(std::move(j));
    }
    nlohmann::json doc;
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

Report report_from_csv(const std::string &path) {
    auto rows = csv_read_file(path);
    if (rows.empty())
        fail_input("report file " + path + " is empty");
    const std::vector<std::string> expected = {"model", "config", "accuracy",
                                               "precision", "recall", "f1",
                                               "selected_features", "best_params"};
    if (rows[0] != expected)
        fail_input("report file " + path + ": unexpected header");

    Report report;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto &cells = rows[i];
        if (cells.size() == 1 && cells[0].empty())
            continue;
        if (cells.size() != expected.size())
            fail_input("report row " + std::to_string(i) + ": wrong field count");
        ReportRow row;
        row.model = cells[0];
        row.config = cells[1];
        row.selected_features = cells[6];
        row.best_params = cells[7];
        auto parse_metric = [&](const std::string &cell, double &slot) {
            char *end = nullptr;
            double v = std::strtod(cell.c_str(), &end);
            if (cell.empty() || end != cell.c_str() + cell.size())
                fail_input("report row " + std::to_string(i) + ": bad metric '" +
                           cell + "'");
            slot = v;
        };
        if (cells[2] == "failed") {
            row.failed = true;
        } else {
            parse_metric(cells[2], row.metrics.accuracy);
            if (cells[3] == "-") {
                row.accuracy_only = true;
            } else {
                parse_metric(cells[3], row.metrics.precision);
                parse_metric(cells[4], row.metrics.recall);
                parse_metric(cells[5], row.metrics.f1);
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string report_table(const Report &r) {
    auto pct = [](double v, bool two_decimals) {
        char buf[32];
        std::snprintf(buf, sizeof buf, two_decimals ? "%.2f%%" : "%.0f%%",
                      v * 100.0);
        return std::string(buf);
    };

    std::vector<std::vector<std::string>> cells;
    cells.push_back({"Model", "Config", "Accuracy", "Precision", "Recall",
                     "F1-Score"});
    for (const auto &row : r.rows) {
        std::vector<std::string> line = {row.model, row.config};
        if (row.failed) {
            line.insert(line.end(), {"failed", "failed", "failed", "failed"});
        } else if (row.accuracy_only) {
            line.push_back(pct(row.metrics.accuracy, true));
            line.insert(line.end(), {"-", "-", "-"});
        } else {
            line.push_back(pct(row.metrics.accuracy, true));
            line.push_back(pct(row.metrics.precision, false));
            line.push_back(pct(row.metrics.recall, false));
            line.push_back(pct(row.metrics.f1, false));
        }
        cells.push_back(std::move(line));
    }

    std::vector<std::size_t> width(cells[0].size(), 0);
    for (const auto &line : cells)
        for (std::size_t c = 0; c < line.size(); ++c)
            width[c] = std::max(width[c], line[c].size());

    std::string out;
    for (std::size_t li = 0; li < cells.size(); ++li) {
        std::string line;
        for (std::size_t c = 0; c < cells[li].size(); ++c) {
            std::string cell = cells[li][c];
            cell.resize(width[c], ' ');
            if (c)
                line += "  ";
            line += cell;
        }
        while (!line.empty() && line.back() == ' ')
            line.pop_back();
        out += line + "\n";
        if (li == 0) {
            std::string rule;
            for (std::size_t c = 0; c < width.size(); ++c) {
                if (c)
                    rule += "  ";
                rule += std::string(width[c], '-');
            }
            out += rule + "\n";
        }
    }
    return out;
}

} // namespace chainsent
