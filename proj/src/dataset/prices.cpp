#include "dataset/prices.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "util/csv.hpp"
#include "util/status.hpp"

namespace chainsent {

PriceSeries load_prices(const std::string &path) {
    auto rows = csv_read_file(path);
    if (rows.empty())
        fail_input("price file " + path + " is empty");
    const auto &header = rows[0];
    if (header.size() < 2 || header[0] != "Date" || header[1] != "Close")
        fail_input("price file " + path + ": header must be Date,Close");

    PriceSeries series;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto &row = rows[r];
        if (row.size() == 1 && row[0].empty())
            continue;
        if (row.size() < 2)
            fail_input("price row " + std::to_string(r) + ": expected Date,Close");
        auto day = parse_date(row[0]);
        if (!day)
            fail_input("price row " + std::to_string(r) + ": bad date '" + row[0] + "'");
        const std::string &cell = row[1];
        char *end = nullptr;
        double close = std::strtod(cell.c_str(), &end);
        if (cell.empty() || end != cell.c_str() + cell.size() || !std::isfinite(close))
            fail_input("price row " + std::to_string(r) + ": bad close '" + cell + "'");
        if (close <= 0.0)
            fail_input("price row " + std::to_string(r) + ": close must be positive");
        series.push_back({*day, close});
    }

    std::sort(series.begin(), series.end(),
              [](const PricePoint &a, const PricePoint &b) { return a.date < b.date; });
    for (std::size_t i = 1; i < series.size(); ++i)
        if (series[i].date == series[i - 1].date)
            fail_input("price file " + path + ": duplicate date " +
                       format_date(series[i].date));
    return series;
}

std::vector<std::pair<EpochDay, int>> make_labels(const PriceSeries &series) {
    if (series.size() < 2)
        fail_input("label generation needs at least two price rows");
    std::vector<std::pair<EpochDay, int>> labels;
    for (std::size_t i = 0; i + 1 < series.size(); ++i)
        labels.emplace_back(series[i].date,
                            series[i + 1].close > series[i].close ? 1 : 0);
    return labels;
}

std::vector<std::pair<EpochDay, double>> log_returns(const PriceSeries &series) {
    if (series.size() < 2)
        fail_input("log returns need at least two price rows");
    std::vector<std::pair<EpochDay, double>> out;
    for (std::size_t i = 1; i < series.size(); ++i)
        out.emplace_back(series[i].date,
                         std::log(series[i].close / series[i - 1].close));
    return out;
}

std::pair<double, double> class_balance(const std::vector<int> &labels) {
    if (labels.empty())
        fail_input("class balance of an empty label list");
    double ones = 0.0;
    for (int y : labels)
        ones += (y != 0) ? 1.0 : 0.0;
    double n = static_cast<double>(labels.size());
    return {(n - ones) / n, ones / n};
}

} // namespace chainsent
