#include "util/datetime.hpp"

#include <cstdio>

namespace chainsent {

namespace {

// Howard Hinnant's civil-from-days / days-from-civil algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int *y, unsigned *m, unsigned *d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    *d = doy - (153 * mp + 2) / 5 + 1;
    *m = mp + (mp < 10 ? 3 : -9);
    *y = static_cast<int>(yy + (*m <= 2));
}

bool parse_int(std::string_view s, std::size_t pos, std::size_t len, int *out) {
    int v = 0;
    if (pos + len > s.size()) return false;
    for (std::size_t i = 0; i < len; ++i) {
        char c = s[pos + i];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    *out = v;
    return true;
}

bool valid_ymd(int y, int m, int d) {
    if (m < 1 || m > 12 || d < 1) return false;
    static const int mdays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int dim = mdays[m - 1];
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (m == 2 && leap) dim = 29;
    return d <= dim;
}

} // namespace

std::optional<EpochDay> parse_date(std::string_view s) {
    int y, m, d;
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    if (!parse_int(s, 0, 4, &y) || !parse_int(s, 5, 2, &m) || !parse_int(s, 8, 2, &d))
        return std::nullopt;
    if (!valid_ymd(y, m, d)) return std::nullopt;
    return static_cast<EpochDay>(days_from_civil(y, static_cast<unsigned>(m),
                                                 static_cast<unsigned>(d)));
}

std::optional<EpochSeconds> parse_iso8601_utc(std::string_view s) {
    // strip an explicit UTC suffix
    if (!s.empty() && (s.back() == 'Z' || s.back() == 'z'))
        s.remove_suffix(1);
    else if (s.size() > 6 && (s.substr(s.size() - 6) == "+00:00"))
        s.remove_suffix(6);
    if (s.size() != 19) return std::nullopt;
    if (s[10] != 'T' && s[10] != ' ') return std::nullopt;
    if (s[13] != ':' || s[16] != ':') return std::nullopt;
    auto day = parse_date(s.substr(0, 10));
    if (!day) return std::nullopt;
    int hh, mm, ss;
    if (!parse_int(s, 11, 2, &hh) || !parse_int(s, 14, 2, &mm) ||
        !parse_int(s, 17, 2, &ss))
        return std::nullopt;
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt; // allow leap second
    return static_cast<EpochSeconds>(*day) * 86400 + hh * 3600 + mm * 60 + ss;
}

EpochDay day_of(EpochSeconds t) {
    std::int64_t d = t / 86400;
    if (t < 0 && t % 86400 != 0) --d;
    return static_cast<EpochDay>(d);
}

std::string format_date(EpochDay day) {
    int y;
    unsigned m, d;
    civil_from_days(day, &y, &m, &d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
    return buf;
}

std::string format_iso8601_utc(EpochSeconds t) {
    EpochDay day = day_of(t);
    std::int64_t rem = t - static_cast<std::int64_t>(day) * 86400;
    char buf[24];
    std::snprintf(buf, sizeof buf, "%sT%02d:%02d:%02dZ",
                  format_date(day).c_str(), static_cast<int>(rem / 3600),
                  static_cast<int>(rem % 3600 / 60), static_cast<int>(rem % 60));
    return buf;
}

} // namespace chainsent
