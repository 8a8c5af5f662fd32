// CSV ingestion of historical time series (header: timestamp,value) and
// small writers for split/trace exports.
#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dercopt/common.hpp"

namespace dercopt {

struct CivilDate {
    int year = 1970;
    int month = 1;
    int day = 1;
    bool operator<(const CivilDate& o) const {
        if (year != o.year) return year < o.year;
        if (month != o.month) return month < o.month;
        return day < o.day;
    }
    bool operator==(const CivilDate&) const = default;
};

// Days since 1970-01-01 (Howard Hinnant's civil-days algorithm).
inline int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

// 0 = Monday ... 6 = Sunday
inline int weekday_of(const CivilDate& cd) {
    int64_t days = days_from_civil(cd.year, cd.month, cd.day);
    return static_cast<int>(((days % 7) + 7 + 3) % 7);  // 1970-01-01 was a Thursday
}

inline DayType day_type_of(const CivilDate& cd) {
    return weekday_of(cd) >= 5 ? DayType::Weekend : DayType::Weekday;
}

struct Timestamp {
    CivilDate date;
    int64_t second_of_day = 0;

    int64_t epoch_seconds() const {
        return days_from_civil(date.year, date.month, date.day) * 86400 + second_of_day;
    }
};

// Accepts "YYYY-MM-DDTHH:MM[:SS]" or with a space separator.
inline Timestamp parse_timestamp(const std::string& text, std::size_t row) {
    auto fail = [&] {
        throw MalformedSeries("row " + std::to_string(row) + ": bad timestamp '" + text + "'");
    };
    Timestamp ts;
    int hh = 0, mm = 0, ss = 0;
    if (text.size() < 16) fail();
    if (text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != ' ') || text[13] != ':')
        fail();
    auto num = [&](std::size_t pos, std::size_t len) {
        int v = 0;
        auto res = std::from_chars(text.data() + pos, text.data() + pos + len, v);
        if (res.ec != std::errc() || res.ptr != text.data() + pos + len) fail();
        return v;
    };
    ts.date.year = num(0, 4);
    ts.date.month = num(5, 2);
    ts.date.day = num(8, 2);
    hh = num(11, 2);
    mm = num(14, 2);
    if (text.size() >= 19) {
        if (text[16] != ':') fail();
        ss = num(17, 2);
    }
    if (ts.date.month < 1 || ts.date.month > 12 || ts.date.day < 1 || ts.date.day > 31) fail();
    if (hh > 23 || mm > 59 || ss > 59) fail();
    ts.second_of_day = hh * 3600 + mm * 60 + ss;
    return ts;
}

namespace detail {

inline double parse_value(const std::string& text, std::size_t row) {
    double v = 0.0;
    const char* b = text.data();
    const char* e = b + text.size();
    while (b < e && (*b == ' ' || *b == '\t')) ++b;
    auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e || !std::isfinite(v))
        throw MalformedSeries("row " + std::to_string(row) + ": invalid value '" + text + "'");
    return v;
}

}  // namespace detail

// Reads a timestamp,value series and groups it into complete calendar days.
// Spacing must be uniform and match interval_hours; incomplete days and
// non-finite values are rejected with the offending row index.
inline std::vector<DayProfile> ingest_series(std::istream& in, double interval_hours) {
    const double slots_exact = 24.0 / interval_hours;
    const auto n_slots = static_cast<std::size_t>(slots_exact + 0.5);
    if (std::abs(slots_exact - static_cast<double>(n_slots)) > 1e-9 || n_slots < 2)
        throw MalformedSeries("interval_hours does not divide a day into whole slots");
    const int64_t step = static_cast<int64_t>(interval_hours * 3600.0 + 0.5);

    std::string line;
    std::size_t row = 0;
    if (!std::getline(in, line)) throw MalformedSeries("empty input");
    // header row is mandatory
    if (line.find("timestamp") == std::string::npos)
        throw MalformedSeries("missing 'timestamp,value' header");

    std::vector<std::pair<Timestamp, double>> rows;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos)
            throw MalformedSeries("row " + std::to_string(row) + ": expected 'timestamp,value'");
        Timestamp ts = parse_timestamp(line.substr(0, comma), row);
        double v = detail::parse_value(line.substr(comma + 1), row);
        if (!rows.empty()) {
            int64_t gap = ts.epoch_seconds() - rows.back().first.epoch_seconds();
            if (gap != step)
                throw MalformedSeries("row " + std::to_string(row) + ": non-uniform spacing (" +
                                      std::to_string(gap) + "s, expected " + std::to_string(step) + "s)");
        }
        rows.emplace_back(ts, v);
    }
    if (rows.empty()) throw MalformedSeries("no data rows");

    std::map<CivilDate, std::vector<double>> by_day;
    for (auto& [ts, v] : rows) by_day[ts.date].push_back(v);

    std::vector<DayProfile> days;
    for (auto& [date, samples] : by_day) {
        if (samples.size() != n_slots)
            throw MalformedSeries("day " + std::to_string(date.year) + "-" + std::to_string(date.month) +
                                  "-" + std::to_string(date.day) + " has " + std::to_string(samples.size()) +
                                  " samples, expected " + std::to_string(n_slots));
        DayProfile p;
        p.season = season_from_month(date.month);
        p.day_type = day_type_of(date);
        p.interval_hours = interval_hours;
        p.samples = std::move(samples);
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", date.year, date.month, date.day);
        p.date = buf;
        days.push_back(std::move(p));
    }
    return days;
}

inline std::vector<DayProfile> ingest_series_file(const std::string& path, double interval_hours) {
    std::ifstream f(path);
    if (!f) throw MalformedSeries("cannot open " + path);
    return ingest_series(f, interval_hours);
}

// slot,net,chp,bess,trace rows; trace is the end-of-slot stored-energy delta.
inline std::string split_series_csv(const std::vector<double>& net, const std::vector<double>& chp,
                                    const std::vector<double>& bess, const std::vector<double>& trace) {
    std::ostringstream out;
    out.precision(10);
    out << "slot,net,chp,bess,trace\n";
    for (std::size_t k = 0; k < net.size(); ++k) {
        double tr = k + 1 < trace.size() ? trace[k + 1] : 0.0;
        out << k << ',' << net[k] << ',' << chp[k] << ',' << bess[k] << ',' << tr << '\n';
    }
    return out.str();
}

}  // namespace dercopt
