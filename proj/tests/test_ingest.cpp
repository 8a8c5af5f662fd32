#include <catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "dercopt/csv.hpp"

using namespace dercopt;

namespace {

std::string day_csv(const std::string& date, int rows, double value, int step_minutes = 15,
                    const std::string& nan_at_row = "") {
    std::ostringstream out;
    out << "timestamp,value\n";
    for (int i = 0; i < rows; ++i) {
        int minutes = i * step_minutes;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%sT%02d:%02d:00", date.c_str(), minutes / 60, minutes % 60);
        out << buf << ',';
        if (!nan_at_row.empty() && std::to_string(i + 1) == nan_at_row)
            out << "NaN";
        else
            out << value;
        out << '\n';
    }
    return out.str();
}

}  // namespace

TEST_CASE("ingest accepts a complete constant day") {
    std::istringstream in(day_csv("2024-07-01", 96, 3.0));
    auto days = ingest_series(in, 0.25);
    REQUIRE(days.size() == 1);
    CHECK(days[0].samples.size() == 96);
    for (double v : days[0].samples) CHECK(v == 3.0);
    CHECK(days[0].season == Season::Summer);
    CHECK(days[0].day_type == DayType::Weekday);  // 2024-07-01 is a Monday
    CHECK(days[0].date == "2024-07-01");
    CHECK(days[0].spans_one_day());
}

TEST_CASE("ingest rejects an incomplete day") {
    std::istringstream in(day_csv("2024-07-01", 95, 3.0));
    CHECK_THROWS_AS(ingest_series(in, 0.25), MalformedSeries);
}

TEST_CASE("ingest rejects NaN with the row index") {
    std::istringstream in(day_csv("2024-07-01", 96, 3.0, 15, "17"));
    CHECK_THROWS_WITH(ingest_series(in, 0.25), Catch::Matchers::ContainsSubstring("row 17"));
}

TEST_CASE("ingest rejects non-uniform spacing") {
    std::string csv = "timestamp,value\n"
                      "2024-07-01T00:00:00,1.0\n"
                      "2024-07-01T00:15:00,1.0\n"
                      "2024-07-01T00:45:00,1.0\n";
    std::istringstream in(csv);
    CHECK_THROWS_AS(ingest_series(in, 0.25), MalformedSeries);
}

TEST_CASE("ingest groups by calendar day and tags season and day type") {
    std::string csv = day_csv("2024-01-05", 96, 1.0);  // Friday, winter
    csv += day_csv("2024-01-06", 96, 2.0).substr(16);   // Saturday, strip header
    std::istringstream in(csv);
    auto days = ingest_series(in, 0.25);
    REQUIRE(days.size() == 2);
    CHECK(days[0].season == Season::Winter);
    CHECK(days[0].day_type == DayType::Weekday);
    CHECK(days[1].day_type == DayType::Weekend);
    CHECK(days[1].samples[0] == 2.0);
}

TEST_CASE("ingest requires the header") {
    std::istringstream in("2024-07-01T00:00:00,1.0\n");
    CHECK_THROWS_AS(ingest_series(in, 0.25), MalformedSeries);
}

TEST_CASE("season mapping follows the month") {
    CHECK(season_from_month(3) == Season::Spring);
    CHECK(season_from_month(5) == Season::Spring);
    CHECK(season_from_month(6) == Season::Summer);
    CHECK(season_from_month(8) == Season::Summer);
    CHECK(season_from_month(9) == Season::Autumn);
    CHECK(season_from_month(11) == Season::Autumn);
    CHECK(season_from_month(12) == Season::Winter);
    CHECK(season_from_month(2) == Season::Winter);
}
