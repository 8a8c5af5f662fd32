// Shared domain types and error taxonomy for the DER co-optimization toolkit.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace dercopt {

// ---------------------------------------------------------------------------
// Errors

struct MalformedSeries : std::runtime_error {
    explicit MalformedSeries(const std::string& what) : std::runtime_error(what) {}
};

struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateDistribution : std::runtime_error {
    explicit DegenerateDistribution(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateParams : std::runtime_error {
    explicit DegenerateParams(const std::string& what) : std::runtime_error(what) {}
};

struct ModelError : std::runtime_error {
    explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Calendar tags

enum class Season { Spring = 0, Summer = 1, Autumn = 2, Winter = 3 };
enum class DayType { Weekday = 0, Weekend = 1 };

inline const char* to_string(Season s) {
    switch (s) {
        case Season::Spring: return "spring";
        case Season::Summer: return "summer";
        case Season::Autumn: return "autumn";
        case Season::Winter: return "winter";
    }
    return "?";
}

inline const char* to_string(DayType d) {
    return d == DayType::Weekday ? "weekday" : "weekend";
}

// Mar-May spring, Jun-Aug summer, Sep-Nov autumn, Dec-Feb winter.
inline Season season_from_month(int month) {
    if (month >= 3 && month <= 5) return Season::Spring;
    if (month >= 6 && month <= 8) return Season::Summer;
    if (month >= 9 && month <= 11) return Season::Autumn;
    return Season::Winter;
}

// (season, day_type) key into the 8-profile representative set.
struct ModelKey {
    Season season;
    DayType day_type;

    int index() const { return static_cast<int>(season) * 2 + static_cast<int>(day_type); }
    bool operator==(const ModelKey&) const = default;
};

inline std::vector<ModelKey> all_model_keys() {
    std::vector<ModelKey> keys;
    for (int s = 0; s < 4; ++s)
        for (int d = 0; d < 2; ++d)
            keys.push_back({static_cast<Season>(s), static_cast<DayType>(d)});
    return keys;
}

inline std::string to_string(const ModelKey& k) {
    return std::string(to_string(k.season)) + "_" + to_string(k.day_type);
}

// ---------------------------------------------------------------------------
// DayProfile: one sampled day of power (MW) or wind speed (m/s) etc.

struct DayProfile {
    Season season = Season::Spring;
    DayType day_type = DayType::Weekday;
    double interval_hours = 0.25;
    std::vector<double> samples;
    std::string date;  // ISO date of origin, empty for synthetic days

    ModelKey key() const { return {season, day_type}; }
    std::size_t size() const { return samples.size(); }

    // N_S * T must cover exactly one day.
    bool spans_one_day() const {
        return std::abs(static_cast<double>(samples.size()) * interval_hours - 24.0) < 1e-9;
    }
};

inline void require_same_shape(const DayProfile& a, const DayProfile& b, const char* ctx) {
    if (a.samples.size() != b.samples.size() || std::abs(a.interval_hours - b.interval_hours) > 1e-12)
        throw ShapeError(std::string(ctx) + ": profiles disagree in length or interval");
}

}  // namespace dercopt
