#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "dercopt/common.hpp"

namespace testutil {

// Composite Simpson quadrature, n must be even.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

inline dercopt::DayProfile make_day(std::vector<double> samples, double interval = 0.25,
                                    dercopt::Season s = dercopt::Season::Summer,
                                    dercopt::DayType d = dercopt::DayType::Weekday) {
    dercopt::DayProfile p;
    p.season = s;
    p.day_type = d;
    p.interval_hours = interval;
    p.samples = std::move(samples);
    return p;
}

inline dercopt::DayProfile random_day(std::mt19937_64& rng, std::size_t n = 96, double lo = 0.0,
                                      double hi = 5.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> s(n);
    for (auto& v : s) v = u(rng);
    return make_day(std::move(s), 24.0 / static_cast<double>(n));
}

}  // namespace testutil
