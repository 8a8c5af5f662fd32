// Stochastic models of load, PV and wind: per-slot fits from history,
// probability densities, representative-day sampling and net-load assembly.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "dercopt/common.hpp"

namespace dercopt {

inline constexpr double kPi = 3.14159265358979323846;

// ---------------------------------------------------------------------------
// Model slots

struct NormalSlot {
    double mean = 0.0;      // MW
    double variance = 0.0;  // MW^2; 0 marks a deterministic slot
    bool deterministic() const { return variance <= 0.0; }
};

struct BetaSlot {
    double a = 1.0;
    double b = 1.0;
    bool degenerate = false;   // zero-variance history
    double det_value = 0.0;    // normalized value used when degenerate
};

struct WeibullSlot {
    double scale = 1.0;  // tau, m/s
    double shape = 1.0;  // K
    bool degenerate = false;
    double det_speed = 0.0;  // m/s
};

struct TurbineCurve {
    double v_in = 3.0;     // m/s
    double v_rated = 12.0;
    double v_out = 25.0;
    double p_rated = 1.0;  // MW
};

struct NormalLoadModel {
    std::vector<NormalSlot> slots;
};

struct BetaPvModel {
    std::vector<BetaSlot> slots;
    double p_max = 1.0;  // MW at full normalized output
};

struct WeibullWindModel {
    std::vector<WeibullSlot> slots;
    TurbineCurve turbine;
};

struct DayModels {
    NormalLoadModel load;
    BetaPvModel pv;
    WeibullWindModel wind;
};

// One (load, pv, wind) model triple per (season, day_type) key.
struct StochasticModelSet {
    std::array<DayModels, 8> by_key;
    double interval_hours = 0.25;
    std::size_t n_slots = 96;

    const DayModels& at(const ModelKey& k) const { return by_key[static_cast<std::size_t>(k.index())]; }
    DayModels& at(const ModelKey& k) { return by_key[static_cast<std::size_t>(k.index())]; }
};

// ---------------------------------------------------------------------------
// Moment fits

namespace detail {

inline std::pair<double, double> mean_and_sample_variance(std::span<const double> xs) {
    double m = 0.0;
    for (double x : xs) m += x;
    m /= static_cast<double>(xs.size());
    double v = 0.0;
    for (double x : xs) v += (x - m) * (x - m);
    v = xs.size() > 1 ? v / static_cast<double>(xs.size() - 1) : 0.0;
    return {m, v};
}

// Gamma(1 + p/K) via lgamma, used by the Weibull moment equations.
inline double weibull_moment_ratio(double k) {
    // Gamma(1+2/K) / Gamma(1+1/K)^2 - 1  ==  squared coefficient of variation
    return std::exp(std::lgamma(1.0 + 2.0 / k) - 2.0 * std::lgamma(1.0 + 1.0 / k)) - 1.0;
}

}  // namespace detail

// Solves the Weibull coefficient-of-variation equation for the shape K by
// Newton iteration with a bisection fallback on K in [0.1, 20].
inline double fit_weibull_shape(double cv_squared, double tol = 1e-9) {
    const double lo_k = 0.1, hi_k = 20.0;
    double f_lo = detail::weibull_moment_ratio(lo_k) - cv_squared;
    double f_hi = detail::weibull_moment_ratio(hi_k) - cv_squared;
    // moment ratio is decreasing in K; clamp out-of-range targets to the bracket
    if (f_lo <= 0.0) return lo_k;
    if (f_hi >= 0.0) return hi_k;

    double k = 1.0;
    for (int it = 0; it < 100; ++it) {
        double f = detail::weibull_moment_ratio(k) - cv_squared;
        if (std::abs(f) < tol) return k;
        double h = std::max(1e-6, 1e-7 * k);
        double df = (detail::weibull_moment_ratio(k + h) - detail::weibull_moment_ratio(k - h)) / (2.0 * h);
        double next = k - f / df;
        if (!(next > lo_k && next < hi_k)) break;  // fall through to bisection
        if (std::abs(next - k) < tol * std::max(1.0, k)) return next;
        k = next;
    }
    double lo = lo_k, hi = hi_k;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double f = detail::weibull_moment_ratio(mid) - cv_squared;
        if (std::abs(f) < tol || hi - lo < tol) return mid;
        if (f > 0.0)
            lo = mid;  // ratio too large -> K too small
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline NormalSlot fit_normal_slot(std::span<const double> xs) {
    auto [m, v] = detail::mean_and_sample_variance(xs);
    return {m, v};
}

// Moment-matched Beta on values normalized to [0, 1].
inline BetaSlot fit_beta_slot(std::span<const double> xs, double x_max) {
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = std::clamp(xs[i] / x_max, 0.0, 1.0);
    auto [m, v] = detail::mean_and_sample_variance(ys);
    BetaSlot slot;
    if (v <= 1e-14) {
        slot.degenerate = true;
        slot.det_value = m;
        return slot;
    }
    double c = m * (1.0 - m) / v - 1.0;
    slot.a = std::max(m * c, 1e-6);
    slot.b = std::max((1.0 - m) * c, 1e-6);
    return slot;
}

inline WeibullSlot fit_weibull_slot(std::span<const double> speeds) {
    auto [m, v] = detail::mean_and_sample_variance(speeds);
    WeibullSlot slot;
    if (v <= 1e-14 || m <= 0.0) {
        slot.degenerate = true;
        slot.det_speed = std::max(m, 0.0);
        return slot;
    }
    double k = fit_weibull_shape(v / (m * m));
    slot.shape = k;
    slot.scale = m / std::exp(std::lgamma(1.0 + 1.0 / k));
    return slot;
}

struct HistoryBundle {
    std::vector<DayProfile> load;        // MW
    std::vector<DayProfile> irradiance;  // source units, normalized by irradiance_max
    std::vector<DayProfile> wind_speed;  // m/s
};

namespace detail {

inline std::map<int, std::vector<const DayProfile*>> group_by_key(const std::vector<DayProfile>& days) {
    std::map<int, std::vector<const DayProfile*>> g;
    for (const auto& d : days) g[d.key().index()].push_back(&d);
    return g;
}

// slot-major view over a set of history days
inline std::vector<double> slot_samples(const std::vector<const DayProfile*>& days, std::size_t slot) {
    std::vector<double> xs;
    xs.reserve(days.size());
    for (const auto* d : days) xs.push_back(d->samples[slot]);
    return xs;
}

}  // namespace detail

// Fits one model triple per (season, day_type) key. Requires at least two
// history days per key per source.
inline StochasticModelSet fit_models(const HistoryBundle& history, double irradiance_max,
                                     const TurbineCurve& turbine) {
    if (history.load.empty()) throw ModelError("fit_models: empty load history");
    if (irradiance_max <= 0.0) throw ModelError("fit_models: irradiance_max must be > 0");

    StochasticModelSet set;
    set.interval_hours = history.load.front().interval_hours;
    set.n_slots = history.load.front().samples.size();

    auto g_load = detail::group_by_key(history.load);
    auto g_irr = detail::group_by_key(history.irradiance);
    auto g_wind = detail::group_by_key(history.wind_speed);

    for (const auto& key : all_model_keys()) {
        const int idx = key.index();
        using Grouped = std::map<int, std::vector<const DayProfile*>>;
        for (auto [grp, name] : {std::pair<const Grouped*, const char*>{&g_load, "load"},
                                 {&g_irr, "irradiance"},
                                 {&g_wind, "wind"}}) {
            auto it = grp->find(idx);
            if (it == grp->end() || it->second.size() < 2)
                throw ModelError("fit_models: need >= 2 history days for " + std::string(name) + " at key " +
                                 to_string(key));
            for (const auto* d : it->second)
                if (d->samples.size() != set.n_slots)
                    throw ShapeError("fit_models: inconsistent slot count in " + std::string(name) + " history");
        }

        DayModels& m = set.at(key);
        const auto& ld = g_load[idx];
        const auto& ir = g_irr[idx];
        const auto& wd = g_wind[idx];
        m.load.slots.resize(set.n_slots);
        m.pv.slots.resize(set.n_slots);
        m.pv.p_max = 1.0;  // per-unit of nameplate; scaling happens in net_load
        m.wind.slots.resize(set.n_slots);
        m.wind.turbine = turbine;
        for (std::size_t s = 0; s < set.n_slots; ++s) {
            m.load.slots[s] = fit_normal_slot(detail::slot_samples(ld, s));
            m.pv.slots[s] = fit_beta_slot(detail::slot_samples(ir, s), irradiance_max);
            m.wind.slots[s] = fit_weibull_slot(detail::slot_samples(wd, s));
        }
    }
    return set;
}

// ---------------------------------------------------------------------------
// Densities

// Eq.-13 style normal density, per MW.
inline double normal_pdf(double x, const NormalSlot& slot) {
    if (slot.variance <= 0.0) throw DegenerateDistribution("normal_pdf: zero variance slot");
    const double d = x - slot.mean;
    return 1.0 / std::sqrt(2.0 * slot.variance * kPi) * std::exp(-d * d / (2.0 * slot.variance));
}

// Beta density over the normalized ratio p / p_max, divided by p_max so the
// result is a density over MW.
inline double pv_power_pdf(double p, const BetaSlot& slot, double p_max) {
    if (p < 0.0 || p > p_max) throw DomainError("pv_power_pdf: p outside [0, p_max]");
    if (slot.degenerate) throw DegenerateDistribution("pv_power_pdf: degenerate slot");
    const double y = p / p_max;
    const double log_coeff =
        std::lgamma(slot.a + slot.b) - std::lgamma(slot.a) - std::lgamma(slot.b);
    double log_core = 0.0;
    if (slot.a != 1.0) {
        if (y == 0.0) return slot.a > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
        log_core += (slot.a - 1.0) * std::log(y);
    }
    if (slot.b != 1.0) {
        if (y == 1.0) return slot.b > 1.0 ? 0.0 : std::numeric_limits<double>::infinity();
        log_core += (slot.b - 1.0) * std::log1p(-y);
    }
    return std::exp(log_coeff + log_core) / p_max;
}

inline double pv_power_pdf(double p, const BetaPvModel& model, std::size_t slot) {
    return pv_power_pdf(p, model.slots[slot], model.p_max);
}

// Piecewise-linear turbine curve: zero below cut-in and beyond cut-out,
// linear ramp to rated, flat at rated power in between.
inline double wind_power_curve(double v, const TurbineCurve& t) {
    if (v < t.v_in || v > t.v_out) return 0.0;
    if (v >= t.v_rated) return t.p_rated;
    return t.p_rated * (v - t.v_in) / (t.v_rated - t.v_in);
}

inline double weibull_cdf(double v, const WeibullSlot& slot) {
    if (v <= 0.0) return 0.0;
    return 1.0 - std::exp(-std::pow(v / slot.scale, slot.shape));
}

inline double weibull_pdf(double v, const WeibullSlot& slot) {
    if (v < 0.0) return 0.0;
    const double r = v / slot.scale;
    return slot.shape / slot.scale * std::pow(r, slot.shape - 1.0) * std::exp(-std::pow(r, slot.shape));
}

// Mixed wind-power density: point masses at 0 and at rated power plus a
// continuous part on (0, P_R).
struct WindPowerDensity {
    double continuous = 0.0;  // per MW, valid for 0 < p < P_R
    double atom_zero = 0.0;
    double atom_rated = 0.0;
};

inline WindPowerDensity wind_power_pdf(double p, const WeibullSlot& slot, const TurbineCurve& t) {
    if (p < 0.0 || p > t.p_rated) throw DomainError("wind_power_pdf: p outside [0, P_R]");
    if (slot.degenerate) throw DegenerateDistribution("wind_power_pdf: degenerate slot");
    WindPowerDensity d;
    d.atom_zero = 1.0 - (weibull_cdf(t.v_out, slot) - weibull_cdf(t.v_in, slot));
    d.atom_rated = weibull_cdf(t.v_out, slot) - weibull_cdf(t.v_rated, slot);
    if (p > 0.0 && p < t.p_rated) {
        const double w = t.v_in + (t.v_rated - t.v_in) * p / t.p_rated;
        d.continuous = (t.v_rated - t.v_in) / t.p_rated * weibull_pdf(w, slot);
    }
    return d;
}

// ---------------------------------------------------------------------------
// Sampling

// Draws one representative day per source. Load draws are truncated at zero
// (resampled up to 100 times, then clamped); PV and wind are bounded by
// construction. Deterministic for a given seed; degenerate slots do not
// consume randomness.
struct SampledDay {
    DayProfile load;
    DayProfile pv;    // per-unit of nameplate, in [0, p_max]
    DayProfile wind;  // per-unit of rated power, in [0, p_rated]
};

inline SampledDay sample_day(const StochasticModelSet& models, const ModelKey& key, std::uint64_t seed) {
    const DayModels& m = models.at(key);
    std::mt19937_64 rng(seed);

    SampledDay out;
    for (DayProfile* p : {&out.load, &out.pv, &out.wind}) {
        p->season = key.season;
        p->day_type = key.day_type;
        p->interval_hours = models.interval_hours;
        p->samples.resize(models.n_slots);
    }

    for (std::size_t s = 0; s < models.n_slots; ++s) {
        const auto& slot = m.load.slots[s];
        if (slot.deterministic()) {
            out.load.samples[s] = std::max(slot.mean, 0.0);
            continue;
        }
        std::normal_distribution<double> dist(slot.mean, std::sqrt(slot.variance));
        double draw = dist(rng);
        for (int attempt = 0; attempt < 100 && draw < 0.0; ++attempt) draw = dist(rng);
        out.load.samples[s] = std::max(draw, 0.0);
    }
    for (std::size_t s = 0; s < models.n_slots; ++s) {
        const auto& slot = m.pv.slots[s];
        if (slot.degenerate) {
            out.pv.samples[s] = slot.det_value * m.pv.p_max;
            continue;
        }
        std::gamma_distribution<double> ga(slot.a, 1.0), gb(slot.b, 1.0);
        double x = ga(rng), y = gb(rng);
        double ratio = x + y > 0.0 ? x / (x + y) : 0.0;
        out.pv.samples[s] = ratio * m.pv.p_max;
    }
    for (std::size_t s = 0; s < models.n_slots; ++s) {
        const auto& slot = m.wind.slots[s];
        double v;
        if (slot.degenerate) {
            v = slot.det_speed;
        } else {
            std::weibull_distribution<double> dist(slot.shape, slot.scale);
            v = dist(rng);
        }
        out.wind.samples[s] = wind_power_curve(v, m.wind.turbine);
    }
    return out;
}

// Expected day for a model triple; used for deterministic reporting.
inline double normal_slot_mean(const NormalSlot& s) { return std::max(s.mean, 0.0); }

// ---------------------------------------------------------------------------
// Net load (load minus scaled renewable output, sign preserved)

inline DayProfile net_load(const DayProfile& load, std::span<const DayProfile> renewables,
                           std::span<const double> nominal_capacities_mw) {
    if (renewables.size() != nominal_capacities_mw.size())
        throw ShapeError("net_load: one nominal capacity per renewable profile required");
    DayProfile out = load;
    for (std::size_t r = 0; r < renewables.size(); ++r) {
        require_same_shape(load, renewables[r], "net_load");
        for (std::size_t k = 0; k < out.samples.size(); ++k)
            out.samples[k] -= nominal_capacities_mw[r] * renewables[r].samples[k];
    }
    return out;
}

}  // namespace dercopt
