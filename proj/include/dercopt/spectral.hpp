// Discrete Fourier split of a net-load day into a low-frequency CHP share and
// a high-frequency BESS share, plus the CHP/BESS capacity sizing rules.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "dercopt/common.hpp"
#include "dercopt/profiles.hpp"

namespace dercopt {

struct Spectrum {
    std::vector<std::complex<double>> bins;  // unnormalized DFT, length N_S
    double bin_hz = 0.0;                     // 1 / (N_S * T)
    double nyquist_hz = 0.0;                 // 1 / (2 T)
    double interval_hours = 0.25;

    std::size_t size() const { return bins.size(); }
    // number of distinct cut-off bins: DC .. Nyquist inclusive
    std::size_t cutoff_bin_count() const { return bins.size() / 2 + 1; }
};

inline Spectrum forward_transform(const std::vector<double>& samples, double interval_hours) {
    const std::size_t n = samples.size();
    if (n < 2) throw ShapeError("forward_transform: need at least two samples");
    Spectrum sp;
    sp.interval_hours = interval_hours;
    const double t_seconds = interval_hours * 3600.0;
    sp.bin_hz = 1.0 / (static_cast<double>(n) * t_seconds);
    sp.nyquist_hz = 1.0 / (2.0 * t_seconds);
    sp.bins.resize(n);
    const double w0 = -2.0 * kPi / static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k) {
            const double ang = w0 * static_cast<double>((m * k) % n);
            acc += samples[k] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        sp.bins[m] = acc;
    }
    return sp;
}

inline Spectrum forward_transform(const DayProfile& day) {
    return forward_transform(day.samples, day.interval_hours);
}

inline std::vector<double> inverse_transform(const Spectrum& sp) {
    const std::size_t n = sp.bins.size();
    std::vector<double> out(n);
    const double w0 = 2.0 * kPi / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            const double ang = w0 * static_cast<double>((m * k) % n);
            acc += sp.bins[m] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = acc.real() / static_cast<double>(n);
    }
    return out;
}

// Frequency of bin m, folding conjugate bins onto [0, Nyquist].
inline double bin_frequency_hz(const Spectrum& sp, std::size_t m) {
    const std::size_t n = sp.bins.size();
    const std::size_t folded = std::min(m, n - m);
    return static_cast<double>(folded) * sp.bin_hz;
}

// Largest folded bin index whose frequency does not exceed the cut-off.
// The comparison is inclusive so cutoff == Nyquist keeps every bin.
inline std::size_t cutoff_to_bin(const Spectrum& sp, double cutoff_hz) {
    if (cutoff_hz < 0.0 || cutoff_hz > sp.nyquist_hz * (1.0 + 1e-12))
        throw DomainError("cutoff outside [0, Nyquist]");
    const auto max_bin = sp.bins.size() / 2;
    const auto b = static_cast<std::size_t>(std::floor(cutoff_hz / sp.bin_hz + 1e-9));
    return std::min(b, max_bin);
}

struct RawSplit {
    std::vector<double> chp;   // inverse transform of bins <= cutoff (DC always)
    std::vector<double> bess;  // inverse transform of the complement
};

inline RawSplit split_at_bin(const Spectrum& sp, std::size_t keep_bin) {
    const std::size_t n = sp.bins.size();
    Spectrum low = sp, high = sp;
    for (std::size_t m = 0; m < n; ++m) {
        const std::size_t folded = std::min(m, n - m);
        if (folded <= keep_bin)
            high.bins[m] = 0.0;
        else
            low.bins[m] = 0.0;
    }
    return {inverse_transform(low), inverse_transform(high)};
}

inline RawSplit split_at_cutoff(const Spectrum& sp, double cutoff_hz) {
    return split_at_bin(sp, cutoff_to_bin(sp, cutoff_hz));
}

// Eq.-22 style clamp: CHP cannot absorb power, so negative CHP samples move
// to the BESS. bess := net - chp restores the share identity exactly.
struct ClampedSplit {
    std::vector<double> chp;
    std::vector<double> bess;
};

inline ClampedSplit clamp_negative(const std::vector<double>& raw_chp, const std::vector<double>& net) {
    if (raw_chp.size() != net.size()) throw ShapeError("clamp_negative: series length mismatch");
    ClampedSplit out;
    out.chp.resize(net.size());
    out.bess.resize(net.size());
    for (std::size_t k = 0; k < net.size(); ++k) {
        double chp = std::max(raw_chp[k], 0.0);
        double bess = net[k] - chp;
        // compensate rounding so chp + bess reproduces net bit-exactly
        for (int guard = 0; guard < 4; ++guard) {
            const double err = (chp + bess) - net[k];
            if (err == 0.0) break;
            bess -= err;
        }
        if (chp + bess != net[k]) {
            chp = net[k] - bess;
            if (chp < 0.0) {
                chp = 0.0;
                bess = net[k];
            }
        }
        out.chp[k] = chp;
        out.bess[k] = bess;
    }
    return out;
}

// CHP nameplate: peak of the assigned series plus reserve margin.
inline double size_chp(const std::vector<double>& chp_series, double reserve) {
    double peak = 0.0;
    for (double p : chp_series) peak = std::max(peak, p);
    return peak * (1.0 + reserve);
}

struct SizingParams {
    double reserve = 0.10;      // CHP reserve fraction
    double eta_bess = 0.85;     // equal charge/discharge efficiency
    double soc_min = 0.50;
    double soc_max = 1.00;

    bool valid() const {
        return reserve >= 0.0 && reserve <= 1.0 && eta_bess > 0.0 && eta_bess <= 1.0 && soc_min >= 0.0 &&
               soc_min < soc_max && soc_max <= 1.0;
    }
};

struct BessSizing {
    double power_mw = 0.0;
    double energy_mwh = 0.0;
    std::vector<double> trace_mwh;        // E[k], k = 0..N, E[0] = 0 at original status
    double daily_imbalance_mwh = 0.0;     // terminal-side residual after clamping
};

// Terminal-side power (divide by eta when discharging, multiply when
// charging), peak magnitude as power capacity, cumulative trace and the
// SOC-window spread as energy capacity. Discharge is positive in the series;
// the trace accumulates the terminal flows with that sign.
inline BessSizing size_bess(const std::vector<double>& bess_series, const SizingParams& params,
                            double interval_hours) {
    if (params.soc_max <= params.soc_min) throw DegenerateParams("size_bess: SOC window is empty");
    if (params.eta_bess <= 0.0) throw DegenerateParams("size_bess: eta must be positive");
    BessSizing out;
    out.trace_mwh.resize(bess_series.size() + 1, 0.0);
    double acc = 0.0, peak = 0.0, e_max = 0.0, e_min = 0.0;
    for (std::size_t k = 0; k < bess_series.size(); ++k) {
        const double p = bess_series[k];
        const double terminal = p >= 0.0 ? p / params.eta_bess : p * params.eta_bess;
        peak = std::max(peak, std::abs(terminal));
        acc += terminal * interval_hours;
        out.trace_mwh[k + 1] = acc;
        e_max = std::max(e_max, acc);
        e_min = std::min(e_min, acc);
    }
    out.power_mw = peak;
    out.energy_mwh = (e_max - e_min) / (params.soc_max - params.soc_min);
    out.daily_imbalance_mwh = acc;
    return out;
}

// One net-load day split at a cut-off frequency with derived capacities.
struct SplitResult {
    std::vector<double> chp_series;   // MW, >= 0
    std::vector<double> bess_series;  // MW, discharge positive
    double cutoff_hz = 0.0;
    std::size_t cutoff_bin = 0;
    double chp_capacity_mw = 0.0;        // Eq. 23
    double bess_power_mw = 0.0;          // Eq. 25
    double bess_energy_mwh = 0.0;        // Eq. 27
    std::vector<double> energy_trace;    // Eq. 26
    double daily_imbalance_mwh = 0.0;
};

inline SplitResult split_day(const DayProfile& net, std::size_t keep_bin, const SizingParams& params) {
    Spectrum sp = forward_transform(net);
    RawSplit raw;
    if (keep_bin >= sp.size() / 2) {
        // full-band cutoff is the identity partition; bypass transform noise
        raw.chp = net.samples;
        raw.bess.assign(net.samples.size(), 0.0);
    } else {
        raw = split_at_bin(sp, keep_bin);
    }
    ClampedSplit clamped = clamp_negative(raw.chp, net.samples);
    SplitResult r;
    r.chp_series = std::move(clamped.chp);
    r.bess_series = std::move(clamped.bess);
    r.cutoff_bin = keep_bin;
    r.cutoff_hz = static_cast<double>(keep_bin) * sp.bin_hz;
    r.chp_capacity_mw = size_chp(r.chp_series, params.reserve);
    BessSizing bs = size_bess(r.bess_series, params, net.interval_hours);
    r.bess_power_mw = bs.power_mw;
    r.bess_energy_mwh = bs.energy_mwh;
    r.energy_trace = std::move(bs.trace_mwh);
    r.daily_imbalance_mwh = bs.daily_imbalance_mwh;
    return r;
}

}  // namespace dercopt
