#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "dercopt/spectral.hpp"
#include "test_helpers.hpp"

using namespace dercopt;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("constant day transforms to a pure DC bin") {
    auto day = testutil::make_day(std::vector<double>(96, 2.0));
    auto sp = forward_transform(day);
    CHECK_THAT(sp.bins[0].real(), WithinAbs(96.0 * 2.0, 1e-9));
    CHECK_THAT(sp.bins[0].imag(), WithinAbs(0.0, 1e-9));
    for (std::size_t m = 1; m < sp.size(); ++m) CHECK(std::abs(sp.bins[m]) < 1e-9);
    // 15-minute sampling puts Nyquist at 1/(2*900 s), the 0.56 mHz of a
    // 96-slot day
    CHECK_THAT(sp.nyquist_hz, WithinRel(0.000555555555, 1e-6));
}

TEST_CASE("pure cosine occupies one conjugate bin pair") {
    std::vector<double> s(96);
    for (std::size_t k = 0; k < 96; ++k) s[k] = std::cos(2.0 * kPi * 3.0 * k / 96.0);
    auto sp = forward_transform(testutil::make_day(s));
    for (std::size_t m = 0; m < 96; ++m) {
        if (m == 3 || m == 93)
            CHECK_THAT(std::abs(sp.bins[m]), WithinAbs(48.0, 1e-9));
        else
            CHECK(std::abs(sp.bins[m]) < 1e-9);
    }
}

TEST_CASE("round trip and Parseval on random days") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto day = testutil::random_day(rng);
        auto sp = forward_transform(day);
        auto back = inverse_transform(sp);
        double worst = 0.0;
        for (std::size_t k = 0; k < day.samples.size(); ++k)
            worst = std::max(worst, std::abs(back[k] - day.samples[k]));
        CHECK(worst < 1e-12);

        double time_energy = 0.0, freq_energy = 0.0;
        for (double v : day.samples) time_energy += v * v;
        for (const auto& b : sp.bins) freq_energy += std::norm(b);
        freq_energy /= static_cast<double>(sp.size());
        CHECK_THAT(freq_energy, WithinRel(time_energy, 1e-9));
    }
}

TEST_CASE("cutoff zero sends the mean to CHP and the rest to BESS") {
    std::mt19937_64 rng(5);
    auto day = testutil::random_day(rng);
    auto sp = forward_transform(day);
    auto raw = split_at_cutoff(sp, 0.0);
    double mean = 0.0;
    for (double v : day.samples) mean += v;
    mean /= static_cast<double>(day.samples.size());
    for (double v : raw.chp) CHECK_THAT(v, WithinAbs(mean, 1e-9));
    double bess_sum = 0.0;
    for (double v : raw.bess) bess_sum += v;
    CHECK_THAT(bess_sum, WithinAbs(0.0, 1e-9));
}

TEST_CASE("cutoff at Nyquist assigns everything to CHP") {
    std::mt19937_64 rng(6);
    auto day = testutil::random_day(rng);
    auto sp = forward_transform(day);
    auto raw = split_at_cutoff(sp, sp.nyquist_hz);
    for (std::size_t k = 0; k < day.samples.size(); ++k) {
        CHECK_THAT(raw.chp[k], WithinAbs(day.samples[k], 1e-9));
        CHECK_THAT(raw.bess[k], WithinAbs(0.0, 1e-9));
    }
}

TEST_CASE("a tone above the cutoff lands in the BESS share") {
    std::vector<double> s(96);
    const std::size_t tone_bin = 17;  // ~0.197 mHz at 15-minute sampling
    for (std::size_t k = 0; k < 96; ++k)
        s[k] = 3.0 + 0.4 * std::cos(2.0 * kPi * tone_bin * k / 96.0);
    auto sp = forward_transform(testutil::make_day(s));
    auto raw = split_at_cutoff(sp, 0.1e-3);
    for (std::size_t k = 0; k < 96; ++k) {
        CHECK_THAT(raw.chp[k], WithinAbs(3.0, 1e-9));
        CHECK_THAT(raw.bess[k], WithinAbs(0.4 * std::cos(2.0 * kPi * tone_bin * k / 96.0), 1e-9));
    }
}

TEST_CASE("split reconstruction before and after clamping") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        auto day = testutil::random_day(rng, 96, -2.0, 5.0);
        auto sp = forward_transform(day);
        for (std::size_t bin : {std::size_t{0}, std::size_t{5}, std::size_t{24}, std::size_t{48}}) {
            auto raw = split_at_bin(sp, bin);
            for (std::size_t k = 0; k < 96; ++k)
                CHECK_THAT(raw.chp[k] + raw.bess[k], WithinAbs(day.samples[k], 1e-9));

            auto clamped = clamp_negative(raw.chp, day.samples);
            double sum_net = 0.0, sum_split = 0.0;
            for (std::size_t k = 0; k < 96; ++k) {
                CHECK(clamped.chp[k] >= 0.0);
                CHECK(clamped.chp[k] + clamped.bess[k] == day.samples[k]);  // exact identity
                sum_net += day.samples[k];
                sum_split += clamped.chp[k] + clamped.bess[k];
            }
            CHECK_THAT(sum_split, WithinAbs(sum_net, 1e-12));
        }
    }
}

TEST_CASE("clamp examples") {
    SECTION("non-negative raw chp is untouched") {
        std::vector<double> chp{1.0, 2.0, 0.0};
        std::vector<double> net{1.5, 2.5, 0.5};
        auto r = clamp_negative(chp, net);
        CHECK(r.chp == chp);
        CHECK(r.bess == std::vector<double>{0.5, 0.5, 0.5});
    }
    SECTION("negative chp sample moves to the BESS") {
        auto r = clamp_negative({-0.4}, {-0.1});
        CHECK(r.chp[0] == 0.0);
        CHECK(r.bess[0] == -0.1);
    }
}

TEST_CASE("chp sizing applies the reserve margin") {
    std::vector<double> s{0.2, 1.0, 0.6};
    CHECK_THAT(size_chp(s, 0.1), WithinAbs(1.1, 1e-12));
    CHECK_THAT(size_chp(s, 0.0), WithinAbs(1.0, 1e-12));
    CHECK(size_chp(std::vector<double>(10, 0.0), 0.25) == 0.0);

    // non-decreasing in the reserve
    double prev = 0.0;
    for (double r = 0.0; r <= 1.0; r += 0.05) {
        double cap = size_chp(s, r);
        CHECK(cap >= prev);
        prev = cap;
    }
}

TEST_CASE("bess sizing hand-traced square wave") {
    // +1 MW discharge for 12 h then -1 MW charge for 12 h, 15-minute slots
    std::vector<double> wave(96);
    for (std::size_t k = 0; k < 96; ++k) wave[k] = k < 48 ? 1.0 : -1.0;

    SECTION("ideal efficiency") {
        SizingParams p{0.1, 1.0, 0.5, 1.0};
        auto s = size_bess(wave, p, 0.25);
        CHECK_THAT(s.power_mw, WithinAbs(1.0, 1e-12));
        double peak = 0.0;
        for (double e : s.trace_mwh) peak = std::max(peak, e);
        CHECK_THAT(peak, WithinAbs(12.0, 1e-12));
        CHECK_THAT(s.energy_mwh, WithinAbs(24.0, 1e-12));
        CHECK_THAT(s.daily_imbalance_mwh, WithinAbs(0.0, 1e-12));
    }
    SECTION("lossy terminal power") {
        SizingParams p{0.1, 0.85, 0.5, 1.0};
        auto s = size_bess(wave, p, 0.25);
        CHECK_THAT(s.power_mw, WithinAbs(1.0 / 0.85, 1e-12));
    }
    SECTION("zero series") {
        SizingParams p{0.1, 0.85, 0.5, 1.0};
        auto s = size_bess(std::vector<double>(96, 0.0), p, 0.25);
        CHECK(s.power_mw == 0.0);
        CHECK(s.energy_mwh == 0.0);
    }
    SECTION("empty SOC window is rejected") {
        SizingParams p{0.1, 0.85, 0.6, 0.6};
        CHECK_THROWS_AS(size_bess(wave, p, 0.25), DegenerateParams);
    }
}

TEST_CASE("nyquist cutoff with non-negative net load needs no BESS power") {
    std::mt19937_64 rng(31);
    auto day = testutil::random_day(rng, 96, 0.5, 4.0);
    SizingParams p{0.1, 0.85, 0.5, 1.0};
    auto r = split_day(day, 48, p);
    CHECK(r.bess_power_mw == 0.0);
    CHECK(r.bess_energy_mwh == 0.0);
    CHECK_THAT(r.chp_capacity_mw,
               WithinAbs((*std::max_element(day.samples.begin(), day.samples.end())) * 1.1, 1e-9));
}

TEST_CASE("pre-clamp bess share is zero-mean for any cutoff") {
    std::mt19937_64 rng(41);
    auto day = testutil::random_day(rng, 96, -1.0, 4.0);
    auto sp = forward_transform(day);
    double norm1 = 0.0;
    for (double v : day.samples) norm1 += std::abs(v);
    for (std::size_t bin = 0; bin <= 48; bin += 6) {
        auto raw = split_at_bin(sp, bin);
        double sum = 0.0;
        for (double v : raw.bess) sum += v * day.interval_hours;
        CHECK(std::abs(sum) <= 1e-9 * norm1);
    }
}
