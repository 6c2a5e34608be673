#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "doctest.h"
#include "vlcsim/apq.hpp"
#include "vlcsim/montecarlo.hpp"

using namespace vlcsim;

TEST_CASE("fixed power allocation") {
    const auto p_half = power_allocation(0.5, 3);
    CHECK(std::abs(p_half[0] - 4.0 / 7.0) < 1e-15);
    CHECK(std::abs(p_half[1] - 2.0 / 7.0) < 1e-15);
    CHECK(std::abs(p_half[2] - 1.0 / 7.0) < 1e-15);

    const auto p3 = power_allocation(0.3, 3);
    CHECK(std::abs(p3[0] - 0.719424460431655) < 1e-12);
    CHECK(std::abs(p3[1] - 0.215827338129496) < 1e-12);
    CHECK(std::abs(p3[2] - 0.0647482014388489) < 1e-12);

    const auto p2 = power_allocation(0.3, 2);
    CHECK(std::abs(p2[0] - 0.769230769230769) < 1e-12);
    CHECK(std::abs(p2[1] - 0.230769230769231) < 1e-12);

    const auto p4 = power_allocation(0.3, 4);
    CHECK(std::abs(p4[0] - 0.705716302046577) < 1e-12);
    CHECK(std::abs(p4[3] - 0.0190543401552576) < 1e-12);

    CHECK_THROWS_AS(power_allocation(1.0, 3), std::domain_error);
    CHECK_THROWS_AS(power_allocation(0.0, 3), std::domain_error);
    CHECK_THROWS_AS(power_allocation(-0.2, 3), std::domain_error);
    CHECK_THROWS_AS(power_allocation(0.3, 5), std::invalid_argument);

    // P1 <= P2 + P3 rejects unless floors are allowed
    CHECK_THROWS_AS(power_allocation(0.9, 3), std::runtime_error);
    CHECK_NOTHROW(power_allocation(0.9, 3, SicPolicy::Allow));

    // geometric decay, decreasing, unit sum, for any valid alpha
    std::mt19937 gen(11);
    std::uniform_real_distribution<double> alpha_dist(0.05, 0.6);
    for (int i = 0; i < 100; ++i) {
        const double alpha = alpha_dist(gen);
        for (unsigned n : {2u, 3u, 4u}) {
            const auto p = power_allocation(alpha, n, SicPolicy::Allow);
            double sum = 0.0;
            for (unsigned k = 0; k < n; ++k) {
                sum += p[k];
                if (k) {
                    CHECK(p[k] < p[k - 1]);
                    CHECK(std::abs(p[k] - alpha * p[k - 1]) < 1e-14);
                }
            }
            CHECK(std::abs(sum - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("constellation splits") {
    const auto s16 = split_for(16);
    CHECK(s16.l_amp == 2);
    CHECK(s16.l_phase == 2);
    CHECK(s16.l_quad == 4);
    const auto s8 = split_for(8);
    CHECK(s8.l_amp == 2);
    CHECK(s8.l_phase == 1);
    CHECK(s8.l_quad == 4);
    const auto s32 = split_for(32);
    CHECK(s32.l_amp == 2);
    CHECK(s32.l_phase == 4);
    CHECK(s32.l_quad == 4);
    CHECK_THROWS_AS(split_for(7), std::invalid_argument);
    CHECK_THROWS_AS(split_for(64), std::invalid_argument);

    for (unsigned m : {8u, 16u, 32u}) {
        const ApqConfig cfg = make_apq_config(m, 0.3);
        CHECK(cfg.l_amp * cfg.l_phase * cfg.l_quad == m);
        CHECK(cfg.stage_count() == cfg.stage_orders.size());
    }
}

TEST_CASE("sic power conditions") {
    const auto c16 = sic_condition(make_apq_config(16, 0.3));
    CHECK(c16.dominant);
    CHECK(c16.zero_floor);

    // alpha = 0.5 satisfies the decodability condition but not the
    // interference-free slicing margin
    const auto c_half = sic_condition(make_apq_config(16, 0.5));
    CHECK(c_half.dominant);
    CHECK_FALSE(c_half.zero_floor);

    for (unsigned m : {8u, 16u, 32u}) CHECK(sic_condition(make_apq_config(m, 0.3)).zero_floor);
}

TEST_CASE("index/component bijection") {
    for (unsigned m : {8u, 16u, 32u}) {
        const ApqConfig cfg = make_apq_config(m, 0.3);
        std::set<std::tuple<unsigned, unsigned, unsigned>> seen;
        for (unsigned k = 0; k < m; ++k) {
            const ComponentIndices c = index_to_components(k, cfg);
            CHECK(c.amplitude < cfg.l_amp);
            CHECK(c.phase < cfg.l_phase);
            CHECK(c.quadrant < cfg.l_quad);
            seen.insert({c.amplitude, c.phase, c.quadrant});
            CHECK(components_to_index(c, cfg) == k);
        }
        CHECK(seen.size() == m);
        CHECK_THROWS_AS(index_to_components(m, cfg), std::out_of_range);
    }

    const ApqConfig cfg16 = make_apq_config(16, 0.3);
    CHECK(index_to_components(0, cfg16) == ComponentIndices{0, 0, 0});
    CHECK(index_to_components(15, cfg16) == ComponentIndices{1, 1, 2});  // Gray(11) -> 2

    const ApqConfig cfg8 = make_apq_config(8, 0.3);
    CHECK(index_to_components(5, cfg8) == ComponentIndices{1, 0, 1});  // Gray(01) -> 1
}

TEST_CASE("complex constellation points") {
    const ApqConfig cfg = make_apq_config(16, 0.3);
    const auto z0 = components_to_complex({0, 0, 0}, cfg);
    CHECK(std::abs(z0 - std::polar(1.0, std::numbers::pi / 8.0)) < 1e-15);
    const auto z1 = components_to_complex({1, 1, 2}, cfg);
    CHECK(std::abs(z1 - std::polar(2.0, 3.0 * std::numbers::pi / 8.0 + std::numbers::pi)) <
          1e-14);

    for (unsigned m : {8u, 16u, 32u}) {
        const ApqConfig c = make_apq_config(m, 0.3);
        std::vector<std::complex<double>> pts;
        for (unsigned k = 0; k < m; ++k)
            pts.push_back(components_to_complex(index_to_components(k, c), c));
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                CHECK(std::abs(pts[i] - pts[j]) > 1e-9);
    }
}

TEST_CASE("pam levels") {
    CHECK(pam_level(0, 2) == 0.0);
    CHECK(pam_level(1, 2) == 1.0);
    CHECK(std::abs(pam_level(1, 4) - 1.0 / 3.0) < 1e-15);
    CHECK(pam_level(3, 4) == 1.0);
    CHECK(pam_level(0, 1) == 0.0);
    CHECK_THROWS_AS(pam_level(4, 4), std::out_of_range);

    // half the scaled level spacing for 4-PAM is P/6
    const double p3 = power_allocation(0.3, 3)[2];
    const double spacing = pam_level(1, 4) - pam_level(0, 4);
    CHECK(std::abs(p3 * spacing / 2.0 - p3 / 6.0) < 1e-16);
}

TEST_CASE("modulation is the power-weighted level sum") {
    const ApqConfig cfg = make_apq_config(16, 0.5, false, SicPolicy::Allow);
    CHECK(apq_modulate({0, 0, 0}, cfg).value == 0.0);
    CHECK(std::abs(apq_modulate({1, 1, 3}, cfg).value - 1.0) < 1e-15);
    CHECK(std::abs(apq_modulate({0, 1, 1}, cfg).value - 1.0 / 3.0) < 1e-15);

    // waveform is unipolar and bounded for every symbol and any valid alpha
    std::mt19937 gen(3);
    std::uniform_real_distribution<double> alpha_dist(0.02, 0.98);
    for (int i = 0; i < 50; ++i) {
        for (unsigned m : {8u, 16u, 32u}) {
            const ApqConfig c = make_apq_config(m, alpha_dist(gen), false, SicPolicy::Allow);
            double mean = 0.0;
            for (unsigned k = 0; k < m; ++k) {
                const double v = apq_modulate(index_to_components(k, c), c).value;
                CHECK(v >= 0.0);
                CHECK(v <= 1.0 + 1e-15);
                mean += v;
            }
            // symbol-averaged amplitude is exactly one half
            CHECK(std::abs(mean / m - 0.5) < 1e-12);
        }
    }
    CHECK(make_apq_config(16, 0.3, true).amplitude_multiplier() == 2.0);
    CHECK(make_apq_config(16, 0.3, false).amplitude_multiplier() == 1.0);
}

TEST_CASE("noiseless SIC round trip under the slicing-margin condition") {
    for (double alpha : {0.05, 0.1, 0.3}) {
        for (unsigned m : {8u, 16u, 32u}) {
            const ApqConfig cfg = make_apq_config(m, alpha);
            REQUIRE(sic_condition(cfg).zero_floor);
            const DetectionScale scale{77.0};
            for (unsigned k = 0; k < m; ++k) {
                const ComponentIndices c = index_to_components(k, cfg);
                const double rx = scale.value * apq_modulate(c, cfg).value;
                CHECK(sic_demodulate(rx, scale, cfg) == c);
            }
        }
    }
}

TEST_CASE("demodulation edge behavior") {
    const ApqConfig cfg = make_apq_config(16, 0.3);
    CHECK(sic_demodulate(0.0, DetectionScale{100.0}, cfg) == ComponentIndices{0, 0, 0});

    // alpha = 0.5: interference P2 + P3 = 3/7 exceeds the P1/2 = 2/7
    // amplitude threshold, so (0,1,3) slices the amplitude high
    const ApqConfig wide = make_apq_config(16, 0.5, false, SicPolicy::Allow);
    const DetectionScale scale{50.0};
    const double rx = scale.value * apq_modulate({0, 1, 3}, wide).value;
    CHECK(sic_demodulate(rx, scale, wide).amplitude == 1);

    // blocked link: a decision is still produced
    const ComponentIndices c = sic_demodulate(0.7, DetectionScale{0.0}, cfg);
    CHECK(c.amplitude < 2);
}

TEST_CASE("per-symbol error rate degrades monotonically with detection scale") {
    const ApqLink link{make_apq_config(16, 0.3), 1.0};
    double prev = 1.0;
    for (double snr_db : {29.5, 35.6, 41.6}) {  // scales ~30, 60, 120
        const SerEstimate est = run_ser_point(Link{link}, snr_db, 100000, 99);
        CHECK(est.ser <= prev + 3.0 * est.std_error);
        prev = est.ser;
    }
}

TEST_CASE("serving LED selection") {
    const double deg = std::numbers::pi / 180.0;
    std::vector<Luminaire> leds;
    for (const Vec3& p : std::initializer_list<Vec3>{
             {1, 1, 3}, {3, 3, 3}, {2, 2, 3}, {1, 3, 3}, {3, 1, 3}})
        leds.emplace_back(p, 30.0 * deg);

    const Photodetector rx1({1, 1, 0.75}, 1e-4, 30.0 * deg, 1.5, 1.0);
    const ServingLed best1 = serving_gain(leds, rx1);
    CHECK(best1.index == 0);
    CHECK(std::abs(best1.gain - 1.6463954068102429e-4) < 1e-15);

    const Photodetector rx3({2, 2, 0.75}, 1e-4, 30.0 * deg, 1.5, 1.0);
    CHECK(serving_gain(leds, rx3).index == 2);

    const Photodetector corner({0, 0, 0.75}, 1e-4, 30.0 * deg, 1.5, 1.0);
    CHECK(serving_gain(leds, corner).gain == 0.0);

    // exact tie resolves to the lowest index
    std::vector<Luminaire> pair;
    pair.emplace_back(Vec3{1, 2, 3}, 30.0 * deg);
    pair.emplace_back(Vec3{3, 2, 3}, 30.0 * deg);
    const Photodetector mid({2, 2, 0.75}, 1e-4, 30.0 * deg, 1.5, 1.0);
    CHECK(serving_gain(pair, mid).index == 0);

    CHECK_THROWS_AS(serving_gain(std::span<const Luminaire>{}, rx1), std::invalid_argument);
}
