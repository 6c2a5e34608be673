#include <cmath>
#include <cstdint>

#include "doctest.h"
#include "vlcsim/analysis.hpp"
#include "vlcsim/montecarlo.hpp"
#include "vlcsim/rng.hpp"
#include "vlcsim/validation.hpp"

using namespace vlcsim;

namespace {

Link rx1_apq16() { return ApqLink{make_apq_config(16, 0.3), 1.6463954068102429e-4}; }

double two_proportion_z(const SerEstimate& a, const SerEstimate& b) {
    const double pooled = static_cast<double>(a.errors + b.errors) /
                          static_cast<double>(a.trials + b.trials);
    const double se = std::sqrt(pooled * (1.0 - pooled) *
                                (1.0 / a.trials + 1.0 / b.trials));
    if (se == 0.0) return 0.0;
    return (a.ser - b.ser) / se;
}

}  // namespace

TEST_CASE("trial streams are deterministic and well-behaved") {
    TrialRng a(42, 3, 17), b(42, 3, 17), c(42, 3, 18);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() != c.next_u64());

    double sum = 0.0, sumsq = 0.0;
    const int n = 100000;
    for (int t = 0; t < n; ++t) {
        TrialRng rng(1, 0, static_cast<std::uint64_t>(t));
        const double g = rng.next_gaussian();
        sum += g;
        sumsq += g * g;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 0.02);
    CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("estimates are reproducible and worker-count independent") {
    const Link link = rx1_apq16();
    const SerEstimate one = run_ser_point(link, 118.0, 50000, 5, 2, 1);
    const SerEstimate again = run_ser_point(link, 118.0, 50000, 5, 2, 1);
    const SerEstimate parallel = run_ser_point(link, 118.0, 50000, 5, 2, 4);
    CHECK(one.errors == again.errors);
    CHECK(one.errors == parallel.errors);
    CHECK(one.ser == parallel.ser);

    // distinct streams give distinct draws
    const SerEstimate other_point = run_ser_point(link, 118.0, 50000, 5, 3, 1);
    CHECK(other_point.errors != one.errors);
}

TEST_CASE("estimator bookkeeping") {
    const SerEstimate e = make_ser_estimate(25, 1000);
    CHECK(e.ser == 0.025);
    CHECK(std::abs(e.std_error - std::sqrt(0.025 * 0.975 / 1000.0)) < 1e-15);
    CHECK_THROWS_AS(make_ser_estimate(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(make_ser_estimate(5, 4), std::invalid_argument);

    // quadrupling the trial count roughly halves the standard error
    const Link link = rx1_apq16();
    const SerEstimate small = run_ser_point(link, 116.0, 50000, 11);
    const SerEstimate large = run_ser_point(link, 116.0, 200000, 11);
    CHECK(large.std_error < small.std_error);
    CHECK(large.std_error / small.std_error == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("noiseless regime and blocked links") {
    const SerEstimate clean = run_ser_point(rx1_apq16(), 200.0, 10000, 3);
    CHECK(clean.errors == 0);

    const Link blocked = ApqLink{make_apq_config(16, 0.3), 0.0};
    const SerEstimate guess = run_ser_point(blocked, 130.0, 100000, 3);
    CHECK(std::abs(guess.ser - 15.0 / 16.0) < 4.0 * guess.std_error + 1e-3);
}

TEST_CASE("Monte Carlo matches the closed form at the serving-gain scale") {
    const SerEstimate est = run_ser_point(rx1_apq16(), 130.0, 1000000, 21);
    const DetectionScale scale = detection_scale(1.6463954068102429e-4, 130.0);
    const double analytic = ser_total(scale, analysis_powers(make_apq_config(16, 0.3)));
    CHECK(agrees_within_3sigma(analytic, est));
}

TEST_CASE("snr sweeps") {
    const std::vector<double> bad = {110.0, 110.0};
    CHECK_THROWS_AS(run_snr_sweep(rx1_apq16(), bad, 1000, 1), std::invalid_argument);
    CHECK_THROWS_AS(run_snr_sweep(rx1_apq16(), std::vector<double>{}, 1000, 1),
                    std::invalid_argument);

    const std::vector<double> snrs = {110, 115, 120, 125, 130};
    const SweepResult sweep = run_snr_sweep(rx1_apq16(), snrs, 100000, 9);
    REQUIRE(sweep.points.size() == snrs.size());
    for (std::size_t i = 1; i < sweep.points.size(); ++i) {
        const auto& prev = sweep.points[i - 1].estimate;
        const auto& cur = sweep.points[i].estimate;
        const double slack =
            3.0 * std::sqrt(prev.std_error * prev.std_error + cur.std_error * cur.std_error);
        CHECK(cur.ser <= prev.ser + slack);
    }
    for (const SweepPoint& pt : sweep.points) {
        CHECK_FALSE(std::isnan(pt.ser_analytic));
        CHECK(agrees_within_3sigma(pt.ser_analytic, pt.estimate));
    }

    // no closed form column for spatial keying
    const Link gssk = GsskLink{make_gssk_config(3), {1e-5, 2e-5, 5e-5}};
    const SweepResult gs = run_snr_sweep(gssk, snrs, 10000, 9);
    for (const SweepPoint& pt : gs.points) CHECK(std::isnan(pt.ser_analytic));
}

TEST_CASE("equal serving gains give statistically equal SER") {
    // Rx1 sits under Tx1 exactly as the center receiver sits under Tx3
    ScenarioConfig cfg;
    const Link rx1 = scenario_link(cfg, 1.0, 1.0);
    const Link rx3 = scenario_link(cfg, 2.0, 2.0);
    CHECK(std::get<ApqLink>(rx1).gain == std::get<ApqLink>(rx3).gain);

    const SerEstimate a = run_ser_point(rx1, 118.0, 200000, 100);
    const SerEstimate b = run_ser_point(rx3, 118.0, 200000, 200);
    CHECK(std::abs(two_proportion_z(a, b)) < 2.576);  // p > 0.01
}

TEST_CASE("scenario links resolve geometry") {
    ScenarioConfig cfg;
    cfg.scheme = GsskSchemeConfig{3, {}};
    const Link link = scenario_link(cfg, 2.1, 2.2);
    const auto& gains = std::get<GsskLink>(link).gains;
    REQUIRE(gains.size() == 3);
    // at table optics the Tx1 incidence angle exceeds the FOV
    CHECK(gains[0] == 0.0);
    CHECK(gains[1] > 0.0);
    CHECK(gains[2] > gains[1]);

    // a dead LED halves the usable alphabet: SER floor 1/2 at any SNR,
    // approached monotonically from the guessing limit
    double prev = 1.0;
    for (double snr : {110.0, 130.0, 150.0}) {
        const SerEstimate est = run_ser_point(link, snr, 50000, 31);
        CHECK(est.ser >= 0.45);
        CHECK(est.ser <= prev + 3.0 * est.std_error);
        prev = est.ser;
    }
}

TEST_CASE("transmit-SNR curves sit one channel-gain offset above received-SNR curves") {
    const auto powers = analysis_powers(make_apq_config(16, 0.3));
    const auto crossing_scale = [&] {
        double lo = 1.0, hi = 1e5;
        for (int it = 0; it < 200; ++it) {
            const double mid = std::sqrt(lo * hi);
            (ser_total(DetectionScale{mid}, powers) > 1e-2 ? lo : hi) = mid;
        }
        return std::sqrt(lo * hi);
    }();
    const double gain = 1.6463954068102429e-4;
    const double snr_rx_crossing = 20.0 * std::log10(crossing_scale);
    const double snr_tx_crossing = 20.0 * std::log10(crossing_scale / gain);
    const double offset = snr_tx_crossing - snr_rx_crossing;
    CHECK(offset >= 75.0);
    CHECK(offset <= 80.0);

    // Monte Carlo confirms the crossing point at the transmit side
    const SerEstimate est = run_ser_point(rx1_apq16(), snr_tx_crossing, 200000, 77);
    CHECK(std::abs(est.ser - 1e-2) < 10.0 * est.std_error);
}

TEST_CASE("throughput maps normalize to their own maximum") {
    ScenarioConfig cfg;
    cfg.scheme = ApqSchemeConfig{16, 0.3, true};
    const ThroughputMap map = throughput_map(cfg, 140.0, 0.5, 2000, 13);
    REQUIRE(map.nx == 9);
    REQUIRE(map.ny == 9);

    double max_v = 0.0;
    for (double v : map.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
        max_v = std::max(max_v, v);
    }
    CHECK(max_v == 1.0);

    // directly under Tx1 at (1,1): cell (row 2, col 2)
    CHECK(map.at(2, 2) == 1.0);
    // corner (0,0) is outside every FOV: pure guessing, (1/16) of the max
    CHECK(std::abs(map.at(0, 0) - 1.0 / 16.0) < 0.03);

    CHECK_THROWS_AS(throughput_map(cfg, 140.0, 0.3, 100, 1), std::invalid_argument);
    CHECK_THROWS_AS(throughput_map(cfg, 140.0, -0.1, 100, 1), std::invalid_argument);
}
