#include "vlcsim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <thread>

#include "vlcsim/analysis.hpp"
#include "vlcsim/rng.hpp"

namespace vlcsim {

namespace {

unsigned resolve_workers(unsigned workers) {
    if (workers != 0) return workers;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Sums fn(trial) over [0, trials) across workers; fn must be pure per trial.
template <typename PerTrial>
std::uint64_t count_over_trials(std::uint64_t trials, unsigned workers, PerTrial&& fn) {
    workers = resolve_workers(workers);
    if (workers == 1 || trials < 4096) {
        std::uint64_t errors = 0;
        for (std::uint64_t t = 0; t < trials; ++t) errors += fn(t);
        return errors;
    }
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = std::min(trials, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            std::uint64_t errors = 0;
            for (std::uint64_t t = begin; t < end; ++t) errors += fn(t);
            partial[w] = errors;
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t errors = 0;
    for (auto p : partial) errors += p;  // fixed order, independent of scheduling
    return errors;
}

SerEstimate run_apq_point(const ApqLink& link, double snr_db, std::uint64_t trials,
                          std::uint64_t seed, std::uint64_t point_index, unsigned workers) {
    const ApqConfig& cfg = link.config;
    const DetectionScale scale{detection_scale(link.gain, snr_db).value *
                               cfg.amplitude_multiplier()};
    const unsigned m = cfg.m_total;

    // Precomputed waveforms per symbol index.
    std::vector<double> waveform(m);
    std::vector<ComponentIndices> components(m);
    for (unsigned k = 0; k < m; ++k) {
        components[k] = index_to_components(k, cfg);
        waveform[k] = apq_modulate(components[k], cfg).value;
    }

    const std::uint64_t errors =
        count_over_trials(trials, workers, [&](std::uint64_t t) -> std::uint64_t {
            TrialRng rng(seed, point_index, t);
            const unsigned k = rng.next_symbol(m);
            const double received = scale.value * waveform[k] + rng.next_gaussian();
            return sic_demodulate(received, scale, cfg) == components[k] ? 0 : 1;
        });
    return make_ser_estimate(errors, trials);
}

SerEstimate run_gssk_point(const GsskLink& link, double snr_db, std::uint64_t trials,
                           std::uint64_t seed, std::uint64_t point_index, unsigned workers) {
    const GsskConfig& cfg = link.config;
    if (link.gains.size() != cfg.n_tx)
        throw std::invalid_argument("run_ser_point: GSSK gain count mismatch");
    const double amp_scale = std::pow(10.0, snr_db / 20.0);
    std::vector<double> scaled(link.gains.size());
    for (std::size_t i = 0; i < scaled.size(); ++i) scaled[i] = link.gains[i] * amp_scale;

    const unsigned m = cfg.symbol_count();
    std::vector<double> means(m);
    for (unsigned k = 0; k < m; ++k)
        means[k] = gssk_received_mean(gssk_modulate(k, cfg), scaled, cfg);

    const std::uint64_t errors =
        count_over_trials(trials, workers, [&](std::uint64_t t) -> std::uint64_t {
            TrialRng rng(seed, point_index, t);
            const unsigned k = rng.next_symbol(m);
            const double received = means[k] + rng.next_gaussian();
            return gssk_detect_ml(received, means) == k ? 0 : 1;
        });
    return make_ser_estimate(errors, trials);
}

}  // namespace

SerEstimate make_ser_estimate(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) throw std::invalid_argument("make_ser_estimate: zero trials");
    if (errors > trials) throw std::invalid_argument("make_ser_estimate: errors > trials");
    SerEstimate e;
    e.errors = errors;
    e.trials = trials;
    e.ser = static_cast<double>(errors) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.ser * (1.0 - e.ser) / static_cast<double>(trials));
    return e;
}

SerEstimate run_ser_point(const Link& link, double snr_db, std::uint64_t trials,
                          std::uint64_t seed, std::uint64_t point_index, unsigned workers) {
    if (trials == 0) throw std::invalid_argument("run_ser_point: trials must be >= 1");
    if (const auto* apq = std::get_if<ApqLink>(&link))
        return run_apq_point(*apq, snr_db, trials, seed, point_index, workers);
    return run_gssk_point(std::get<GsskLink>(link), snr_db, trials, seed, point_index, workers);
}

SweepResult run_snr_sweep(const Link& link, std::span<const double> snr_db,
                          std::uint64_t trials, std::uint64_t seed, unsigned workers) {
    if (snr_db.empty()) throw std::invalid_argument("run_snr_sweep: empty SNR list");
    for (std::size_t i = 1; i < snr_db.size(); ++i)
        if (!(snr_db[i] > snr_db[i - 1]))
            throw std::invalid_argument("run_snr_sweep: SNR list must be strictly increasing");

    const ApqLink* apq = std::get_if<ApqLink>(&link);
    const bool analytic = apq != nullptr && apq->config.m_total == 16;

    SweepResult result;
    result.points.reserve(snr_db.size());
    for (std::size_t i = 0; i < snr_db.size(); ++i) {
        SweepPoint pt;
        pt.snr_db = snr_db[i];
        pt.estimate = run_ser_point(link, snr_db[i], trials, seed, i, workers);
        if (analytic) {
            const DetectionScale scale{detection_scale(apq->gain, snr_db[i]).value *
                                       apq->config.amplitude_multiplier()};
            pt.ser_analytic = ser_total(scale, analysis_powers(apq->config));
        } else {
            pt.ser_analytic = std::numeric_limits<double>::quiet_NaN();
        }
        result.points.push_back(pt);
    }
    return result;
}

Link scenario_link(const ScenarioConfig& cfg, double x, double y, bool allow_floor) {
    const auto luminaires = scenario_luminaires(cfg);
    const Photodetector rx = scenario_receiver(cfg, x, y);

    if (const auto* apq = std::get_if<ApqSchemeConfig>(&cfg.scheme)) {
        const ServingLed best = serving_gain(luminaires, rx);
        return ApqLink{scenario_apq_config(*apq, allow_floor), best.gain};
    }
    const auto& gs = std::get<GsskSchemeConfig>(cfg.scheme);
    GsskConfig gc = scenario_gssk_config(gs);
    std::vector<double> gains;
    gains.reserve(gc.led_indices.size());
    for (std::size_t idx : gc.led_indices) {
        if (idx >= luminaires.size())
            throw std::invalid_argument("scenario_link: led_subset index out of range");
        gains.push_back(channel_gain(luminaires[idx], rx));
    }
    return GsskLink{std::move(gc), std::move(gains)};
}

SweepResult run_scenario_sweep(const ScenarioConfig& cfg, unsigned workers, bool allow_floor) {
    const Link link = scenario_link(cfg, cfg.rx_xy[0], cfg.rx_xy[1], allow_floor);
    const std::vector<double> snrs = sweep_snrs(cfg);
    SweepResult result = run_snr_sweep(link, snrs, sweep_trials(cfg), cfg.seed, workers);
    result.scheme = scheme_id(cfg);
    char geom[64];
    std::snprintf(geom, sizeof geom, "rx=(%g,%g)", cfg.rx_xy[0], cfg.rx_xy[1]);
    result.geometry = geom;
    return result;
}

ThroughputMap throughput_map(const ScenarioConfig& cfg, double snr_db, double grid_spacing,
                             std::uint64_t trials, std::uint64_t seed, unsigned workers,
                             bool allow_floor) {
    if (!(grid_spacing > 0.0)) throw std::invalid_argument("throughput_map: spacing must be > 0");
    const double width = cfg.room[0];
    const double depth = cfg.room[1];
    const double nx_f = width / grid_spacing;
    const double ny_f = depth / grid_spacing;
    if (std::abs(nx_f - std::round(nx_f)) > 1e-9 || std::abs(ny_f - std::round(ny_f)) > 1e-9)
        throw std::invalid_argument("throughput_map: spacing must divide the room floor");

    ThroughputMap map;
    map.origin_x = 0.0;
    map.origin_y = 0.0;
    map.spacing = grid_spacing;
    map.nx = static_cast<std::size_t>(std::lround(nx_f)) + 1;
    map.ny = static_cast<std::size_t>(std::lround(ny_f)) + 1;
    map.snr_db = snr_db;
    map.values.assign(map.nx * map.ny, 0.0);

    const std::size_t cells = map.nx * map.ny;
    const unsigned nworkers = resolve_workers(workers);

    // Cells are independent; each runs its trials serially on one worker with
    // a stream keyed by its linear index, so layout of work does not matter.
    std::vector<std::thread> pool;
    pool.reserve(nworkers);
    std::atomic<std::size_t> next_cell{0};
    for (unsigned w = 0; w < nworkers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t cell = next_cell.fetch_add(1);
                if (cell >= cells) return;
                const std::size_t row = cell / map.nx;
                const std::size_t col = cell % map.nx;
                const double x = map.origin_x + static_cast<double>(col) * grid_spacing;
                const double y = map.origin_y + static_cast<double>(row) * grid_spacing;
                const Link link = scenario_link(cfg, x, y, allow_floor);
                const SerEstimate est = run_ser_point(link, snr_db, trials, seed, cell, 1);
                map.values[cell] = 1.0 - est.ser;
            }
        });
    }
    for (auto& th : pool) th.join();

    const double max_value = *std::max_element(map.values.begin(), map.values.end());
    if (max_value > 0.0)
        for (double& v : map.values) v /= max_value;
    return map;
}

}  // namespace vlcsim
