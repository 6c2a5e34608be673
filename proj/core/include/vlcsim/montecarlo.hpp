#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vlcsim/apq.hpp"
#include "vlcsim/gssk.hpp"
#include "vlcsim/scenario.hpp"

namespace vlcsim {

/// Monte Carlo SER estimate with its binomial standard error.
struct SerEstimate {
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
    double ser = 0.0;
    double std_error = 0.0;  // sqrt(p(1-p)/N)
};

SerEstimate make_ser_estimate(std::uint64_t errors, std::uint64_t trials);

/// Point-to-point APQ link: the serving-LED channel gain carries the scheme.
struct ApqLink {
    ApqConfig config;
    double gain = 0.0;
};

/// GSSK link: per-LED channel gains in the order of config.led_indices.
struct GsskLink {
    GsskConfig config;
    std::vector<double> gains;
};

using Link = std::variant<ApqLink, GsskLink>;

struct SweepPoint {
    double snr_db = 0.0;
    SerEstimate estimate;
    double ser_analytic = 0.0;  // NaN when no closed form applies
};

struct SweepResult {
    std::string scheme;
    std::string geometry;
    std::vector<SweepPoint> points;
};

/// Normalized-throughput grid over the room floor. Values are (1 - SER)
/// divided by the map maximum; row r, column c map to
/// (origin_x + c*spacing, origin_y + r*spacing).
struct ThroughputMap {
    double origin_x = 0.0;
    double origin_y = 0.0;
    double spacing = 0.1;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> values;  // row-major, ny rows of nx
    double snr_db = 0.0;

    double at(std::size_t row, std::size_t col) const { return values[row * nx + col]; }
};

/// Estimates SER for one link at one transmit SNR. Deterministic for a fixed
/// (seed, point_index, trials) regardless of worker count; workers = 0 uses
/// the hardware concurrency.
SerEstimate run_ser_point(const Link& link, double snr_db, std::uint64_t trials,
                          std::uint64_t seed, std::uint64_t point_index = 0,
                          unsigned workers = 0);

/// One run_ser_point per SNR (strictly increasing list), with per-point
/// derived streams. Fills ser_analytic for 16-ary APQ links.
SweepResult run_snr_sweep(const Link& link, std::span<const double> snr_db,
                          std::uint64_t trials, std::uint64_t seed, unsigned workers = 0);

/// Resolves the scenario's scheme and geometry into a link for a receiver at
/// (x, y) on the measurement plane.
Link scenario_link(const ScenarioConfig& cfg, double x, double y, bool allow_floor = false);

/// Scenario-level sweep at the configured receiver position.
SweepResult run_scenario_sweep(const ScenarioConfig& cfg, unsigned workers = 0,
                               bool allow_floor = false);

/// Normalized-throughput map over the room floor at a fixed transmit SNR.
ThroughputMap throughput_map(const ScenarioConfig& cfg, double snr_db, double grid_spacing,
                             std::uint64_t trials, std::uint64_t seed, unsigned workers = 0,
                             bool allow_floor = false);

}  // namespace vlcsim
