#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vlcsim/apq.hpp"
#include "vlcsim/channel.hpp"
#include "vlcsim/gssk.hpp"

namespace vlcsim {

/// Receiver/transmitter optics block (angles in radians, area in m^2).
struct OpticsConfig {
    double semi_angle = 30.0 * std::numbers::pi / 180.0;  // half-power semi-angle
    double fov = 30.0 * std::numbers::pi / 180.0;
    double area = 1e-4;  // 1 cm^2
    double lens_index = 1.5;
    double filter_gain = 1.0;
};

struct ApqSchemeConfig {
    unsigned m = 16;
    double alpha = 0.3;
    bool mean_normalize = false;
};

struct GsskSchemeConfig {
    unsigned n_tx = 3;
    std::vector<std::size_t> led_subset;  // resolved to 0..n_tx-1 when empty
};

/// One fully-described experiment world: the room, the five-LED layout (or an
/// explicit luminaire list), the front-end optics, the scheme, and the run
/// controls. Loadable from JSON; every field has a documented default.
struct ScenarioConfig {
    std::array<double, 3> room{4.0, 4.0, 3.0};  // width, depth, height (m)
    double led_spacing = 1.0;                   // Table-layout parameter d (m)
    double led_height = 3.0;
    double rx_height = 0.75;
    std::vector<Vec3> custom_luminaires;  // overrides the parametric layout when non-empty
    OpticsConfig optics;
    double led_power_w = 0.25;   // metadata
    double data_rate_bps = 1e7;  // metadata
    std::variant<ApqSchemeConfig, GsskSchemeConfig> scheme = ApqSchemeConfig{};
    std::vector<double> snr_db;  // empty -> per-command default
    std::optional<std::uint64_t> trials;
    std::uint64_t seed = 1;
    std::array<double, 2> rx_xy{1.0, 1.0};
    double grid_spacing = 0.1;
};

/// Parses and validates a scenario. Unknown or ill-typed fields produce a
/// diagnostic naming the field. APQ configs violating the SIC power condition
/// are rejected unless allow_floor is set.
ScenarioConfig load_scenario(const std::filesystem::path& path, bool allow_floor = false);
ScenarioConfig scenario_from_json_text(const std::string& text, bool allow_floor = false);

/// Re-checks every invariant on an already-built config (same diagnostics as
/// the loader); useful after programmatic field overrides.
void validate_scenario(const ScenarioConfig& cfg, bool allow_floor = false);

/// Canonical JSON serialization (sorted keys, all defaults materialized).
std::string scenario_to_json_text(const ScenarioConfig& cfg);

/// FNV-1a hash of the canonical serialization, as 16 hex digits. Stable under
/// JSON field reordering.
std::string config_hash(const ScenarioConfig& cfg);

std::vector<Luminaire> scenario_luminaires(const ScenarioConfig& cfg);
Photodetector scenario_receiver(const ScenarioConfig& cfg, double x, double y);

/// Short identifier like "apq16" or "gssk3".
std::string scheme_id(const ScenarioConfig& cfg);

unsigned scheme_bits(const ScenarioConfig& cfg);

/// SNR grid for sweep commands (config value or the 110..150 dB default).
std::vector<double> sweep_snrs(const ScenarioConfig& cfg);

/// Single SNR for heatmap commands (config value or a bits-dependent default).
double heatmap_snr(const ScenarioConfig& cfg);

std::uint64_t sweep_trials(const ScenarioConfig& cfg);    // default 1e6 per point
std::uint64_t heatmap_trials(const ScenarioConfig& cfg);  // default 1e5 per cell

/// The modem config described by an APQ scheme block.
ApqConfig scenario_apq_config(const ApqSchemeConfig& scheme, bool allow_floor = false);
GsskConfig scenario_gssk_config(const GsskSchemeConfig& scheme);

}  // namespace vlcsim
