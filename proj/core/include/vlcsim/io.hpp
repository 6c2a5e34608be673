#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "vlcsim/montecarlo.hpp"
#include "vlcsim/scenario.hpp"

namespace vlcsim {

/// Per-LED gain diagnostic row.
struct GainRow {
    std::size_t led_id = 0;  // 1-based, Table order
    double gain = 0.0;
    double gain_db = 0.0;  // 20*log10(gain); -inf for blocked links
};

/// What a command produced: identifiers plus the emitted file paths.
struct ResultRecord {
    std::string run_id;
    std::string config_hash;
    std::string timestamp;  // ISO 8601, UTC
    std::vector<std::string> files;
};

std::vector<GainRow> compute_gain_table(const ScenarioConfig& cfg, double x, double y);

/// CSV emitters. Every CSV starts with a `# config_hash=...` comment line and
/// a header row; all numbers are printed with fixed formats so identical runs
/// produce identical bytes.
void write_gain_csv(std::ostream& out, const std::vector<GainRow>& rows,
                    const std::string& hash);
void write_sweep_csv(std::ostream& out, const ScenarioConfig& cfg, const SweepResult& sweep,
                     const std::string& hash);
void write_heatmap_csv(std::ostream& out, const ThroughputMap& map, const std::string& hash);

/// JSON sidecar describing a heatmap's grid, scheme and provenance.
std::string heatmap_sidecar_text(const ScenarioConfig& cfg, const ThroughputMap& map,
                                 const std::string& hash);

std::string result_record_text(const ResultRecord& record);

ResultRecord make_result_record(const ScenarioConfig& cfg, const std::string& command,
                                std::vector<std::string> files);

/// Command cores shared by the CLI and the tests. Each returns the record of
/// emitted files; out_dir is created when missing.
ResultRecord cmd_gain(const ScenarioConfig& cfg, std::ostream& table_out,
                      const std::filesystem::path* out_dir);
ResultRecord cmd_ser_sweep(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                           unsigned workers = 0, bool allow_floor = false);
ResultRecord cmd_heatmap(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                         unsigned workers = 0, bool allow_floor = false);

}  // namespace vlcsim
