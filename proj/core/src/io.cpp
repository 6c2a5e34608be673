#include "vlcsim/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace vlcsim {

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string utc_now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm {};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace

std::vector<GainRow> compute_gain_table(const ScenarioConfig& cfg, double x, double y) {
    const auto luminaires = scenario_luminaires(cfg);
    const Photodetector rx = scenario_receiver(cfg, x, y);
    std::vector<GainRow> rows;
    rows.reserve(luminaires.size());
    for (std::size_t i = 0; i < luminaires.size(); ++i) {
        const double g = channel_gain(luminaires[i], rx);
        rows.push_back({i + 1, g, 20.0 * std::log10(g)});
    }
    return rows;
}

void write_gain_csv(std::ostream& out, const std::vector<GainRow>& rows,
                    const std::string& hash) {
    out << "# config_hash=" << hash << "\n";
    out << "led_id,gain,gain_db\n";
    for (const GainRow& r : rows)
        out << r.led_id << "," << fmt("%.9e", r.gain) << "," << fmt("%.4f", r.gain_db) << "\n";
}

void write_sweep_csv(std::ostream& out, const ScenarioConfig& cfg, const SweepResult& sweep,
                     const std::string& hash) {
    out << "# config_hash=" << hash << "\n";
    out << "snr_db,ser_mc,stderr,ser_analytic,scheme,rx_x,rx_y\n";
    for (const SweepPoint& pt : sweep.points) {
        out << fmt("%g", pt.snr_db) << "," << fmt("%.9g", pt.estimate.ser) << ","
            << fmt("%.9g", pt.estimate.std_error) << ",";
        if (!std::isnan(pt.ser_analytic)) out << fmt("%.9g", pt.ser_analytic);
        out << "," << sweep.scheme << "," << fmt("%g", cfg.rx_xy[0]) << ","
            << fmt("%g", cfg.rx_xy[1]) << "\n";
    }
}

void write_heatmap_csv(std::ostream& out, const ThroughputMap& map, const std::string& hash) {
    out << "# config_hash=" << hash << "\n";
    for (std::size_t r = 0; r < map.ny; ++r) {
        for (std::size_t c = 0; c < map.nx; ++c) {
            if (c) out << ",";
            out << fmt("%.6f", map.at(r, c));
        }
        out << "\n";
    }
}

std::string heatmap_sidecar_text(const ScenarioConfig& cfg, const ThroughputMap& map,
                                 const std::string& hash) {
    nlohmann::json j;
    j["config_hash"] = hash;
    j["scheme"] = scheme_id(cfg);
    j["bits_per_symbol"] = scheme_bits(cfg);
    j["snr_db"] = map.snr_db;
    j["grid"] = {{"origin_x", map.origin_x},
                 {"origin_y", map.origin_y},
                 {"spacing", map.spacing},
                 {"nx", map.nx},
                 {"ny", map.ny}};
    j["seed"] = cfg.seed;
    j["trials_per_cell"] = heatmap_trials(cfg);
    j["data_rate_bps"] = cfg.data_rate_bps;
    j["values"] = "row-major (1 - SER) normalized to the map maximum";
    return j.dump(2) + "\n";
}

std::string result_record_text(const ResultRecord& record) {
    nlohmann::json j;
    j["run_id"] = record.run_id;
    j["config_hash"] = record.config_hash;
    j["timestamp"] = record.timestamp;
    j["files"] = record.files;
    return j.dump();
}

ResultRecord make_result_record(const ScenarioConfig& cfg, const std::string& command,
                                std::vector<std::string> files) {
    ResultRecord rec;
    rec.config_hash = config_hash(cfg);
    rec.run_id = command + "-" + rec.config_hash + "-s" + std::to_string(cfg.seed);
    rec.timestamp = utc_now_iso8601();
    rec.files = std::move(files);
    return rec;
}

ResultRecord cmd_gain(const ScenarioConfig& cfg, std::ostream& table_out,
                      const std::filesystem::path* out_dir) {
    const auto rows = compute_gain_table(cfg, cfg.rx_xy[0], cfg.rx_xy[1]);
    const std::string hash = config_hash(cfg);

    std::ostringstream csv;
    write_gain_csv(csv, rows, hash);
    table_out << csv.str();

    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].gain > rows[best].gain) best = i;
    table_out << "# serving_led=" << rows[best].led_id << "\n";

    std::vector<std::string> files;
    if (out_dir) {
        std::filesystem::create_directories(*out_dir);
        const auto path = *out_dir / "gain.csv";
        write_file(path, csv.str());
        files.push_back(path.string());
    }
    return make_result_record(cfg, "gain", std::move(files));
}

ResultRecord cmd_ser_sweep(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                           unsigned workers, bool allow_floor) {
    const SweepResult sweep = run_scenario_sweep(cfg, workers, allow_floor);
    const std::string hash = config_hash(cfg);

    std::filesystem::create_directories(out_dir);
    const auto path = out_dir / (scheme_id(cfg) + "_sweep.csv");
    std::ostringstream csv;
    write_sweep_csv(csv, cfg, sweep, hash);
    write_file(path, csv.str());
    return make_result_record(cfg, "ser-sweep", {path.string()});
}

ResultRecord cmd_heatmap(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                         unsigned workers, bool allow_floor) {
    const double snr = heatmap_snr(cfg);
    const ThroughputMap map = throughput_map(cfg, snr, cfg.grid_spacing, heatmap_trials(cfg),
                                             cfg.seed, workers, allow_floor);
    const std::string hash = config_hash(cfg);

    std::filesystem::create_directories(out_dir);
    const auto csv_path = out_dir / (scheme_id(cfg) + "_heatmap.csv");
    const auto meta_path = out_dir / (scheme_id(cfg) + "_heatmap_meta.json");

    std::ostringstream csv;
    write_heatmap_csv(csv, map, hash);
    write_file(csv_path, csv.str());
    write_file(meta_path, heatmap_sidecar_text(cfg, map, hash));
    return make_result_record(cfg, "heatmap", {csv_path.string(), meta_path.string()});
}

}  // namespace vlcsim
