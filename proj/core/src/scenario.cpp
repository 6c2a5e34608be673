#include "vlcsim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vlcsim {

namespace {

using nlohmann::json;

constexpr double deg2rad = std::numbers::pi / 180.0;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw std::invalid_argument("scenario config: field '" + field + "': " + what);
}

double get_number(const json& j, const std::string& field, double fallback) {
    if (!j.contains(field)) return fallback;
    if (!j.at(field).is_number()) fail(field, "expected a number");
    return j.at(field).get<double>();
}

std::uint64_t get_count(const json& j, const std::string& field, std::uint64_t fallback) {
    if (!j.contains(field)) return fallback;
    if (!j.at(field).is_number_unsigned()) fail(field, "expected a non-negative integer");
    return j.at(field).get<std::uint64_t>();
}

void check_known_keys(const json& j, const std::string& scope,
                      const std::set<std::string>& known) {
    for (const auto& item : j.items())
        if (!known.contains(item.key()))
            fail(scope.empty() ? item.key() : scope + "." + item.key(), "unknown field");
}

std::variant<ApqSchemeConfig, GsskSchemeConfig> parse_scheme(const json& j) {
    if (!j.contains("scheme"))
        fail("scheme", "required (e.g. \"apq16\", \"gssk3\", or an object with \"type\")");
    const json& s = j.at("scheme");

    if (s.is_string()) {
        const std::string name = s.get<std::string>();
        if (name == "apq8") return ApqSchemeConfig{8, 0.3, false};
        if (name == "apq16") return ApqSchemeConfig{16, 0.3, false};
        if (name == "apq32") return ApqSchemeConfig{32, 0.3, false};
        if (name == "gssk3") return GsskSchemeConfig{3, {}};
        if (name == "gssk4") return GsskSchemeConfig{4, {}};
        if (name == "gssk5") return GsskSchemeConfig{5, {}};
        fail("scheme", "unknown scheme name '" + name + "'");
    }
    if (!s.is_object()) fail("scheme", "expected a string or an object");
    if (!s.contains("type") || !s.at("type").is_string()) fail("scheme.type", "required string");
    const std::string type = s.at("type").get<std::string>();

    if (type == "apq") {
        check_known_keys(s, "scheme", {"type", "m", "alpha", "mean_normalize"});
        ApqSchemeConfig apq;
        apq.m = static_cast<unsigned>(get_count(s, "m", 16));
        apq.alpha = get_number(s, "alpha", 0.3);
        if (s.contains("mean_normalize")) {
            if (!s.at("mean_normalize").is_boolean()) fail("scheme.mean_normalize", "expected bool");
            apq.mean_normalize = s.at("mean_normalize").get<bool>();
        }
        return apq;
    }
    if (type == "gssk") {
        check_known_keys(s, "scheme", {"type", "n_tx", "led_subset"});
        GsskSchemeConfig gssk;
        gssk.n_tx = static_cast<unsigned>(get_count(s, "n_tx", 3));
        if (s.contains("led_subset")) {
            if (!s.at("led_subset").is_array()) fail("scheme.led_subset", "expected an array");
            for (const auto& v : s.at("led_subset")) {
                if (!v.is_number_unsigned()) fail("scheme.led_subset", "expected LED indices");
                gssk.led_subset.push_back(v.get<std::size_t>());
            }
        }
        return gssk;
    }
    fail("scheme.type", "must be \"apq\" or \"gssk\"");
}

}  // namespace

void validate_scenario(const ScenarioConfig& cfg, bool allow_floor) {
    if (!(cfg.room[0] > 0 && cfg.room[1] > 0 && cfg.room[2] > 0))
        fail("room", "dimensions must be positive");
    if (!(cfg.led_spacing > 0)) fail("led_spacing", "must be positive");
    if (!(cfg.led_height > cfg.rx_height)) fail("led_height", "must exceed rx_height");
    if (!(cfg.optics.semi_angle > 0 && cfg.optics.semi_angle < std::numbers::pi / 2))
        fail("optics.semi_angle_deg", "must be in (0, 90)");
    if (!(cfg.optics.fov > 0 && cfg.optics.fov <= std::numbers::pi / 2))
        fail("optics.fov_deg", "must be in (0, 90]");
    if (!(cfg.optics.area > 0)) fail("optics.area_cm2", "must be positive");
    if (!(cfg.optics.lens_index >= 1)) fail("optics.lens_index", "must be >= 1");
    if (!(cfg.optics.filter_gain > 0 && cfg.optics.filter_gain <= 1))
        fail("optics.filter_gain", "must be in (0, 1]");
    if (!(cfg.led_power_w > 0)) fail("led_power_w", "must be positive");
    if (!(cfg.data_rate_bps > 0)) fail("data_rate_bps", "must be positive");
    if (!(cfg.grid_spacing > 0)) fail("grid_spacing", "must be positive");
    for (std::size_t i = 1; i < cfg.snr_db.size(); ++i)
        if (!(cfg.snr_db[i] > cfg.snr_db[i - 1])) fail("snr_db", "must be strictly increasing");
    if (cfg.trials && *cfg.trials == 0) fail("trials", "must be >= 1");
    if (!(cfg.rx_xy[0] >= 0 && cfg.rx_xy[0] <= cfg.room[0] && cfg.rx_xy[1] >= 0 &&
          cfg.rx_xy[1] <= cfg.room[1]))
        fail("rx", "must lie inside the room floor");
    for (const Vec3& p : cfg.custom_luminaires)
        if (!is_finite(p)) fail("luminaires", "positions must be finite");

    if (const auto* apq = std::get_if<ApqSchemeConfig>(&cfg.scheme)) {
        // Builds the modem config, which checks M and (unless floors are
        // allowed) the SIC power condition.
        scenario_apq_config(*apq, allow_floor);
    } else {
        const auto& gs = std::get<GsskSchemeConfig>(cfg.scheme);
        const GsskConfig gc = scenario_gssk_config(gs);
        const std::size_t n_leds =
            cfg.custom_luminaires.empty() ? 5 : cfg.custom_luminaires.size();
        for (std::size_t idx : gc.led_indices)
            if (idx >= n_leds) fail("scheme.led_subset", "LED index out of range");
    }
}

ScenarioConfig scenario_from_json_text(const std::string& text, bool allow_floor) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(
            std::string("scenario config: not valid JSON (") + e.what() +
            "); required: scheme; optional: room, led_spacing, led_height, rx_height, "
            "luminaires, optics, led_power_w, data_rate_bps, snr_db, trials, seed, rx, "
            "grid_spacing");
    }
    if (!j.is_object()) fail("<root>", "expected a JSON object");

    check_known_keys(j, "", {"scheme", "room", "led_spacing", "led_height", "rx_height",
                             "luminaires", "optics", "led_power_w", "data_rate_bps", "snr_db",
                             "trials", "seed", "rx", "grid_spacing"});

    ScenarioConfig cfg;
    cfg.scheme = parse_scheme(j);

    if (j.contains("room")) {
        const json& r = j.at("room");
        if (!r.is_object()) fail("room", "expected an object {width, depth, height}");
        check_known_keys(r, "room", {"width", "depth", "height"});
        cfg.room = {get_number(r, "width", 4.0), get_number(r, "depth", 4.0),
                    get_number(r, "height", 3.0)};
    }
    cfg.led_spacing = get_number(j, "led_spacing", 1.0);
    cfg.led_height = get_number(j, "led_height", cfg.room[2]);
    cfg.rx_height = get_number(j, "rx_height", 0.75);

    if (j.contains("luminaires")) {
        const json& arr = j.at("luminaires");
        if (!arr.is_array() || arr.empty()) fail("luminaires", "expected a non-empty array");
        for (const auto& p : arr) {
            if (!p.is_array() || p.size() != 3) fail("luminaires", "expected [x, y, z] triples");
            cfg.custom_luminaires.push_back(
                {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
        }
    }

    if (j.contains("optics")) {
        const json& o = j.at("optics");
        if (!o.is_object()) fail("optics", "expected an object");
        check_known_keys(o, "optics",
                         {"semi_angle_deg", "fov_deg", "area_cm2", "lens_index", "filter_gain"});
        cfg.optics.semi_angle = get_number(o, "semi_angle_deg", 30.0) * deg2rad;
        cfg.optics.fov = get_number(o, "fov_deg", 30.0) * deg2rad;
        cfg.optics.area = get_number(o, "area_cm2", 1.0) * 1e-4;
        cfg.optics.lens_index = get_number(o, "lens_index", 1.5);
        cfg.optics.filter_gain = get_number(o, "filter_gain", 1.0);
    } else {
        cfg.optics = OpticsConfig{30.0 * deg2rad, 30.0 * deg2rad, 1e-4, 1.5, 1.0};
    }

    cfg.led_power_w = get_number(j, "led_power_w", 0.25);
    cfg.data_rate_bps = get_number(j, "data_rate_bps", 1e7);

    if (j.contains("snr_db")) {
        const json& s = j.at("snr_db");
        if (s.is_number()) {
            cfg.snr_db = {s.get<double>()};
        } else if (s.is_array() && !s.empty()) {
            for (const auto& v : s) {
                if (!v.is_number()) fail("snr_db", "expected numbers");
                cfg.snr_db.push_back(v.get<double>());
            }
        } else {
            fail("snr_db", "expected a number or a non-empty array");
        }
    }

    if (j.contains("trials")) cfg.trials = get_count(j, "trials", 0);
    cfg.seed = get_count(j, "seed", 1);

    if (j.contains("rx")) {
        const json& r = j.at("rx");
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
            fail("rx", "expected [x, y]");
        cfg.rx_xy = {r[0].get<double>(), r[1].get<double>()};
    }
    cfg.grid_spacing = get_number(j, "grid_spacing", 0.1);

    validate_scenario(cfg, allow_floor);
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path, bool allow_floor) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_scenario: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json_text(buf.str(), allow_floor);
}

std::string scenario_to_json_text(const ScenarioConfig& cfg) {
    json j;
    if (const auto* apq = std::get_if<ApqSchemeConfig>(&cfg.scheme)) {
        j["scheme"] = {{"type", "apq"},
                       {"m", apq->m},
                       {"alpha", apq->alpha},
                       {"mean_normalize", apq->mean_normalize}};
    } else {
        const auto& gs = std::get<GsskSchemeConfig>(cfg.scheme);
        const GsskConfig gc = scenario_gssk_config(gs);
        j["scheme"] = {{"type", "gssk"}, {"n_tx", gs.n_tx}, {"led_subset", gc.led_indices}};
    }
    j["room"] = {{"width", cfg.room[0]}, {"depth", cfg.room[1]}, {"height", cfg.room[2]}};
    j["led_spacing"] = cfg.led_spacing;
    j["led_height"] = cfg.led_height;
    j["rx_height"] = cfg.rx_height;
    if (!cfg.custom_luminaires.empty()) {
        json arr = json::array();
        for (const Vec3& p : cfg.custom_luminaires) arr.push_back({p.x, p.y, p.z});
        j["luminaires"] = arr;
    }
    j["optics"] = {{"semi_angle_deg", cfg.optics.semi_angle / deg2rad},
                   {"fov_deg", cfg.optics.fov / deg2rad},
                   {"area_cm2", cfg.optics.area * 1e4},
                   {"lens_index", cfg.optics.lens_index},
                   {"filter_gain", cfg.optics.filter_gain}};
    j["led_power_w"] = cfg.led_power_w;
    j["data_rate_bps"] = cfg.data_rate_bps;
    if (!cfg.snr_db.empty()) j["snr_db"] = cfg.snr_db;
    if (cfg.trials) j["trials"] = *cfg.trials;
    j["seed"] = cfg.seed;
    j["rx"] = cfg.rx_xy;
    j["grid_spacing"] = cfg.grid_spacing;
    return j.dump(2);  // nlohmann objects iterate in sorted key order
}

std::string config_hash(const ScenarioConfig& cfg) {
    const std::string text = scenario_to_json_text(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
    return out;
}

std::vector<Luminaire> scenario_luminaires(const ScenarioConfig& cfg) {
    std::vector<Luminaire> leds;
    if (!cfg.custom_luminaires.empty()) {
        leds.reserve(cfg.custom_luminaires.size());
        for (const Vec3& p : cfg.custom_luminaires)
            leds.emplace_back(p, cfg.optics.semi_angle);
        return leds;
    }
    const double cx = cfg.room[0] / 2.0;
    const double cy = cfg.room[1] / 2.0;
    const double d = cfg.led_spacing;
    const double z = cfg.led_height;
    const Vec3 layout[5] = {{cx - d, cy - d, z},
                            {cx + d, cy + d, z},
                            {cx, cy, z},
                            {cx - d, cy + d, z},
                            {cx + d, cy - d, z}};
    leds.reserve(5);
    for (const Vec3& p : layout) leds.emplace_back(p, cfg.optics.semi_angle);
    return leds;
}

Photodetector scenario_receiver(const ScenarioConfig& cfg, double x, double y) {
    return {{x, y, cfg.rx_height}, cfg.optics.area, cfg.optics.fov, cfg.optics.lens_index,
            cfg.optics.filter_gain};
}

std::string scheme_id(const ScenarioConfig& cfg) {
    if (const auto* apq = std::get_if<ApqSchemeConfig>(&cfg.scheme))
        return "apq" + std::to_string(apq->m);
    return "gssk" + std::to_string(std::get<GsskSchemeConfig>(cfg.scheme).n_tx);
}

unsigned scheme_bits(const ScenarioConfig& cfg) {
    if (const auto* apq = std::get_if<ApqSchemeConfig>(&cfg.scheme)) {
        unsigned bits = 0;
        while ((1u << bits) < apq->m) ++bits;
        return bits;
    }
    return std::get<GsskSchemeConfig>(cfg.scheme).n_tx;
}

std::vector<double> sweep_snrs(const ScenarioConfig& cfg) {
    if (!cfg.snr_db.empty()) return cfg.snr_db;
    std::vector<double> snrs;
    for (double v = 110.0; v <= 150.0; v += 5.0) snrs.push_back(v);
    return snrs;
}

double heatmap_snr(const ScenarioConfig& cfg) {
    if (!cfg.snr_db.empty()) {
        if (cfg.snr_db.size() != 1)
            throw std::invalid_argument("heatmap_snr: heatmaps take a single snr_db value");
        return cfg.snr_db[0];
    }
    switch (scheme_bits(cfg)) {
        case 3: return 130.0;
        case 4: return 140.0;
        default: return 150.0;
    }
}

std::uint64_t sweep_trials(const ScenarioConfig& cfg) { return cfg.trials.value_or(1000000); }

std::uint64_t heatmap_trials(const ScenarioConfig& cfg) { return cfg.trials.value_or(100000); }

ApqConfig scenario_apq_config(const ApqSchemeConfig& scheme, bool allow_floor) {
    return make_apq_config(scheme.m, scheme.alpha, scheme.mean_normalize,
                           allow_floor ? SicPolicy::Allow : SicPolicy::Enforce);
}

GsskConfig scenario_gssk_config(const GsskSchemeConfig& scheme) {
    return make_gssk_config(scheme.n_tx, scheme.led_subset);
}

}  // namespace vlcsim
