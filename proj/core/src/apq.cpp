#include "vlcsim/apq.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vlcsim {

namespace {

unsigned gray_encode2(unsigned q) { return q ^ (q >> 1); }
unsigned gray_decode2(unsigned g) { return g ^ (g >> 1); }  // exact for 2-bit codes

void check_components(const ComponentIndices& c, const ApqConfig& cfg) {
    if (c.amplitude >= cfg.l_amp || c.phase >= cfg.l_phase || c.quadrant >= cfg.l_quad)
        throw std::out_of_range("apq: component index out of range");
}

// Stage layout per constellation size: the 4-ary phase of M=32 is carried as
// two binary stages so each stage keeps a positive slicing margin.
std::array<unsigned, 4> to_stage_levels(const ComponentIndices& c, const ApqConfig& cfg) {
    switch (cfg.m_total) {
        case 8:  return {c.amplitude, c.quadrant, 0, 0};
        case 16: return {c.amplitude, c.phase, c.quadrant, 0};
        default: return {c.amplitude, c.phase >> 1, c.phase & 1u, c.quadrant};
    }
}

ComponentIndices from_stage_levels(const std::array<unsigned, 4>& lv, const ApqConfig& cfg) {
    switch (cfg.m_total) {
        case 8:  return {lv[0], 0, lv[1]};
        case 16: return {lv[0], lv[1], lv[2]};
        default: return {lv[0], (lv[1] << 1) | lv[2], lv[3]};
    }
}

}  // namespace

std::vector<double> power_allocation(double alpha, unsigned n_components, SicPolicy policy) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("power_allocation: alpha must be in (0, 1)");
    if (n_components < 2 || n_components > 4)
        throw std::invalid_argument("power_allocation: n_components must be in {2, 3, 4}");

    double denom = 0.0;
    double a_pow = 1.0;
    for (unsigned i = 0; i < n_components; ++i) {
        denom += a_pow;
        a_pow *= alpha;
    }
    std::vector<double> powers(n_components);
    powers[0] = 1.0 / denom;
    for (unsigned i = 1; i < n_components; ++i) powers[i] = alpha * powers[i - 1];

    if (policy == SicPolicy::Enforce) {
        double rest = 0.0;
        for (unsigned i = 1; i < n_components; ++i) rest += powers[i];
        if (!(powers[0] > rest))
            throw std::runtime_error(
                "power_allocation: SIC condition violated (P1 <= sum of weaker components); "
                "lower alpha or allow an error floor");
    }
    return powers;
}

ConstellationSplit split_for(unsigned m_total) {
    switch (m_total) {
        case 8:  return {2, 1, 4};
        case 16: return {2, 2, 4};
        case 32: return {2, 4, 4};
        default:
            throw std::invalid_argument("split_for: supported constellation sizes are 8, 16, 32");
    }
}

ApqConfig make_apq_config(unsigned m_total, double alpha, bool mean_normalize, SicPolicy policy) {
    const ConstellationSplit split = split_for(m_total);
    ApqConfig cfg;
    cfg.m_total = m_total;
    cfg.l_amp = split.l_amp;
    cfg.l_phase = split.l_phase;
    cfg.l_quad = split.l_quad;
    cfg.alpha = alpha;
    cfg.mean_normalize = mean_normalize;

    switch (m_total) {
        case 8:  cfg.stage_orders = {2, 4}; break;
        case 16: cfg.stage_orders = {2, 2, 4}; break;
        default: cfg.stage_orders = {2, 2, 2, 4}; break;
    }
    cfg.powers = power_allocation(alpha, static_cast<unsigned>(cfg.stage_orders.size()), policy);

    cfg.ring_amplitudes = {1.0, 2.0};
    cfg.phase_offsets.resize(cfg.l_phase);
    for (unsigned k = 0; k < cfg.l_phase; ++k)
        cfg.phase_offsets[k] = (2.0 * k + 1.0) * std::numbers::pi / (4.0 * cfg.l_phase);
    return cfg;
}

SicCondition sic_condition(const ApqConfig& cfg) {
    SicCondition out;
    const auto& p = cfg.powers;
    const std::size_t n = p.size();

    double rest = 0.0;
    for (std::size_t i = 1; i < n; ++i) rest += p[i];
    out.dominant = p[0] > rest;

    out.zero_floor = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        double interference = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) interference += p[j];
        const double half_spacing = p[i] / (2.0 * (cfg.stage_orders[i] - 1));
        if (!(interference < half_spacing)) out.zero_floor = false;
    }
    return out;
}

ComponentIndices index_to_components(unsigned symbol_index, const ApqConfig& cfg) {
    if (symbol_index >= cfg.m_total)
        throw std::out_of_range("index_to_components: symbol index out of range");
    const unsigned phase_bits = cfg.l_phase == 1 ? 0 : (cfg.l_phase == 2 ? 1 : 2);
    ComponentIndices c;
    c.amplitude = symbol_index >> (phase_bits + 2);
    c.phase = (symbol_index >> 2) & (cfg.l_phase - 1);
    c.quadrant = gray_decode2(symbol_index & 3u);
    return c;
}

unsigned components_to_index(const ComponentIndices& c, const ApqConfig& cfg) {
    check_components(c, cfg);
    const unsigned phase_bits = cfg.l_phase == 1 ? 0 : (cfg.l_phase == 2 ? 1 : 2);
    return (c.amplitude << (phase_bits + 2)) | (c.phase << 2) | gray_encode2(c.quadrant);
}

std::complex<double> components_to_complex(const ComponentIndices& c, const ApqConfig& cfg) {
    check_components(c, cfg);
    const double angle =
        cfg.phase_offsets[c.phase] + c.quadrant * (std::numbers::pi / 2.0);
    return std::polar(cfg.ring_amplitudes[c.amplitude], angle);
}

double pam_level(unsigned index, unsigned order) {
    if (order < 1) throw std::invalid_argument("pam_level: order must be >= 1");
    if (index >= order) throw std::out_of_range("pam_level: level index out of range");
    if (order == 1) return 0.0;
    return static_cast<double>(index) / static_cast<double>(order - 1);
}

ApqWaveformSample apq_modulate(const ComponentIndices& c, const ApqConfig& cfg) {
    check_components(c, cfg);
    const auto levels = to_stage_levels(c, cfg);
    double value = 0.0;
    for (unsigned i = 0; i < cfg.stage_count(); ++i)
        value += cfg.powers[i] * pam_level(levels[i], cfg.stage_orders[i]);
    return {value};
}

ComponentIndices sic_demodulate(double received, DetectionScale scale, const ApqConfig& cfg) {
    std::array<unsigned, 4> detected{0, 0, 0, 0};

    if (!(scale.value > 0.0)) {
        // Blocked link: no signal separation, decide by residual sign only.
        const unsigned extreme = received > 0.0 ? 1u : 0u;
        for (unsigned i = 0; i < cfg.stage_count(); ++i)
            detected[i] = extreme == 0 ? 0 : cfg.stage_orders[i] - 1;
        return from_stage_levels(detected, cfg);
    }

    double residual = received;
    for (unsigned i = 0; i < cfg.stage_count(); ++i) {
        const unsigned order = cfg.stage_orders[i];
        const double step = scale.value * cfg.powers[i];
        const double u = residual / step;  // normalized to [0,1] PAM range
        const long nearest = std::lround(u * (order - 1));
        const unsigned level =
            static_cast<unsigned>(std::clamp(nearest, 0l, static_cast<long>(order - 1)));
        detected[i] = level;
        residual -= step * pam_level(level, order);
    }
    return from_stage_levels(detected, cfg);
}

ServingLed serving_gain(std::span<const Luminaire> luminaires, const Photodetector& rx) {
    if (luminaires.empty()) throw std::invalid_argument("serving_gain: empty luminaire list");
    ServingLed best{0, channel_gain(luminaires[0], rx)};
    for (std::size_t i = 1; i < luminaires.size(); ++i) {
        const double g = channel_gain(luminaires[i], rx);
        if (g > best.gain) best = {i, g};
    }
    return best;
}

}  // namespace vlcsim
