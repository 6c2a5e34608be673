#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "vlcsim/channel.hpp"

namespace vlcsim {

/// The (amplitude, phase, quadrant) triple a constellation symbol splits into.
struct ComponentIndices {
    unsigned amplitude = 0;  // ring index, [0, l_amp)
    unsigned phase = 0;      // in-quadrant phase index, [0, l_phase)
    unsigned quadrant = 0;   // quadrant index, [0, 4)

    friend bool operator==(const ComponentIndices&, const ComponentIndices&) = default;
};

/// One transmitted optical amplitude, normalized to [0, 1].
struct ApqWaveformSample {
    double value = 0.0;
};

/// Whether a power allocation admits staged decoding.
/// `dominant` is the coarse requirement P1 > sum of the weaker components
/// that SIC relies on; `zero_floor` is the stricter per-stage slicing margin
/// that makes noiseless SIC exact for every symbol.
struct SicCondition {
    bool dominant = false;
    bool zero_floor = false;
};

enum class SicPolicy { Enforce, Allow };

/// Constellation split and power-domain layout for one M-ary configuration.
///
/// The amplitude component is binary, the quadrant component is 4-PAM, and a
/// 4-ary phase component is carried as two binary stages so every stage keeps
/// a positive noiseless slicing margin under the geometric power allocation.
struct ApqConfig {
    unsigned m_total = 16;
    unsigned l_amp = 2;
    unsigned l_phase = 2;
    unsigned l_quad = 4;
    double alpha = 0.3;
    std::vector<unsigned> stage_orders;    // PAM order per superposed stage
    std::vector<double> powers;            // per-stage power, decreasing, sums to 1
    std::vector<double> ring_amplitudes;   // display constellation radii
    std::vector<double> phase_offsets;     // in-quadrant phases, radians
    bool mean_normalize = false;           // divide the waveform by its symbol mean

    unsigned stage_count() const { return static_cast<unsigned>(powers.size()); }

    /// Multiplier applied to the transmitted waveform when mean_normalize is
    /// set (the symbol-averaged amplitude is exactly 1/2 for every split).
    double amplitude_multiplier() const { return mean_normalize ? 2.0 : 1.0; }
};

struct ConstellationSplit {
    unsigned l_amp;
    unsigned l_phase;
    unsigned l_quad;
};

/// Geometric fixed power allocation: P_i = alpha * P_{i-1}, sum = 1.
/// With SicPolicy::Enforce, throws when P1 <= sum of the remaining powers.
std::vector<double> power_allocation(double alpha, unsigned n_components,
                                     SicPolicy policy = SicPolicy::Enforce);

/// Component orders for a supported constellation size (M in {8, 16, 32}).
ConstellationSplit split_for(unsigned m_total);

ApqConfig make_apq_config(unsigned m_total, double alpha, bool mean_normalize = false,
                          SicPolicy policy = SicPolicy::Enforce);

SicCondition sic_condition(const ApqConfig& cfg);

/// Bit partition: MSBs to amplitude, then phase, then Gray-coded quadrant.
ComponentIndices index_to_components(unsigned symbol_index, const ApqConfig& cfg);
unsigned components_to_index(const ComponentIndices& c, const ApqConfig& cfg);

/// Reporting constellation point: ring_amplitudes[a] * exp(j*(phase + q*pi/2)).
std::complex<double> components_to_complex(const ComponentIndices& c, const ApqConfig& cfg);

/// Unipolar PAM level, equally spaced on [0, 1] including 0.
double pam_level(unsigned index, unsigned order);

/// Power-domain superposition of the component PAM signals.
ApqWaveformSample apq_modulate(const ComponentIndices& c, const ApqConfig& cfg);

/// Staged successive interference cancellation: slice the strongest component
/// against the others, subtract, repeat. Always returns a decision.
ComponentIndices sic_demodulate(double received, DetectionScale scale, const ApqConfig& cfg);

struct ServingLed {
    std::size_t index = 0;
    double gain = 0.0;
};

/// The luminaire with maximum channel gain to the receiver (lowest index wins
/// ties). Gain may be zero when the receiver is outside every FOV.
ServingLed serving_gain(std::span<const Luminaire> luminaires, const Photodetector& rx);

}  // namespace vlcsim
