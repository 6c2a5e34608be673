#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace vlcsim {

/// Which LEDs are on during one GSSK symbol.
struct ActivationPattern {
    std::vector<std::uint8_t> bits;  // length n_tx, MSB of the symbol first
};

/// Spatial-keying configuration: N_T LEDs carry log2(M) = N_T bits per symbol.
/// Per-LED amplitude is set so the symbol-averaged total optical power is 1.
struct GsskConfig {
    unsigned n_tx = 3;
    std::vector<std::size_t> led_indices;  // scenario luminaires carrying each bit
    double amplitude_per_led = 2.0 / 3.0;

    unsigned symbol_count() const { return 1u << n_tx; }
};

/// Builds a config for n_tx in {3, 4, 5}; default led_indices are 0..n_tx-1.
GsskConfig make_gssk_config(unsigned n_tx, std::vector<std::size_t> led_indices = {});

/// Binary expansion of the symbol; bit 0 of the pattern is the MSB.
ActivationPattern gssk_modulate(unsigned symbol_index, const GsskConfig& cfg);

/// Noiseless received electrical mean for a pattern under per-LED gains
/// (gains are in whatever scale the received samples use).
double gssk_received_mean(const ActivationPattern& pattern, std::span<const double> gains,
                          const GsskConfig& cfg);

/// Maximum-likelihood detection over all M activation hypotheses; ties are
/// broken toward the lowest symbol index.
unsigned gssk_detect_ml(double received, std::span<const double> gains, const GsskConfig& cfg);

/// Same decision rule over precomputed per-symbol hypothesis means.
unsigned gssk_detect_ml(double received, std::span<const double> hypothesis_means);

}  // namespace vlcsim
