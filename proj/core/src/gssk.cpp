#include "vlcsim/gssk.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace vlcsim {

GsskConfig make_gssk_config(unsigned n_tx, std::vector<std::size_t> led_indices) {
    if (n_tx < 1 || n_tx > 5)
        throw std::invalid_argument("make_gssk_config: n_tx must be in [1, 5]");
    GsskConfig cfg;
    cfg.n_tx = n_tx;
    if (led_indices.empty()) {
        cfg.led_indices.resize(n_tx);
        std::iota(cfg.led_indices.begin(), cfg.led_indices.end(), 0);
    } else {
        if (led_indices.size() != n_tx)
            throw std::invalid_argument("make_gssk_config: led_indices size must equal n_tx");
        cfg.led_indices = std::move(led_indices);
    }
    // Average active-LED count over all 2^N patterns is N/2, so 2/N per LED
    // makes the symbol-averaged total transmit power exactly 1.
    cfg.amplitude_per_led = 2.0 / n_tx;
    return cfg;
}

ActivationPattern gssk_modulate(unsigned symbol_index, const GsskConfig& cfg) {
    if (symbol_index >= cfg.symbol_count())
        throw std::out_of_range("gssk_modulate: symbol index out of range");
    ActivationPattern p;
    p.bits.resize(cfg.n_tx);
    for (unsigned i = 0; i < cfg.n_tx; ++i)
        p.bits[i] = (symbol_index >> (cfg.n_tx - 1 - i)) & 1u;
    return p;
}

double gssk_received_mean(const ActivationPattern& pattern, std::span<const double> gains,
                          const GsskConfig& cfg) {
    if (pattern.bits.size() != cfg.n_tx || gains.size() != cfg.n_tx)
        throw std::invalid_argument("gssk_received_mean: pattern/gain length mismatch");
    double sum = 0.0;
    for (unsigned i = 0; i < cfg.n_tx; ++i)
        if (pattern.bits[i]) sum += gains[i];
    return cfg.amplitude_per_led * sum;
}

unsigned gssk_detect_ml(double received, std::span<const double> hypothesis_means) {
    unsigned best = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (unsigned k = 0; k < hypothesis_means.size(); ++k) {
        const double d = received - hypothesis_means[k];
        if (d * d < best_dist) {
            best_dist = d * d;
            best = k;
        }
    }
    return best;
}

unsigned gssk_detect_ml(double received, std::span<const double> gains, const GsskConfig& cfg) {
    if (gains.size() != cfg.n_tx)
        throw std::invalid_argument("gssk_detect_ml: gain length mismatch");
    std::vector<double> means(cfg.symbol_count());
    for (unsigned k = 0; k < cfg.symbol_count(); ++k) {
        double mean = 0.0;
        for (unsigned i = 0; i < cfg.n_tx; ++i)
            if ((k >> (cfg.n_tx - 1 - i)) & 1u) mean += gains[i];
        means[k] = cfg.amplitude_per_led * mean;
    }
    return gssk_detect_ml(received, means);
}

}  // namespace vlcsim
