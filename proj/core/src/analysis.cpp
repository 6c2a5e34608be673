#include "vlcsim/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vlcsim {

double q_function(double x) {
    if (std::isnan(x)) throw std::domain_error("q_function: NaN argument");
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double ser_amplitude(DetectionScale scale, const std::array<double, 3>& powers) {
    const auto [p1, p2, p3] = powers;
    const double s = scale.value;
    double sum = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        const double interference =
            p2 * InterferenceTables::delta2[i] + p3 * InterferenceTables::delta3[i];
        sum += q_function(s * (p1 / 2.0 - interference));
        sum += q_function(s * (p1 / 2.0 + interference));
    }
    return sum / 16.0;
}

double ser_phase_given(DetectionScale scale, const std::array<double, 3>& powers, int e1) {
    const auto [p1, p2, p3] = powers;
    const double s = scale.value;
    double sum = 0.0;
    for (double d3 : InterferenceTables::delta3_stage2) {
        sum += q_function(s * (p2 / 2.0 - p3 * d3 - e1 * p1));
        sum += q_function(s * (p2 / 2.0 + p3 * d3 + e1 * p1));
    }
    return sum / 8.0;
}

namespace {

// Residual-sign prior: correct detection keeps e = 0, an error splits evenly
// between the two neighbor directions.
double residual_prob(double stage_error, int e) {
    return e == 0 ? 1.0 - stage_error : stage_error / 2.0;
}

}  // namespace

double ser_phase(DetectionScale scale, const std::array<double, 3>& powers) {
    const double pr1 = ser_amplitude(scale, powers);
    double total = 0.0;
    for (int e1 : {-1, 0, 1})
        total += residual_prob(pr1, e1) * ser_phase_given(scale, powers, e1);
    return total;
}

double ser_quadrant_given(DetectionScale scale, const std::array<double, 3>& powers,
                          SicErrorContext ctx) {
    const auto [p1, p2, p3] = powers;
    const double shift = ctx.e1 * p1 + ctx.e2 * p2;
    return 0.75 * (q_function(scale.value * (p3 / 6.0 - shift)) +
                   q_function(scale.value * (p3 / 6.0 + shift)));
}

double ser_quadrant(DetectionScale scale, const std::array<double, 3>& powers) {
    const double pr1 = ser_amplitude(scale, powers);
    double total = 0.0;
    for (int e1 : {-1, 0, 1}) {
        const double pr2_cond = ser_phase_given(scale, powers, e1);
        for (int e2 : {-1, 0, 1})
            total += residual_prob(pr2_cond, e2) * residual_prob(pr1, e1) *
                     ser_quadrant_given(scale, powers, {e1, e2});
    }
    return total;
}

double ser_total(DetectionScale scale, const std::array<double, 3>& powers) {
    const double pr1 = ser_amplitude(scale, powers);
    const double pr2 = ser_phase(scale, powers);
    const double pr3 = ser_quadrant(scale, powers);
    // expanded form of 1 - (1-pr1)(1-pr2)(1-pr3); the product would round
    // probabilities below machine epsilon away entirely
    return pr1 + pr2 + pr3 - pr1 * pr2 - pr1 * pr3 - pr2 * pr3 + pr1 * pr2 * pr3;
}

std::array<double, 3> analysis_powers(const ApqConfig& cfg) {
    if (cfg.stage_count() != 3 || cfg.stage_orders != std::vector<unsigned>{2, 2, 4})
        throw std::invalid_argument(
            "analysis_powers: closed-form SER covers the 16-ary (2,2,4) configuration only");
    return {cfg.powers[0], cfg.powers[1], cfg.powers[2]};
}

}  // namespace vlcsim
