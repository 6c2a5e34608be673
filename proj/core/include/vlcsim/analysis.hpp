#pragma once

#include <array>

#include "vlcsim/apq.hpp"
#include "vlcsim/channel.hpp"

namespace vlcsim {

/// Residual-interference signs from earlier SIC stages.
struct SicErrorContext {
    int e1 = 0;  // amplitude-stage residual, in {-1, 0, +1}
    int e2 = 0;  // phase-stage residual, in {-1, 0, +1}
};

/// Interference level combinations seen by the amplitude slicer: all pairs of
/// the binary phase level and the four quadrant PAM levels.
struct InterferenceTables {
    static constexpr std::array<double, 8> delta2{0, 0, 0, 0, 1, 1, 1, 1};
    static constexpr std::array<double, 8> delta3{0.0,     1.0 / 3.0, 2.0 / 3.0, 1.0,
                                                  0.0,     1.0 / 3.0, 2.0 / 3.0, 1.0};
    static constexpr std::array<double, 4> delta3_stage2{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
};

/// Gaussian tail probability Q(x) = erfc(x / sqrt(2)) / 2.
double q_function(double x);

/// Closed-form stage and total symbol error probabilities for the 16-ary
/// configuration (binary amplitude, binary phase, 4-PAM quadrant).
/// `powers` is the (P1, P2, P3) allocation; `scale` the detection scale.
double ser_amplitude(DetectionScale scale, const std::array<double, 3>& powers);
double ser_phase(DetectionScale scale, const std::array<double, 3>& powers);
double ser_quadrant(DetectionScale scale, const std::array<double, 3>& powers);
double ser_total(DetectionScale scale, const std::array<double, 3>& powers);

/// Phase-stage error probability conditioned on the amplitude-stage residual.
double ser_phase_given(DetectionScale scale, const std::array<double, 3>& powers, int e1);

/// Quadrant-stage error probability conditioned on both earlier residuals.
double ser_quadrant_given(DetectionScale scale, const std::array<double, 3>& powers,
                          SicErrorContext ctx);

/// Adapter for a 3-stage modem configuration; throws for other stage counts.
std::array<double, 3> analysis_powers(const ApqConfig& cfg);

}  // namespace vlcsim
