#include "vlcsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vlcsim {

namespace {
constexpr double half_pi = std::numbers::pi / 2.0;
}

Luminaire::Luminaire(Vec3 pos, double semi_angle_rad, Vec3 orient)
    : position(pos),
      orientation(normalized(orient)),
      semi_angle(semi_angle_rad),
      lambertian_order(vlcsim::lambertian_order(semi_angle_rad)) {
    if (!is_finite(pos)) throw std::invalid_argument("Luminaire: non-finite position");
}

Photodetector::Photodetector(Vec3 pos, double area_m2, double fov_rad, double lens_index_,
                             double filter_gain_, Vec3 orient)
    : position(pos),
      orientation(normalized(orient)),
      area(area_m2),
      fov(fov_rad),
      lens_index(lens_index_),
      filter_gain(filter_gain_) {
    if (!is_finite(pos)) throw std::invalid_argument("Photodetector: non-finite position");
    if (!(area > 0.0)) throw std::invalid_argument("Photodetector: area must be positive");
    if (!(fov > 0.0 && fov <= half_pi))
        throw std::invalid_argument("Photodetector: fov must be in (0, pi/2]");
    if (!(lens_index >= 1.0)) throw std::invalid_argument("Photodetector: lens_index must be >= 1");
    if (!(filter_gain > 0.0 && filter_gain <= 1.0))
        throw std::invalid_argument("Photodetector: filter_gain must be in (0, 1]");
}

double lambertian_order(double semi_angle) {
    if (!(semi_angle > 0.0 && semi_angle < half_pi))
        throw std::domain_error("lambertian_order: semi_angle must be in (0, pi/2)");
    return -std::numbers::ln2 / std::log(std::cos(semi_angle));
}

double radiant_intensity(double emergence_angle, double order) {
    if (!(order > 0.0)) throw std::domain_error("radiant_intensity: order must be positive");
    if (!(emergence_angle >= 0.0 && emergence_angle <= half_pi))
        throw std::domain_error("radiant_intensity: emergence_angle must be in [0, pi/2]");
    return (order + 1.0) / (2.0 * std::numbers::pi) * std::pow(std::cos(emergence_angle), order);
}

double concentrator_gain(double incidence_angle, double lens_index, double fov) {
    if (!(lens_index >= 1.0)) throw std::domain_error("concentrator_gain: lens_index must be >= 1");
    if (!(fov > 0.0 && fov <= half_pi))
        throw std::domain_error("concentrator_gain: fov must be in (0, pi/2]");
    if (incidence_angle < 0.0 || incidence_angle > fov) return 0.0;
    const double s = std::sin(fov);
    return lens_index * lens_index / (s * s);
}

double channel_gain(const Luminaire& tx, const Photodetector& rx) {
    const Vec3 delta = rx.position - tx.position;
    const double dist = norm(delta);
    if (dist == 0.0) throw std::invalid_argument("channel_gain: coincident positions");
    const Vec3 ray{delta.x / dist, delta.y / dist, delta.z / dist};

    const double cos_emergence = std::clamp(dot(tx.orientation, ray), -1.0, 1.0);
    const double cos_incidence = std::clamp(dot(rx.orientation, -ray), -1.0, 1.0);

    const double incidence = std::acos(cos_incidence);
    if (incidence > rx.fov) return 0.0;
    if (cos_emergence <= 0.0) return 0.0;  // behind the emitting panel
    const double emergence = std::acos(cos_emergence);

    return rx.area / (dist * dist) * radiant_intensity(emergence, tx.lambertian_order) *
           rx.filter_gain * concentrator_gain(incidence, rx.lens_index, rx.fov) * cos_incidence;
}

DetectionScale detection_scale(double gain, double snr_tx_db) {
    if (!(gain >= 0.0)) throw std::domain_error("detection_scale: gain must be non-negative");
    return {gain * std::pow(10.0, snr_tx_db / 20.0)};
}

}  // namespace vlcsim
