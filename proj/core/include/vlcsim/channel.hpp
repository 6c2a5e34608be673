#pragma once

#include "vlcsim/geometry.hpp"

namespace vlcsim {

/// Downlink LED with a generalized-Lambertian emission pattern.
struct Luminaire {
    Vec3 position;
    Vec3 orientation{0.0, 0.0, -1.0};  // unit vector, default straight down
    double semi_angle;                 // half-power semi-angle, radians
    double lambertian_order;           // derived from semi_angle

    Luminaire(Vec3 pos, double semi_angle_rad, Vec3 orient = {0.0, 0.0, -1.0});
};

/// Receiving photodiode front-end (area, field of view, concentrator optics).
struct Photodetector {
    Vec3 position;
    Vec3 orientation{0.0, 0.0, 1.0};  // unit vector, default straight up
    double area;                      // m^2
    double fov;                       // radians, half-angle
    double lens_index;                // concentrator refractive index
    double filter_gain;               // optical filter gain, (0,1]

    Photodetector(Vec3 pos, double area_m2, double fov_rad, double lens_index_,
                  double filter_gain_, Vec3 orient = {0.0, 0.0, 1.0});
};

/// The factor multiplying every normalized signal level at the detector:
/// channel gain times the transmit-SNR amplitude ratio, with total transmit
/// power normalized to 1 and unit-variance receiver noise.
struct DetectionScale {
    double value = 0.0;
};

/// Lambertian emission order m for a given half-power semi-angle.
double lambertian_order(double semi_angle);

/// Radiant intensity (1/sr) at `emergence_angle` off the transmitter axis.
double radiant_intensity(double emergence_angle, double order);

/// Optical concentrator gain; zero outside the field of view.
double concentrator_gain(double incidence_angle, double lens_index, double fov);

/// Line-of-sight channel gain between a luminaire and a photodetector.
/// Exactly zero when the incidence angle exceeds the detector FOV.
double channel_gain(const Luminaire& tx, const Photodetector& rx);

/// Converts a transmit SNR in dB into the detection scale for a link.
DetectionScale detection_scale(double gain, double snr_tx_db);

}  // namespace vlcsim
