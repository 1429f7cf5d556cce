#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

// Radar-derived target kinematics: round-trip delay to range, polar to
// Cartesian position, Doppler shift to relative and absolute velocity.
//
// Sensor-model convention: position resolves the range along (cos θ, sin θ)
// with x on the boresight, while velocity resolves the target speed along
// (sin θ, cos θ) with the cosine on v_y. The two conventions are kept as-is;
// see the README sensor-model notes.

namespace mcdas::kinematics {

/// Target role as seen from the host sensor pair.
enum class TargetRole { Front, Rear };

struct SensorConstants {
    double propagation_speed = 3.0e8;   // c [m/s]
    double carrier_frequency = 76.5e9;  // f_c [Hz]
};

/// One simulated radar observation of a single target.
class RadarReturn {
public:
    RadarReturn(double delay, double bearing, double freq_received, double freq_transmitted)
        : delay_(delay),
          bearing_(bearing),
          freq_received_(freq_received),
          freq_transmitted_(freq_transmitted) {
        if (!(delay >= 0.0)) {
            throw std::invalid_argument("RadarReturn: delay must be >= 0");
        }
        constexpr double half_pi = std::numbers::pi / 2.0;
        // Field of view of a forward/rear-looking sensor: (-pi/2, pi/2].
        if (!(bearing > -half_pi && bearing <= half_pi)) {
            throw std::invalid_argument("RadarReturn: bearing outside (-pi/2, pi/2]");
        }
        if (!(freq_received > 0.0) || !(freq_transmitted > 0.0)) {
            throw std::invalid_argument("RadarReturn: frequencies must be > 0");
        }
    }

    double delay() const { return delay_; }
    double bearing() const { return bearing_; }
    double freq_received() const { return freq_received_; }
    double freq_transmitted() const { return freq_transmitted_; }

private:
    double delay_;
    double bearing_;
    double freq_received_;
    double freq_transmitted_;
};

struct CartesianPoint {
    double x = 0.0;  // [m]
    double y = 0.0;  // [m]
};

/// Decoded position and velocity of one target.
struct TargetKinematics {
    CartesianPoint position;
    double speed = 0.0;       // V_T [m/s]
    double velocity_x = 0.0;  // [m/s]
    double velocity_y = 0.0;  // [m/s]
    TargetRole role = TargetRole::Front;
};

/// Range from round-trip delay: R = c*tau/2.
inline double range_from_delay(const RadarReturn& ret, const SensorConstants& k) {
    if (!(ret.delay() >= 0.0)) {
        throw std::invalid_argument("range_from_delay: negative delay");
    }
    return k.propagation_speed * ret.delay() / 2.0;
}

/// x = R cos(theta), y = R sin(theta).
inline CartesianPoint polar_to_cartesian(double range, double bearing) {
    if (!(range >= 0.0)) {
        throw std::invalid_argument("polar_to_cartesian: negative range");
    }
    return {range * std::cos(bearing), range * std::sin(bearing)};
}

inline double euclidean_distance(const CartesianPoint& target, const CartesianPoint& sensor) {
    if (!std::isfinite(target.x) || !std::isfinite(target.y) ||
        !std::isfinite(sensor.x) || !std::isfinite(sensor.y)) {
        throw std::invalid_argument("euclidean_distance: non-finite input");
    }
    return std::hypot(target.x - sensor.x, target.y - sensor.y);
}

/// f_D = f_r - f_t; negative for a receding target.
inline double doppler_shift(const RadarReturn& ret) {
    return ret.freq_received() - ret.freq_transmitted();
}

/// V_R = c*f_D / (2 f_c).
inline double relative_velocity(double doppler_hz, const SensorConstants& k) {
    if (!(k.carrier_frequency > 0.0)) {
        throw std::invalid_argument("relative_velocity: carrier frequency must be > 0");
    }
    return k.propagation_speed * doppler_hz / (2.0 * k.carrier_frequency);
}

/// V_T = V_H + V_R.
inline double target_velocity(double host_speed, double relative_velocity) {
    return host_speed + relative_velocity;
}

/// v_x = V_T sin(theta), v_y = V_T cos(theta).
inline std::pair<double, double> velocity_components(double target_speed, double bearing) {
    return {target_speed * std::sin(bearing), target_speed * std::cos(bearing)};
}

/// Full decode chain for one observation: range/bearing to position, Doppler
/// to absolute speed and its components.
inline TargetKinematics decode_target(const RadarReturn& ret, const SensorConstants& k,
                                      double host_speed, TargetRole role) {
    const double range = range_from_delay(ret, k);
    const CartesianPoint position = polar_to_cartesian(range, ret.bearing());
    const double doppler = doppler_shift(ret);
    const double rel = relative_velocity(doppler, k);
    const double speed = target_velocity(host_speed, rel);
    const auto [vx, vy] = velocity_components(speed, ret.bearing());
    return {position, speed, vx, vy, role};
}

}  // namespace mcdas::kinematics
