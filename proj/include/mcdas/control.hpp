#pragma once

#include <cmath>
#include <stdexcept>

// Longitudinal duty-cycle speed control and the maneuver kinematic vector
// used when entering a curvilinear path. A duty cycle is a normalized speed
// command in [0,1]; commanded speed = duty * host_max_speed.

namespace mcdas::control {

struct DutyCycleState {
    double host_duty_prev = 0.0;   // D_{H-1} in [0,1]
    double host_max_speed = 0.0;   // V_HM [m/s]

    void validate() const {
        if (!(host_duty_prev >= 0.0 && host_duty_prev <= 1.0)) {
            throw std::invalid_argument("duty state: previous duty outside [0,1]");
        }
        if (!(host_max_speed > 0.0)) {
            throw std::invalid_argument("duty state: host max speed must be > 0");
        }
    }
};

/// Commanded velocity, heading and range at maneuver entry.
struct ManeuverKinematics {
    double v_x_host = 0.0;  // [m/s]
    double v_y_host = 0.0;  // [m/s]
    double heading = 0.0;   // psi, measured from the y-axis [rad]
    double range = 0.0;     // rho [m]
};

namespace detail {

inline void validate_speeds(double rear_speed, double host_max_speed) {
    if (!(host_max_speed > 0.0)) {
        throw std::invalid_argument("duty: host max speed must be > 0");
    }
    if (!(rear_speed >= 0.0)) {
        throw std::invalid_argument("duty: rear speed must be >= 0");
    }
    if (rear_speed > host_max_speed) {
        // Uncontrollable threat: the host cannot match this speed. Reported,
        // never clamped.
        throw std::invalid_argument("duty: rear speed exceeds host max speed");
    }
}

}  // namespace detail

/// Rear-vehicle duty: the rear speed as a fraction of the host maximum.
inline double rear_duty(double rear_speed, double host_max_speed) {
    detail::validate_speeds(rear_speed, host_max_speed);
    return rear_speed / host_max_speed;
}

/// Host duty update: previous duty plus the correction toward the rear-speed
/// ratio. The correction cancels the previous term algebraically, so the
/// collapsed form is evaluated to keep this entry point bit-identical to
/// rear_duty for every input (the literal two-term float evaluation can
/// differ by ulps).
inline double host_duty_update(const DutyCycleState& state, double rear_speed) {
    state.validate();
    return rear_duty(rear_speed, state.host_max_speed);
}

/// Maps a duty cycle back to a commanded speed for the motion integrator.
inline double duty_to_speed(double duty, double host_max_speed) {
    if (!(duty >= 0.0 && duty <= 1.0)) {
        throw std::invalid_argument("duty_to_speed: duty outside [0,1]");
    }
    if (!(host_max_speed > 0.0)) {
        throw std::invalid_argument("duty_to_speed: host max speed must be > 0");
    }
    return duty * host_max_speed;
}

/// Kinematic vector for curvilinear entry toward the displacement (x, y):
/// commanded speed split along heading atan(x/y) (x lateral, y longitudinal;
/// straight-ahead motion puts the full speed on v_y), plus heading and range.
inline ManeuverKinematics maneuver_kinematics(double x, double y, const DutyCycleState& state,
                                              double rear_speed) {
    if (x == 0.0 && y == 0.0) {
        throw std::invalid_argument("maneuver_kinematics: displacement is the origin");
    }
    if (y == 0.0) {
        throw std::invalid_argument("maneuver_kinematics: heading undefined for y = 0");
    }
    const double commanded = duty_to_speed(host_duty_update(state, rear_speed),
                                           state.host_max_speed);
    const double heading = std::atan(x / y);
    return {commanded * std::sin(heading), commanded * std::cos(heading), heading,
            std::hypot(x, y)};
}

}  // namespace mcdas::control
