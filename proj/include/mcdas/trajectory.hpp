#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

// Offset-based sigmoidal lane-change paths, their settling-error analysis,
// and the reverse-sigmoid parallel-parking path. The lateral profile is a
// logistic curve shifted so the path starts exactly at y = 0; the lateral
// offset between front and host vehicle widens or narrows the swing so the
// host clears the front vehicle's edge on the chosen side.

namespace mcdas::trajectory {

/// Maneuver side: Left (negative y) or Right (positive y).
enum class Side { Left, Right };

inline const char* to_string(Side side) { return side == Side::Left ? "Left" : "Right"; }

/// Coefficients of one curvilinear path family.
struct SigmoidParams {
    double a = -0.4;    // exponential rate [1/m]; < 0 for lane change, > 0 for parking
    double b = 50.0;    // shift coefficient
    double y_max = 3.7; // lane-center separation [m]
    double k = 2.0;     // x-advance rate [m/s]

    void validate() const {
        if (!(b > 0.0)) throw std::invalid_argument("sigmoid: b must be > 0");
        if (!(y_max > 0.0)) throw std::invalid_argument("sigmoid: y_max must be > 0");
        if (!(k > 0.0)) throw std::invalid_argument("sigmoid: k must be > 0");
        if (!std::isfinite(a) || a == 0.0) {
            throw std::invalid_argument("sigmoid: a must be finite and nonzero");
        }
    }
};

/// Lateral positions of front and host vehicle and their difference.
struct LateralOffset {
    double off_front = 0.0;  // [m]
    double off_host = 0.0;   // [m]
    double off = 0.0;        // off_front - off_host [m]

    LateralOffset(double front, double host)
        : off_front(front), off_host(host), off(front - host) {}
};

struct PathSample {
    double t = 0.0;  // [s]
    double x = 0.0;  // [m]
    double y = 0.0;  // [m]
};

/// off = off_F - off_H.
inline double compute_offset(double off_front, double off_host) {
    if (!std::isfinite(off_front) || !std::isfinite(off_host)) {
        throw std::invalid_argument("compute_offset: non-finite input");
    }
    return off_front - off_host;
}

/// x-position along the maneuver: x = k*t.
inline double lateral_x(double t, const SigmoidParams& p) {
    p.validate();
    if (!(t >= 0.0)) {
        throw std::invalid_argument("lateral_x: t must be >= 0");
    }
    return p.k * t;
}

/// Lateral position at running x. Right side rises toward +(y_max + off),
/// left side falls toward -(y_max - off); both start at exactly 0 because the
/// sigmoid's value at x = 0 is subtracted.
inline double lateral_y(double x, const SigmoidParams& p, double off, Side side) {
    p.validate();
    if (!std::isfinite(x) || !std::isfinite(off)) {
        throw std::invalid_argument("lateral_y: non-finite input");
    }
    const double amplitude = side == Side::Right ? p.y_max + off : p.y_max - off;
    const double denom = 1.0 + p.b * std::exp(p.a * x);
    if (denom == 0.0) {
        throw std::invalid_argument("lateral_y: degenerate sigmoid denominator");
    }
    const double start = amplitude / (1.0 + p.b);  // value at x = 0, subtracted out
    const double value = amplitude / denom - start;
    return side == Side::Right ? value : -value;
}

struct SettlingReport {
    double absolute_target = 0.0;  // +-(y_max +- off) per side [m]
    double error = 0.0;            // target minus observed, signed per side [m]
};

/// Residual against the absolute lane target at the settling x.
inline SettlingReport settling_error(const SigmoidParams& p, double off, Side side,
                                     double x_settle) {
    if (!(x_settle > 0.0)) {
        throw std::invalid_argument("settling_error: x_settle must be > 0");
    }
    const double target = side == Side::Right ? p.y_max + off : -(p.y_max - off);
    const double observed = lateral_y(x_settle, p, off, side);
    return {target, target - observed};
}

/// Lane-change path sampled at t = 0, dt, ..., t_end. First sample is (0, 0).
inline std::vector<PathSample> generate_lane_change(const SigmoidParams& p, double off,
                                                    Side side, double t_end, double dt) {
    p.validate();
    if (!(p.a < 0.0)) {
        throw std::invalid_argument("generate_lane_change: requires a < 0");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("generate_lane_change: dt must be > 0");
    }
    if (!(t_end >= dt)) {
        throw std::invalid_argument("generate_lane_change: t_end must be >= dt");
    }
    const auto samples = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
    std::vector<PathSample> path;
    path.reserve(samples + 1);
    for (std::size_t i = 0; i <= samples; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double x = lateral_x(t, p);
        path.push_back({t, x, lateral_y(x, p, off, side)});
    }
    return path;
}

/// Usable parking gap derived from sensed and predefined clearances.
struct ParkingClearances {
    double x_sensed = 0.0;      // x_s: sensed gap between parked vehicles [m]
    double x_predefined = 0.0;  // x_pd: user margin along x [m]
    double y_parked = 0.0;      // y_s,p: lateral distance of the parked row [m]
    double vehicle_width = 0.0; // W_p [m]
    double x_max = 0.0;         // usable longitudinal travel [m]
    double y_max_park = 0.0;    // usable lateral travel [m]

    /// Direct construction from already-computed limits (CLI entry point).
    static ParkingClearances from_limits(double x_max, double y_max_park) {
        if (!(x_max > 0.0)) {
            throw std::invalid_argument("parking: x_max must be > 0");
        }
        if (!(y_max_park > 0.0)) {
            throw std::invalid_argument("parking: y_max must be > 0");
        }
        ParkingClearances c;
        c.x_sensed = x_max;
        c.x_predefined = 0.0;
        c.y_parked = y_max_park;
        c.vehicle_width = 0.0;
        c.x_max = x_max;
        c.y_max_park = y_max_park;
        return c;
    }
};

/// x_m = x_s - x_pd, y_m = y_sp + W_p/2.
inline ParkingClearances parking_limits(double x_sensed, double x_predefined, double y_parked,
                                        double vehicle_width) {
    if (!(x_predefined >= 0.0) || !(x_sensed > x_predefined)) {
        throw std::invalid_argument("parking_limits: no usable gap (requires x_s > x_pd >= 0)");
    }
    if (!(y_parked >= 0.0)) {
        throw std::invalid_argument("parking_limits: y_sp must be >= 0");
    }
    if (!(vehicle_width > 0.0)) {
        throw std::invalid_argument("parking_limits: vehicle width must be > 0");
    }
    ParkingClearances c;
    c.x_sensed = x_sensed;
    c.x_predefined = x_predefined;
    c.y_parked = y_parked;
    c.vehicle_width = vehicle_width;
    c.x_max = x_sensed - x_predefined;
    c.y_max_park = y_parked + vehicle_width / 2.0;
    return c;
}

/// Reverse parking path: x = -k*t, y falls from 0 toward -y_max along the
/// mirrored sigmoid. Requires a > 0 so the exponent a*x decays as the vehicle
/// backs up.
inline std::vector<PathSample> generate_parking_path(const SigmoidParams& p, double t_end,
                                                     double dt) {
    p.validate();
    if (!(p.a > 0.0)) {
        throw std::invalid_argument("generate_parking_path: requires a > 0");
    }
    if (!(dt > 0.0)) {
        throw std::invalid_argument("generate_parking_path: dt must be > 0");
    }
    if (!(t_end >= dt)) {
        throw std::invalid_argument("generate_parking_path: t_end must be >= dt");
    }
    const double start = p.y_max / (1.0 + p.b);
    const auto samples = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
    std::vector<PathSample> path;
    path.reserve(samples + 1);
    for (std::size_t i = 0; i <= samples; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double x = -p.k * t;
        const double y = -p.y_max / (1.0 + p.b * std::exp(p.a * x)) + start;
        path.push_back({t, x, y});
    }
    return path;
}

}  // namespace mcdas::trajectory
