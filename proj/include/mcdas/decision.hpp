#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

// Linguistic rule table mapping the current front/rear situation to an
// operating mode. Rows are evaluated in a fixed safety-first priority order;
// an unmatched snapshot falls back to Warning.

namespace mcdas::decision {

enum class Mode {
    NoAcceleration,
    Acceleration,
    Warning,
    CcmForward,  // constraint curvilinear motion, forward direction
    CcmReverse,  // parking; never selected from a snapshot, see run_parking
};

inline const char* to_string(Mode mode) {
    switch (mode) {
        case Mode::NoAcceleration: return "NoAcceleration";
        case Mode::Acceleration: return "Acceleration";
        case Mode::Warning: return "Warning";
        case Mode::CcmForward: return "CcmForward";
        case Mode::CcmReverse: return "CcmReverse";
    }
    return "?";
}

struct ThresholdConfig {
    double d_pr = 25.0;                // rear predefined distance [m]
    double d_spf = 25.0;               // short front predefined distance [m]
    double d_1pf = 35.0;               // long front predefined distance [m]
    double equality_tolerance = 0.5;   // guard band for the "=" row [m], [m/s]

    void validate() const {
        if (!(d_pr > 0.0)) throw std::invalid_argument("thresholds: d_pr must be > 0");
        if (!(d_spf > 0.0 && d_spf < d_1pf)) {
            throw std::invalid_argument("thresholds: required 0 < d_spf < d_1pf");
        }
        if (!(equality_tolerance > 0.0)) {
            throw std::invalid_argument("thresholds: equality_tolerance must be > 0");
        }
    }
};

/// Decision-layer view of one tick. Speed fields may be unknown (sensor has
/// not resolved them yet); a present vehicle must carry a distance.
struct SituationSnapshot {
    bool front_present = false;
    std::optional<double> front_distance;  // d_f [m]
    std::optional<double> front_speed;     // V_T,f [m/s]
    bool rear_present = false;
    std::optional<double> rear_distance;   // d_r [m]
    std::optional<double> rear_speed;      // V_T,r [m/s]
    double host_speed = 0.0;               // V_H [m/s]
};

namespace detail {

inline bool approx_equal(double a, double b, double tol) {
    return std::fabs(a - b) <= tol;
}

inline void validate_snapshot(const SituationSnapshot& s) {
    if (s.front_present && !s.front_distance.has_value()) {
        throw std::invalid_argument("snapshot: front present but distance unknown");
    }
    if (s.rear_present && !s.rear_distance.has_value()) {
        throw std::invalid_argument("snapshot: rear present but distance unknown");
    }
    if (s.front_distance && !(*s.front_distance >= 0.0)) {
        throw std::invalid_argument("snapshot: negative front distance");
    }
    if (s.rear_distance && !(*s.rear_distance >= 0.0)) {
        throw std::invalid_argument("snapshot: negative rear distance");
    }
}

}  // namespace detail

/// Rule-table mode selection. Priority: CcmForward > Acceleration > Warning >
/// NoAcceleration; anything unmatched returns Warning. CcmReverse has no
/// sensor pattern and is only entered through the explicit parking entry
/// point. Speed comparisons treat values within the equality tolerance as
/// equal (snapshot speeds come from estimators and carry dust); distance
/// comparisons stay strict.
inline Mode select_mode(const SituationSnapshot& s, const ThresholdConfig& t) {
    t.validate();
    detail::validate_snapshot(s);
    const double tol = t.equality_tolerance;

    // Host sandwiched, front slow-or-matched in the short band, rear closing
    // fast inside the rear guard distance: swerve.
    if (s.front_present && s.rear_present && s.front_speed && s.rear_speed &&
        *s.front_distance > t.d_spf && *s.front_distance < t.d_1pf &&
        *s.front_speed <= s.host_speed + tol &&
        *s.rear_distance < t.d_pr && *s.rear_speed > s.host_speed + tol) {
        return Mode::CcmForward;
    }

    // No front vehicle, rear closing fast inside the guard distance: speed up.
    // A known rear speed is required here; an unknown-speed rear never
    // triggers acceleration.
    if (!s.front_present && s.rear_present && s.rear_speed &&
        *s.rear_distance <= t.d_pr && *s.rear_speed > s.host_speed + tol) {
        return Mode::Acceleration;
    }

    // Everything pinned at the predefined distances with matched speeds.
    if (s.front_present && s.rear_present && s.front_speed && s.rear_speed &&
        detail::approx_equal(*s.front_distance, t.d_1pf, tol) &&
        detail::approx_equal(*s.front_speed, s.host_speed, tol) &&
        detail::approx_equal(*s.rear_distance, t.d_pr, tol) &&
        detail::approx_equal(*s.rear_speed, s.host_speed, tol)) {
        return Mode::Warning;
    }

    // No front vehicle, rear keeping its distance: hold speed.
    if (!s.front_present && s.rear_present && *s.rear_distance > t.d_pr) {
        return Mode::NoAcceleration;
    }

    return Mode::Warning;  // conservative default for unmatched snapshots
}

}  // namespace mcdas::decision
