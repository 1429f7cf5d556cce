#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

// Joint rear+front constant-velocity Kalman filter. The stacked state is
// [x_r, vx_r, y_r, vy_r, x_f, vx_f, y_f, vy_f]; measurements are the four
// positions [x_r, y_r, x_f, y_f].

namespace mcdas::tracking {

inline constexpr int kStateDim = 8;
inline constexpr int kMeasurementDim = 4;

using StateVector = Eigen::Matrix<double, kStateDim, 1>;
using StateMatrix = Eigen::Matrix<double, kStateDim, kStateDim>;
using MeasurementVector = Eigen::Matrix<double, kMeasurementDim, 1>;
using ObservationMatrix = Eigen::Matrix<double, kMeasurementDim, kStateDim>;
using MeasurementCovariance = Eigen::Matrix<double, kMeasurementDim, kMeasurementDim>;

// State vector layout.
enum StateIndex : int {
    kRearX = 0, kRearVx = 1, kRearY = 2, kRearVy = 3,
    kFrontX = 4, kFrontVx = 5, kFrontY = 6, kFrontVy = 7,
};

/// Raised when the filter can no longer produce meaningful estimates:
/// non-finite arithmetic or a numerically singular innovation covariance.
class FilterDivergenceError : public std::runtime_error {
public:
    explicit FilterDivergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct JointTrackState {
    StateVector state = StateVector::Zero();
    StateMatrix covariance = StateMatrix::Identity();
    long tick = 0;  // sample index
};

struct JointMeasurement {
    double x_rear = 0.0;
    double y_rear = 0.0;
    double x_front = 0.0;
    double y_front = 0.0;

    MeasurementVector vector() const {
        MeasurementVector z;
        z << x_rear, y_rear, x_front, y_front;
        return z;
    }
};

/// Block-diagonal CV transition: each (position, velocity) pair advances as
/// [[1, T], [0, 1]].
inline StateMatrix transition_matrix(double sample_time) {
    if (!(sample_time > 0.0)) {
        throw std::invalid_argument("transition_matrix: sample time must be > 0");
    }
    StateMatrix a = StateMatrix::Identity();
    for (int block = 0; block < kStateDim; block += 2) {
        a(block, block + 1) = sample_time;
    }
    return a;
}

/// Selector picking the four position components out of the stacked state.
inline ObservationMatrix measurement_matrix() {
    ObservationMatrix c = ObservationMatrix::Zero();
    c(0, kRearX) = 1.0;
    c(1, kRearY) = 1.0;
    c(2, kFrontX) = 1.0;
    c(3, kFrontY) = 1.0;
    return c;
}

/// Discrete white-noise-acceleration process covariance, intensity q per
/// track axis.
inline StateMatrix default_process_noise(double q, double sample_time) {
    const double t2 = sample_time * sample_time;
    const double t3 = t2 * sample_time;
    const double t4 = t3 * sample_time;
    StateMatrix cov = StateMatrix::Zero();
    for (int block = 0; block < kStateDim; block += 2) {
        cov(block, block) = q * t4 / 4.0;
        cov(block, block + 1) = q * t3 / 2.0;
        cov(block + 1, block) = q * t3 / 2.0;
        cov(block + 1, block + 1) = q * t2;
    }
    return cov;
}

struct FilterConfig {
    double sample_time = 0.5;                                             // T [s]
    StateMatrix process_noise_cov = default_process_noise(0.1, 0.5);      // Q
    MeasurementCovariance measurement_noise_cov =
        0.25 * MeasurementCovariance::Identity();                            // R (sigma = 0.5 m)
    StateMatrix initial_covariance = 10.0 * StateMatrix::Identity();      // P_0

    static FilterConfig from_scalars(double sample_time, double q, double r, double p0) {
        FilterConfig cfg;
        cfg.sample_time = sample_time;
        cfg.process_noise_cov = default_process_noise(q, sample_time);
        cfg.measurement_noise_cov = r * MeasurementCovariance::Identity();
        cfg.initial_covariance = p0 * StateMatrix::Identity();
        return cfg;
    }

    void validate() const {
        if (!(sample_time > 0.0)) {
            throw std::invalid_argument("filter: sample time must be > 0");
        }
    }
};

namespace detail {

inline void require_finite(const JointTrackState& s, const char* where) {
    if (!s.state.allFinite() || !s.covariance.allFinite()) {
        throw FilterDivergenceError(std::string(where) + ": non-finite filter state");
    }
}

}  // namespace detail

/// Time update: state through the CV transition, covariance through
/// A P A^T + Q.
inline JointTrackState predict(const JointTrackState& s, const FilterConfig& cfg) {
    cfg.validate();
    const StateMatrix a = transition_matrix(cfg.sample_time);
    JointTrackState out;
    out.state = a * s.state;
    out.covariance = a * s.covariance * a.transpose() + cfg.process_noise_cov;
    out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
    out.tick = s.tick;
    detail::require_finite(out, "predict");
    return out;
}

/// Measurement update. The 4x4 innovation covariance is inverted directly
/// after an SVD condition check; a condition number above 1e12 is treated as
/// divergence. The covariance is propagated in Joseph form, which matches
/// (I - K C) P for the optimal gain while staying symmetric PSD.
inline JointTrackState update(const JointTrackState& s, const JointMeasurement& z,
                              const FilterConfig& cfg) {
    cfg.validate();
    const ObservationMatrix c = measurement_matrix();
    const MeasurementCovariance innovation_cov =
        c * s.covariance * c.transpose() + cfg.measurement_noise_cov;

    Eigen::JacobiSVD<MeasurementCovariance> svd(innovation_cov);
    const double smin = svd.singularValues()(kMeasurementDim - 1);
    const double smax = svd.singularValues()(0);
    if (!(smin > 0.0) || smax / smin > 1e12) {
        throw FilterDivergenceError("update: innovation covariance numerically singular");
    }

    const Eigen::Matrix<double, kStateDim, kMeasurementDim> gain =
        s.covariance * c.transpose() * innovation_cov.inverse();

    JointTrackState out;
    out.state = s.state + gain * (z.vector() - c * s.state);
    const StateMatrix projector = StateMatrix::Identity() - gain * c;
    out.covariance = projector * s.covariance * projector.transpose() +
                     gain * cfg.measurement_noise_cov * gain.transpose();
    out.covariance = 0.5 * (out.covariance + out.covariance.transpose()).eval();
    out.tick = s.tick + 1;
    detail::require_finite(out, "update");
    return out;
}

/// One full cycle: predict then update; the posterior becomes the next prior.
inline JointTrackState step(const JointTrackState& s, const JointMeasurement& z,
                            const FilterConfig& cfg) {
    return update(predict(s, cfg), z, cfg);
}

/// Seeds a track from the first two measurements: positions from the second,
/// velocities from their finite difference, covariance from P_0.
inline JointTrackState initialize_track(const JointMeasurement& first,
                                        const JointMeasurement& second,
                                        const FilterConfig& cfg) {
    cfg.validate();
    const double inv_t = 1.0 / cfg.sample_time;
    JointTrackState s;
    s.state(kRearX) = second.x_rear;
    s.state(kRearVx) = (second.x_rear - first.x_rear) * inv_t;
    s.state(kRearY) = second.y_rear;
    s.state(kRearVy) = (second.y_rear - first.y_rear) * inv_t;
    s.state(kFrontX) = second.x_front;
    s.state(kFrontVx) = (second.x_front - first.x_front) * inv_t;
    s.state(kFrontY) = second.y_front;
    s.state(kFrontVy) = (second.y_front - first.y_front) * inv_t;
    s.covariance = cfg.initial_covariance;
    s.tick = 1;
    detail::require_finite(s, "initialize_track");
    return s;
}

}  // namespace mcdas::tracking
