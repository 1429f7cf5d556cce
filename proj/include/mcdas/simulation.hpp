#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcdas/control.hpp"
#include "mcdas/decision.hpp"
#include "mcdas/kinematics.hpp"
#include "mcdas/random.hpp"
#include "mcdas/scenario.hpp"
#include "mcdas/tracking.hpp"
#include "mcdas/trajectory.hpp"

// Closed-loop per-tick simulation: synthesize radar observables from ground
// truth, decode, track, select a mode, act on it, integrate truth forward.
// Everything is deterministic given the scenario seed.

namespace mcdas::sim {

/// Predicted x-interval (host travel) where the rear-host gap falls below the
/// safety distance, down to contact.
struct CrashZone {
    double start_x = 0.0;       // [m]
    double end_x = 0.0;         // [m]
    double time_to_crash = 0.0; // gap / closing speed at prediction time [s]
};

struct TickRecord {
    double t = 0.0;
    double host_x = 0.0;
    double host_y = 0.0;
    std::optional<double> front_x, front_y;          // ground truth
    std::optional<double> rear_x, rear_y;
    std::optional<double> front_est_x, front_est_y;  // tracker output
    std::optional<double> rear_est_x, rear_est_y;
    decision::Mode mode = decision::Mode::Warning;
    double host_speed = 0.0;      // commanded [m/s]
    double host_lateral_y = 0.0;  // lateral command [m]
};

/// Per-vehicle estimation-error tallies over one run.
struct ErrorAccumulator {
    double sum_error = 0.0;          // Euclidean estimate error
    double sum_squared_error = 0.0;
    double max_error = 0.0;
    double raw_sum_squared_error = 0.0;  // raw measurement vs truth
    std::size_t samples = 0;

    void add(double estimate_error, double raw_error) {
        sum_error += estimate_error;
        sum_squared_error += estimate_error * estimate_error;
        max_error = std::max(max_error, estimate_error);
        raw_sum_squared_error += raw_error * raw_error;
        ++samples;
    }

    double mean_error() const { return samples ? sum_error / double(samples) : 0.0; }
    double mean_squared_error() const {
        return samples ? sum_squared_error / double(samples) : 0.0;
    }
    double raw_mean_squared_error() const {
        return samples ? raw_sum_squared_error / double(samples) : 0.0;
    }
};

struct RunResult {
    std::vector<TickRecord> records;
    std::optional<CrashZone> predicted_zone;      // latest pre-engagement prediction
    std::optional<double> closest_approach_x;     // host x at the minimum true rear gap
    std::optional<double> min_rear_gap;           // [m]
    std::optional<double> ccm_engagement_x;       // host x when CcmForward engaged
    std::optional<trajectory::Side> ccm_side;
    ErrorAccumulator front_error, rear_error;
    bool diverged = false;
    std::string diagnostic;
};

/// Extrapolates the host command and the rear track as constant-velocity
/// states; requires at least two ticks of estimates. Absent when the rear is
/// not closing, or the pass already happened.
inline std::optional<CrashZone> predict_crash_zone(const std::vector<TickRecord>& records,
                                                   const tracking::JointTrackState& track,
                                                   const ScenarioConfig& cfg) {
    if (records.size() < 2) {
        throw std::invalid_argument("predict_crash_zone: needs at least 2 ticks of estimates");
    }
    const TickRecord& now = records.back();
    const double gap = now.host_x - track.state(tracking::kRearX);
    const double closing = track.state(tracking::kRearVx) - now.host_speed;
    if (!(closing > 0.0) || !(gap > 0.0)) return std::nullopt;

    const double safety_gap = cfg.thresholds.d_pr;
    const double time_to_safety = std::max(0.0, (gap - safety_gap) / closing);
    const double time_to_contact = gap / closing;
    CrashZone zone;
    zone.start_x = now.host_x + now.host_speed * time_to_safety;
    zone.end_x = now.host_x + now.host_speed * time_to_contact;
    zone.time_to_crash = time_to_contact;
    return zone;
}

namespace detail {

struct TruthVehicle {
    double x = 0.0;
    double y = 0.0;
    double speed = 0.0;
};

// A target is observable while it stays in its sensor's field of view with a
// margin that keeps noisy bearings away from +-pi/2.
inline constexpr double kVisibilityMargin = 0.5;  // [m]

// Settling distance used when deriving the maneuver kinematic vector at
// curvilinear entry.
inline constexpr double kSettlingDistance = 20.0;  // [m]

struct Observation {
    kinematics::TargetKinematics decoded;  // position in sensor frame
    double global_x = 0.0;
    double global_y = 0.0;
};

/// Builds the radar return for one target and decodes it. The Doppler pair is
/// synthesized in the ground-frame convention (V_T = V_H + V_R), so decoding
/// recovers the target's absolute speed. Returns nothing when noise pushes
/// the target out of the sensor's field of view (a dropout tick).
inline std::optional<Observation> observe(const TruthVehicle& target,
                                          kinematics::TargetRole role, double host_x,
                                          double host_y, double host_speed,
                                          const kinematics::SensorConstants& sensor,
                                          double sigma, SeededGenerator& rng) {
    const double dx = target.x - host_x + (sigma > 0.0 ? rng.gaussian(sigma) : 0.0);
    const double dy = target.y - host_y + (sigma > 0.0 ? rng.gaussian(sigma) : 0.0);
    // The rear sensor's boresight points backwards; its frame is the forward
    // frame rotated by pi.
    const double bx = role == kinematics::TargetRole::Front ? dx : -dx;
    const double by = role == kinematics::TargetRole::Front ? dy : -dy;
    if (!(bx > 0.05)) return std::nullopt;  // behind the boresight after noise
    const double range = std::hypot(bx, by);
    const double delay = 2.0 * range / sensor.propagation_speed;
    const double bearing = std::atan2(by, bx);
    const double doppler =
        2.0 * sensor.carrier_frequency * (target.speed - host_speed) / sensor.propagation_speed;
    const kinematics::RadarReturn ret(delay, bearing, sensor.carrier_frequency + doppler,
                                      sensor.carrier_frequency);
    Observation obs;
    obs.decoded = kinematics::decode_target(ret, sensor, host_speed, role);
    const double sign = role == kinematics::TargetRole::Front ? 1.0 : -1.0;
    obs.global_x = host_x + sign * obs.decoded.position.x;
    obs.global_y = host_y + sign * obs.decoded.position.y;
    return obs;
}

}  // namespace detail

/// Runs one scenario tick-by-tick. Tracker divergence stops the run and is
/// reported in the result rather than thrown.
inline RunResult run_scenario_detailed(const ScenarioConfig& cfg) {
    cfg.validate();
    RunResult result;
    SeededGenerator rng(cfg.seed);

    detail::TruthVehicle host{cfg.host.position, cfg.host.offset, cfg.host.speed};
    std::optional<detail::TruthVehicle> front, rear;
    if (cfg.front) front = detail::TruthVehicle{cfg.front->position, cfg.front->offset,
                                                cfg.front->speed};
    if (cfg.rear) rear = detail::TruthVehicle{cfg.rear->position, cfg.rear->offset,
                                              cfg.rear->speed};

    double duty = cfg.host.speed / cfg.host_max_speed;
    std::optional<tracking::JointMeasurement> first_measurement;
    std::optional<tracking::JointTrackState> track;

    struct Maneuver {
        double t0 = 0.0;
        double base_y = 0.0;
        double off = 0.0;
        trajectory::Side side = trajectory::Side::Right;
    };
    std::optional<Maneuver> maneuver;
    bool longitudinal_intervened = false;

    const auto ticks = static_cast<std::size_t>(std::floor(cfg.duration / cfg.tick + 1e-9)) + 1;

    for (std::size_t i = 0; i < ticks; ++i) {
        const double t = static_cast<double>(i) * cfg.tick;

        // Measure and decode whatever each sensor can see.
        std::optional<detail::Observation> front_obs, rear_obs;
        if (front && (front->x - host.x) > detail::kVisibilityMargin) {
            front_obs = detail::observe(*front, kinematics::TargetRole::Front, host.x, host.y,
                                        host.speed, cfg.sensor, cfg.measurement_noise_sigma, rng);
        }
        if (rear && (host.x - rear->x) > detail::kVisibilityMargin) {
            rear_obs = detail::observe(*rear, kinematics::TargetRole::Rear, host.x, host.y,
                                       host.speed, cfg.sensor, cfg.measurement_noise_sigma, rng);
        }
        const bool front_visible = front_obs.has_value();
        const bool rear_visible = rear_obs.has_value();

        // Tracker: seed from the first two measurements, then predict/update.
        // A target without a fresh measurement gets its predicted measurement
        // back (zero innovation) with its noise rows inflated, which leaves
        // the state untouched.
        try {
            tracking::JointMeasurement z;
            if (rear_obs) {
                z.x_rear = rear_obs->global_x;
                z.y_rear = rear_obs->global_y;
            }
            if (front_obs) {
                z.x_front = front_obs->global_x;
                z.y_front = front_obs->global_y;
            }
            if (!first_measurement) {
                first_measurement = z;
            } else if (!track) {
                track = tracking::initialize_track(*first_measurement, z, cfg.filter);
            } else {
                tracking::JointTrackState predicted = tracking::predict(*track, cfg.filter);
                tracking::FilterConfig tick_cfg = cfg.filter;
                const auto c = tracking::measurement_matrix();
                const auto predicted_z = (c * predicted.state).eval();
                if (!rear_obs) {
                    z.x_rear = predicted_z(0);
                    z.y_rear = predicted_z(1);
                    tick_cfg.measurement_noise_cov(0, 0) = 1e8;
                    tick_cfg.measurement_noise_cov(1, 1) = 1e8;
                }
                if (!front_obs) {
                    z.x_front = predicted_z(2);
                    z.y_front = predicted_z(3);
                    tick_cfg.measurement_noise_cov(2, 2) = 1e8;
                    tick_cfg.measurement_noise_cov(3, 3) = 1e8;
                }
                track = tracking::update(predicted, z, tick_cfg);
            }
        } catch (const tracking::FilterDivergenceError& e) {
            result.diverged = true;
            result.diagnostic = "tick " + std::to_string(i) + ": " + e.what();
            break;
        }

        // Decision-layer snapshot from the best available estimates.
        decision::SituationSnapshot snapshot;
        snapshot.host_speed = host.speed;
        std::optional<double> front_lateral_estimate;
        if (front_visible) {
            snapshot.front_present = true;
            double ex, ey, speed;
            if (track) {
                ex = track->state(tracking::kFrontX);
                ey = track->state(tracking::kFrontY);
                speed = std::hypot(track->state(tracking::kFrontVx),
                                   track->state(tracking::kFrontVy));
            } else {
                ex = front_obs->global_x;
                ey = front_obs->global_y;
                speed = front_obs->decoded.speed;
            }
            snapshot.front_distance = kinematics::euclidean_distance({ex, ey}, {host.x, host.y});
            snapshot.front_speed = speed;
            front_lateral_estimate = ey;
        }
        if (rear_visible) {
            snapshot.rear_present = true;
            double ex, ey, speed;
            if (track) {
                ex = track->state(tracking::kRearX);
                ey = track->state(tracking::kRearY);
                speed = std::hypot(track->state(tracking::kRearVx),
                                   track->state(tracking::kRearVy));
            } else {
                ex = rear_obs->global_x;
                ey = rear_obs->global_y;
                speed = rear_obs->decoded.speed;
            }
            snapshot.rear_distance = kinematics::euclidean_distance({ex, ey}, {host.x, host.y});
            snapshot.rear_speed = speed;
        }

        const decision::Mode mode = decision::select_mode(snapshot, cfg.thresholds);
        const bool was_unmitigated = !longitudinal_intervened;

        // Act. A latched maneuver owns the host command until the run ends.
        if (!maneuver) {
            if (mode == decision::Mode::Acceleration && snapshot.rear_speed) {
                duty = control::host_duty_update({duty, cfg.host_max_speed},
                                                 *snapshot.rear_speed);
                host.speed = control::duty_to_speed(duty, cfg.host_max_speed);
                longitudinal_intervened = true;
            } else if (mode == decision::Mode::CcmForward && snapshot.rear_speed) {
                const double off =
                    trajectory::compute_offset(front_lateral_estimate.value_or(host.y), host.y);
                const trajectory::Side side =
                    off > 0.0 ? trajectory::Side::Left : trajectory::Side::Right;
                const double target_y = side == trajectory::Side::Right
                                            ? cfg.sigmoid.y_max + off
                                            : -(cfg.sigmoid.y_max - off);
                const control::ManeuverKinematics entry = control::maneuver_kinematics(
                    target_y, detail::kSettlingDistance, {duty, cfg.host_max_speed},
                    *snapshot.rear_speed);
                host.speed = std::hypot(entry.v_x_host, entry.v_y_host);
                duty = host.speed / cfg.host_max_speed;
                maneuver = Maneuver{t, host.y, off, side};
                longitudinal_intervened = true;
                result.ccm_engagement_x = host.x;
                result.ccm_side = side;
            }
        }

        // Record the tick.
        TickRecord rec;
        rec.t = t;
        rec.host_x = host.x;
        rec.host_y = host.y;
        rec.mode = mode;
        rec.host_speed = host.speed;
        rec.host_lateral_y = host.y;
        if (front) {
            rec.front_x = front->x;
            rec.front_y = front->y;
        }
        if (rear) {
            rec.rear_x = rear->x;
            rec.rear_y = rear->y;
        }
        if (track) {
            rec.front_est_x = track->state(tracking::kFrontX);
            rec.front_est_y = track->state(tracking::kFrontY);
            rec.rear_est_x = track->state(tracking::kRearX);
            rec.rear_est_y = track->state(tracking::kRearY);
        } else {
            if (front_obs) {
                rec.front_est_x = front_obs->global_x;
                rec.front_est_y = front_obs->global_y;
            }
            if (rear_obs) {
                rec.rear_est_x = rear_obs->global_x;
                rec.rear_est_y = rear_obs->global_y;
            }
        }
        result.records.push_back(rec);

        // Estimation-error tallies, while tracked and observed.
        if (track && front_obs) {
            const double est = std::hypot(track->state(tracking::kFrontX) - front->x,
                                          track->state(tracking::kFrontY) - front->y);
            const double raw = std::hypot(front_obs->global_x - front->x,
                                          front_obs->global_y - front->y);
            result.front_error.add(est, raw);
        }
        if (track && rear_obs) {
            const double est = std::hypot(track->state(tracking::kRearX) - rear->x,
                                          track->state(tracking::kRearY) - rear->y);
            const double raw = std::hypot(rear_obs->global_x - rear->x,
                                          rear_obs->global_y - rear->y);
            result.rear_error.add(est, raw);
        }

        // Threat bookkeeping: latest pre-engagement crash-zone prediction and
        // the true closest approach.
        if (track && rear_visible && !maneuver && result.records.size() >= 2) {
            if (auto zone = predict_crash_zone(result.records, *track, cfg)) {
                result.predicted_zone = zone;
            }
        }
        if (rear && was_unmitigated) {
            // Closest approach of the unmitigated closure: tracked up to and
            // including the tick where a longitudinal response first acts,
            // which is the closure the crash-zone prediction speaks about.
            // The 1 um threshold keeps arithmetic dust from re-triggering.
            const double gap = host.x - rear->x;
            if (!result.min_rear_gap || gap < *result.min_rear_gap - 1e-6) {
                result.min_rear_gap = gap;
                result.closest_approach_x = host.x;
            }
        }

        // Integrate ground truth to the next tick.
        host.x += host.speed * cfg.tick;
        if (maneuver) {
            const double along = cfg.sigmoid.k * (t + cfg.tick - maneuver->t0);
            host.y = maneuver->base_y +
                     trajectory::lateral_y(along, cfg.sigmoid, maneuver->off, maneuver->side);
        }
        if (front) front->x += front->speed * cfg.tick;
        if (rear) rear->x += rear->speed * cfg.tick;
    }

    return result;
}

/// Record stream for one scenario; tracker divergence is thrown here.
inline std::vector<TickRecord> run_scenario(const ScenarioConfig& cfg) {
    RunResult result = run_scenario_detailed(cfg);
    if (result.diverged) {
        throw tracking::FilterDivergenceError(result.diagnostic);
    }
    return result.records;
}

struct ParkingResult {
    std::vector<TickRecord> records;
    double settling_target = 0.0;  // -y_max [m]
    double settling_error = 0.0;   // target minus observed at the final sample [m]
};

/// Reverse-sigmoid parking run, truncated at the usable gap limits.
inline ParkingResult run_parking(const trajectory::ParkingClearances& clearances,
                                 const trajectory::SigmoidParams& params, double dt) {
    params.validate();
    if (!(dt > 0.0)) throw std::invalid_argument("run_parking: dt must be > 0");
    const double t_end = clearances.x_max / params.k;
    if (t_end < dt) {
        throw std::invalid_argument("run_parking: gap too short for one step (zero-length path)");
    }
    const auto path = trajectory::generate_parking_path(params, t_end, dt);

    ParkingResult result;
    result.records.reserve(path.size());
    for (const auto& sample : path) {
        if (std::fabs(sample.y) > clearances.y_max_park) {
            throw std::invalid_argument(
                "run_parking: infeasible gap, path exceeds the lateral limit before x_max");
        }
        TickRecord rec;
        rec.t = sample.t;
        rec.host_x = sample.x;
        rec.host_y = sample.y;
        rec.mode = decision::Mode::CcmReverse;
        rec.host_speed = params.k;
        rec.host_lateral_y = sample.y;
        result.records.push_back(rec);
    }
    result.settling_target = -params.y_max;
    result.settling_error = result.settling_target - path.back().y;
    return result;
}

/// Aggregated estimation quality over a batch, at the run-average level.
struct VehicleErrorStats {
    double mean_error = 0.0;              // mean over runs of per-run mean error
    double max_error = 0.0;               // max over runs
    double mean_squared_error = 0.0;      // mean over runs of per-run MSE
    double raw_mean_squared_error = 0.0;  // same for raw measurements
    std::size_t runs_with_data = 0;
};

struct MonteCarloReport {
    std::size_t runs = 0;
    VehicleErrorStats front;
    VehicleErrorStats rear;
    double crash_zone_hit_fraction = 0.0;  // over all runs; a run without a zone is a miss
    std::vector<std::uint64_t> run_seeds;
    std::size_t failed_runs = 0;
    std::vector<std::string> failures;
};

/// Seeded batch execution: run r uses seed (master + r). Per-run failures are
/// collected, never rethrown.
inline MonteCarloReport monte_carlo(const ScenarioConfig& cfg, std::size_t runs) {
    if (runs < 1) throw std::invalid_argument("monte_carlo: runs must be >= 1");
    cfg.validate();

    MonteCarloReport report;
    report.runs = runs;
    report.run_seeds.reserve(runs);
    std::size_t zone_hits = 0;

    for (std::size_t r = 0; r < runs; ++r) {
        ScenarioConfig run_cfg = cfg;
        run_cfg.seed = cfg.seed + r;
        report.run_seeds.push_back(run_cfg.seed);

        RunResult result;
        try {
            result = run_scenario_detailed(run_cfg);
        } catch (const std::exception& e) {
            ++report.failed_runs;
            report.failures.push_back("run " + std::to_string(r) + ": " + e.what());
            continue;
        }
        if (result.diverged) {
            ++report.failed_runs;
            report.failures.push_back("run " + std::to_string(r) + ": " + result.diagnostic);
            continue;
        }

        auto fold = [](VehicleErrorStats& stats, const ErrorAccumulator& acc) {
            if (!acc.samples) return;
            stats.mean_error += acc.mean_error();
            stats.max_error = std::max(stats.max_error, acc.max_error);
            stats.mean_squared_error += acc.mean_squared_error();
            stats.raw_mean_squared_error += acc.raw_mean_squared_error();
            ++stats.runs_with_data;
        };
        fold(report.front, result.front_error);
        fold(report.rear, result.rear_error);

        if (result.predicted_zone && result.closest_approach_x &&
            *result.closest_approach_x >= result.predicted_zone->start_x &&
            *result.closest_approach_x <= result.predicted_zone->end_x) {
            ++zone_hits;
        }
    }

    auto finish = [](VehicleErrorStats& stats) {
        if (!stats.runs_with_data) return;
        const double n = static_cast<double>(stats.runs_with_data);
        stats.mean_error /= n;
        stats.mean_squared_error /= n;
        stats.raw_mean_squared_error /= n;
    };
    finish(report.front);
    finish(report.rear);
    report.crash_zone_hit_fraction = static_cast<double>(zone_hits) / static_cast<double>(runs);
    return report;
}

}  // namespace mcdas::sim
