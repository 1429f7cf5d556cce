#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcdas/decision.hpp"
#include "mcdas/kinematics.hpp"
#include "mcdas/tracking.hpp"
#include "mcdas/trajectory.hpp"
#include "mcdas/units.hpp"

// Scenario and snapshot files. The native format is a flat key-value text
// file with dotted section names (`sim.tick = 0.5`, `#` comments); the same
// keys nested as objects are accepted as JSON. Parsing is strict: unknown
// keys, duplicate keys and malformed values are errors with line/field
// context. Speeds are km/h in files and converted to SI at this boundary.

namespace mcdas::sim {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct VehicleSetup {
    double position = 0.0;  // longitudinal x [m]
    double speed = 0.0;     // [m/s]
    double offset = 0.0;    // lateral y [m]
};

struct ScenarioConfig {
    VehicleSetup host;
    double host_max_speed = kmh_to_mps(240.0);  // V_HM
    std::optional<VehicleSetup> front;
    std::optional<VehicleSetup> rear;
    decision::ThresholdConfig thresholds;
    tracking::FilterConfig filter;
    trajectory::SigmoidParams sigmoid;
    kinematics::SensorConstants sensor;
    double measurement_noise_sigma = 0.0;  // [m]
    double tick = 0.5;                     // [s]
    double duration = 0.0;                 // [s]
    std::uint64_t seed = 0;

    void validate() const {
        if (!(tick > 0.0)) throw ConfigError("sim.tick: must be > 0");
        if (!(duration >= tick)) throw ConfigError("sim.duration: must be >= sim.tick");
        if (!(host.speed >= 0.0)) throw ConfigError("host.speed_kmh: must be >= 0");
        if (!(host_max_speed > 0.0)) throw ConfigError("host.max_speed_kmh: must be > 0");
        if (host.speed > host_max_speed) {
            throw ConfigError("host.speed_kmh: must be <= host.max_speed_kmh");
        }
        if (front && !(front->speed >= 0.0)) throw ConfigError("front.speed_kmh: must be >= 0");
        if (rear && !(rear->speed >= 0.0)) throw ConfigError("rear.speed_kmh: must be >= 0");
        if (!(measurement_noise_sigma >= 0.0)) throw ConfigError("noise.sigma: must be >= 0");
        if (!(sensor.propagation_speed > 0.0)) {
            throw ConfigError("sensor.propagation_speed: must be > 0");
        }
        if (!(sensor.carrier_frequency > 0.0)) {
            throw ConfigError("sensor.carrier_frequency: must be > 0");
        }
        try {
            thresholds.validate();
            sigmoid.validate();
            filter.validate();
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
};

/// Decision-layer snapshot plus the thresholds to judge it with.
struct SnapshotFile {
    decision::SituationSnapshot snapshot;
    decision::ThresholdConfig thresholds;
};

namespace detail {

inline double parse_double(const std::string& value, const std::string& context) {
    std::size_t consumed = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &consumed);
    } catch (const std::exception&) {
        throw ConfigError(context + ": not a number: '" + value + "'");
    }
    if (consumed != value.size()) {
        throw ConfigError(context + ": trailing characters in number: '" + value + "'");
    }
    return out;
}

inline std::uint64_t parse_u64(const std::string& value, const std::string& context) {
    std::size_t consumed = 0;
    std::uint64_t out = 0;
    try {
        out = std::stoull(value, &consumed);
    } catch (const std::exception&) {
        throw ConfigError(context + ": not an unsigned integer: '" + value + "'");
    }
    if (consumed != value.size()) {
        throw ConfigError(context + ": trailing characters in integer: '" + value + "'");
    }
    return out;
}

inline bool parse_bool(const std::string& value, const std::string& context) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError(context + ": expected true or false, got '" + value + "'");
}

inline std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

/// Feeds `key = value` lines (comments and blanks skipped) to the handler
/// with per-line context; rejects duplicates and malformed lines.
template <typename Handler>
void scan_key_values(const std::string& text, const std::string& origin, Handler&& handle) {
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    std::vector<std::string> seen;
    while (std::getline(stream, line)) {
        ++line_no;
        const std::string stripped = trim(line.substr(0, line.find('#')));
        if (stripped.empty()) continue;
        const std::string context = origin + ":" + std::to_string(line_no);
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(context + ": expected 'key = value', got '" + stripped + "'");
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError(context + ": empty key");
        if (value.empty()) throw ConfigError(context + ": empty value for '" + key + "'");
        for (const auto& k : seen) {
            if (k == key) throw ConfigError(context + ": duplicate key '" + key + "'");
        }
        seen.push_back(key);
        handle(key, value, context);
    }
}

/// Flattens nested JSON objects to the same dotted keys the text format uses,
/// so both formats share one key handler.
template <typename Handler>
void scan_json(const std::string& text, const std::string& origin, Handler&& handle) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(origin + ": JSON parse error: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(origin + ": top level must be an object");
    for (const auto& [section, body] : doc.items()) {
        if (!body.is_object()) {
            throw ConfigError(origin + ": '" + section + "' must be an object");
        }
        for (const auto& [field, value] : body.items()) {
            const std::string key = section + "." + field;
            std::string rendered;
            if (value.is_string()) {
                rendered = value.template get<std::string>();
            } else {
                rendered = value.dump();
            }
            handle(key, rendered, origin + ": " + key);
        }
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline bool looks_like_json(const std::string& path, const std::string& text) {
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return true;
    const auto first = text.find_first_not_of(" \t\r\n");
    return first != std::string::npos && text[first] == '{';
}

}  // namespace detail

/// Parses scenario keys from either format via the shared handler.
inline ScenarioConfig parse_scenario(const std::string& text, const std::string& origin) {
    ScenarioConfig cfg;
    double filter_q = 0.1;
    double filter_r = 0.25;
    double filter_p0 = 10.0;
    std::optional<double> front_pos, front_speed, front_off;
    std::optional<double> rear_pos, rear_speed;
    bool have_host_speed = false;
    bool have_duration = false;

    auto handle = [&](const std::string& key, const std::string& value,
                      const std::string& context) {
        const std::string where = context + " (" + key + ")";
        if (key == "host.position") {
            cfg.host.position = detail::parse_double(value, where);
        } else if (key == "host.speed_kmh") {
            cfg.host.speed = kmh_to_mps(detail::parse_double(value, where));
            have_host_speed = true;
        } else if (key == "host.max_speed_kmh") {
            cfg.host_max_speed = kmh_to_mps(detail::parse_double(value, where));
        } else if (key == "host.offset") {
            cfg.host.offset = detail::parse_double(value, where);
        } else if (key == "front.position") {
            front_pos = detail::parse_double(value, where);
        } else if (key == "front.speed_kmh") {
            front_speed = kmh_to_mps(detail::parse_double(value, where));
        } else if (key == "front.offset") {
            front_off = detail::parse_double(value, where);
        } else if (key == "rear.position") {
            rear_pos = detail::parse_double(value, where);
        } else if (key == "rear.speed_kmh") {
            rear_speed = kmh_to_mps(detail::parse_double(value, where));
        } else if (key == "thresholds.d_pr") {
            cfg.thresholds.d_pr = detail::parse_double(value, where);
        } else if (key == "thresholds.d_spf") {
            cfg.thresholds.d_spf = detail::parse_double(value, where);
        } else if (key == "thresholds.d_1pf") {
            cfg.thresholds.d_1pf = detail::parse_double(value, where);
        } else if (key == "thresholds.equality_tolerance") {
            cfg.thresholds.equality_tolerance = detail::parse_double(value, where);
        } else if (key == "filter.q") {
            filter_q = detail::parse_double(value, where);
        } else if (key == "filter.r") {
            filter_r = detail::parse_double(value, where);
        } else if (key == "filter.p0") {
            filter_p0 = detail::parse_double(value, where);
        } else if (key == "sigmoid.a") {
            cfg.sigmoid.a = detail::parse_double(value, where);
        } else if (key == "sigmoid.b") {
            cfg.sigmoid.b = detail::parse_double(value, where);
        } else if (key == "sigmoid.y_max") {
            cfg.sigmoid.y_max = detail::parse_double(value, where);
        } else if (key == "sigmoid.k") {
            cfg.sigmoid.k = detail::parse_double(value, where);
        } else if (key == "sensor.propagation_speed") {
            cfg.sensor.propagation_speed = detail::parse_double(value, where);
        } else if (key == "sensor.carrier_frequency") {
            cfg.sensor.carrier_frequency = detail::parse_double(value, where);
        } else if (key == "noise.sigma") {
            cfg.measurement_noise_sigma = detail::parse_double(value, where);
        } else if (key == "sim.tick") {
            cfg.tick = detail::parse_double(value, where);
        } else if (key == "sim.duration") {
            cfg.duration = detail::parse_double(value, where);
            have_duration = true;
        } else if (key == "sim.seed") {
            cfg.seed = detail::parse_u64(value, where);
        } else {
            throw ConfigError(context + ": unknown key '" + key + "'");
        }
    };

    if (detail::looks_like_json(origin, text)) {
        detail::scan_json(text, origin, handle);
    } else {
        detail::scan_key_values(text, origin, handle);
    }

    if (!have_host_speed) throw ConfigError(origin + ": missing required key host.speed_kmh");
    if (!have_duration) throw ConfigError(origin + ": missing required key sim.duration");

    if (front_pos || front_speed || front_off) {
        if (!front_pos || !front_speed) {
            throw ConfigError(origin +
                              ": front vehicle needs both front.position and front.speed_kmh");
        }
        cfg.front = VehicleSetup{*front_pos, *front_speed, front_off.value_or(0.0)};
    }
    if (rear_pos || rear_speed) {
        if (!rear_pos || !rear_speed) {
            throw ConfigError(origin +
                              ": rear vehicle needs both rear.position and rear.speed_kmh");
        }
        cfg.rear = VehicleSetup{*rear_pos, *rear_speed, 0.0};
    }

    cfg.filter = tracking::FilterConfig::from_scalars(cfg.tick, filter_q, filter_r, filter_p0);
    cfg.validate();
    return cfg;
}

inline ScenarioConfig load_scenario(const std::string& path) {
    return parse_scenario(detail::read_file(path), path);
}

/// Snapshot files drive the `modes` CLI subcommand: presence flags, distances
/// in meters, speeds in km/h (omit a speed key to mark it unknown).
inline SnapshotFile parse_snapshot(const std::string& text, const std::string& origin) {
    SnapshotFile out;
    bool have_host_speed = false;

    auto handle = [&](const std::string& key, const std::string& value,
                      const std::string& context) {
        const std::string where = context + " (" + key + ")";
        if (key == "host.speed_kmh") {
            out.snapshot.host_speed = kmh_to_mps(detail::parse_double(value, where));
            have_host_speed = true;
        } else if (key == "front.present") {
            out.snapshot.front_present = detail::parse_bool(value, where);
        } else if (key == "front.distance") {
            out.snapshot.front_distance = detail::parse_double(value, where);
        } else if (key == "front.speed_kmh") {
            out.snapshot.front_speed = kmh_to_mps(detail::parse_double(value, where));
        } else if (key == "rear.present") {
            out.snapshot.rear_present = detail::parse_bool(value, where);
        } else if (key == "rear.distance") {
            out.snapshot.rear_distance = detail::parse_double(value, where);
        } else if (key == "rear.speed_kmh") {
            out.snapshot.rear_speed = kmh_to_mps(detail::parse_double(value, where));
        } else if (key == "thresholds.d_pr") {
            out.thresholds.d_pr = detail::parse_double(value, where);
        } else if (key == "thresholds.d_spf") {
            out.thresholds.d_spf = detail::parse_double(value, where);
        } else if (key == "thresholds.d_1pf") {
            out.thresholds.d_1pf = detail::parse_double(value, where);
        } else if (key == "thresholds.equality_tolerance") {
            out.thresholds.equality_tolerance = detail::parse_double(value, where);
        } else {
            throw ConfigError(context + ": unknown key '" + key + "'");
        }
    };

    if (detail::looks_like_json(origin, text)) {
        detail::scan_json(text, origin, handle);
    } else {
        detail::scan_key_values(text, origin, handle);
    }

    if (!have_host_speed) throw ConfigError(origin + ": missing required key host.speed_kmh");
    return out;
}

inline SnapshotFile load_snapshot(const std::string& path) {
    return parse_snapshot(detail::read_file(path), path);
}

}  // namespace mcdas::sim
