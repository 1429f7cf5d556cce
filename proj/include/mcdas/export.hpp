#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mcdas/simulation.hpp"

// Record and report serialization. CSV renders floats with 9 significant
// digits in the documented column order; JSON mirrors the record/report field
// names and stores full-precision doubles so a re-read reproduces values
// exactly.

namespace mcdas::sim {

enum class ExportFormat { Csv, Json };

inline ExportFormat parse_format(const std::string& name) {
    if (name == "csv") return ExportFormat::Csv;
    if (name == "json") return ExportFormat::Json;
    throw std::invalid_argument("format must be csv or json, got '" + name + "'");
}

namespace detail {

inline std::string format_float(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.9g", value);
    return buffer;
}

inline std::string format_opt(const std::optional<double>& value) {
    return value ? format_float(*value) : std::string();
}

inline nlohmann::json opt_json(const std::optional<double>& value) {
    return value ? nlohmann::json(*value) : nlohmann::json(nullptr);
}

inline nlohmann::json point_json(const std::optional<double>& x,
                                 const std::optional<double>& y) {
    if (!x || !y) return nullptr;
    return nlohmann::json{{"x", *x}, {"y", *y}};
}

inline void write_file(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << text;
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace detail

inline constexpr const char* kRecordCsvHeader =
    "t,mode,host_true_x,host_true_y,front_true_x,front_true_y,rear_true_x,rear_true_y,"
    "front_est_x,front_est_y,rear_est_x,rear_est_y,host_speed,host_lateral_y";

inline std::string records_to_csv(const std::vector<TickRecord>& records) {
    std::string out = kRecordCsvHeader;
    out += '\n';
    for (const auto& r : records) {
        out += detail::format_float(r.t);
        out += ',';
        out += decision::to_string(r.mode);
        out += ',';
        out += detail::format_float(r.host_x);
        out += ',';
        out += detail::format_float(r.host_y);
        out += ',';
        out += detail::format_opt(r.front_x);
        out += ',';
        out += detail::format_opt(r.front_y);
        out += ',';
        out += detail::format_opt(r.rear_x);
        out += ',';
        out += detail::format_opt(r.rear_y);
        out += ',';
        out += detail::format_opt(r.front_est_x);
        out += ',';
        out += detail::format_opt(r.front_est_y);
        out += ',';
        out += detail::format_opt(r.rear_est_x);
        out += ',';
        out += detail::format_opt(r.rear_est_y);
        out += ',';
        out += detail::format_float(r.host_speed);
        out += ',';
        out += detail::format_float(r.host_lateral_y);
        out += '\n';
    }
    return out;
}

inline nlohmann::json records_to_json(const std::vector<TickRecord>& records) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : records) {
        rows.push_back({
            {"t", r.t},
            {"mode", decision::to_string(r.mode)},
            {"host", {{"x", r.host_x}, {"y", r.host_y}}},
            {"front", detail::point_json(r.front_x, r.front_y)},
            {"rear", detail::point_json(r.rear_x, r.rear_y)},
            {"front_estimate", detail::point_json(r.front_est_x, r.front_est_y)},
            {"rear_estimate", detail::point_json(r.rear_est_x, r.rear_est_y)},
            {"host_speed", r.host_speed},
            {"host_lateral_y", r.host_lateral_y},
        });
    }
    return nlohmann::json{{"records", rows}};
}

inline std::string report_to_csv(const MonteCarloReport& report) {
    std::string out = "key,value\n";
    auto row = [&out](const std::string& key, const std::string& value) {
        out += key;
        out += ',';
        out += value;
        out += '\n';
    };
    auto vehicle = [&](const std::string& prefix, const VehicleErrorStats& stats) {
        row(prefix + "_mean_error", detail::format_float(stats.mean_error));
        row(prefix + "_max_error", detail::format_float(stats.max_error));
        row(prefix + "_mean_squared_error", detail::format_float(stats.mean_squared_error));
        row(prefix + "_raw_mean_squared_error",
            detail::format_float(stats.raw_mean_squared_error));
        row(prefix + "_runs_with_data", std::to_string(stats.runs_with_data));
    };
    row("runs", std::to_string(report.runs));
    vehicle("front", report.front);
    vehicle("rear", report.rear);
    row("crash_zone_hit_fraction", detail::format_float(report.crash_zone_hit_fraction));
    row("failed_runs", std::to_string(report.failed_runs));
    std::string seeds;
    for (std::size_t i = 0; i < report.run_seeds.size(); ++i) {
        if (i) seeds += ';';
        seeds += std::to_string(report.run_seeds[i]);
    }
    row("run_seeds", seeds);
    return out;
}

inline nlohmann::json report_to_json(const MonteCarloReport& report) {
    auto vehicle = [](const VehicleErrorStats& stats) {
        return nlohmann::json{
            {"mean_error", stats.mean_error},
            {"max_error", stats.max_error},
            {"mean_squared_error", stats.mean_squared_error},
            {"raw_mean_squared_error", stats.raw_mean_squared_error},
            {"runs_with_data", stats.runs_with_data},
        };
    };
    return nlohmann::json{
        {"runs", report.runs},
        {"front", vehicle(report.front)},
        {"rear", vehicle(report.rear)},
        {"crash_zone_hit_fraction", report.crash_zone_hit_fraction},
        {"run_seeds", report.run_seeds},
        {"failed_runs", report.failed_runs},
        {"failures", report.failures},
    };
}

inline void export_records(const std::vector<TickRecord>& records, const std::string& path,
                           ExportFormat format) {
    if (format == ExportFormat::Csv) {
        detail::write_file(records_to_csv(records), path);
    } else {
        detail::write_file(records_to_json(records).dump(2) + "\n", path);
    }
}

inline void export_report(const MonteCarloReport& report, const std::string& path,
                          ExportFormat format) {
    if (format == ExportFormat::Csv) {
        detail::write_file(report_to_csv(report), path);
    } else {
        detail::write_file(report_to_json(report).dump(2) + "\n", path);
    }
}

}  // namespace mcdas::sim
