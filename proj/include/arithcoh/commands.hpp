#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "arithcoh/adelic.hpp"

namespace arithcoh {

// Process exit codes used by the command-line tool.
enum ExitCode : int { exit_pass = 0, exit_usage = 1, exit_breach = 2 };

struct ReportValue {
    std::string name;
    double value;
    double error_bound;
};

struct RunReport {
    std::string command;
    nlohmann::json inputs;
    std::vector<ReportValue> results;
    std::optional<std::uint64_t> seed;
    std::int64_t wall_time_ms = 0;
    // Per-row data (sweeps, per-sample verification); every number is a
    // {"value", "error_bound"} pair.
    nlohmann::json table = nlohmann::json::array();
    int exit_code = exit_pass;

    nlohmann::json to_json(bool include_timing = true) const;
};

RunReport cmd_h0(const nlohmann::json& spec, double eps);
RunReport cmd_h1(const nlohmann::json& spec, double eps);
RunReport cmd_deg(const nlohmann::json& spec);

enum class VerifyKind { rr, duality, poisson };
VerifyKind parse_verify_kind(const std::string& text);

struct VerifyOptions {
    VerifyKind kind = VerifyKind::rr;
    std::string field = "q";  // --field syntax
    int samples = 50;
    std::uint64_t seed = 0;
    double deg_lo = -10.0;
    double deg_hi = 10.0;
    double eps = 1e-12;
    std::optional<double> threshold;  // default per kind
    int rank = 1;
    bool mixing = false;
};

double default_threshold(VerifyKind kind);

// Seed of the i-th verification sample.
std::uint64_t sample_seed(std::uint64_t seed, int index);

RunReport cmd_verify(const VerifyOptions& options);

struct SweepOptions {
    std::string field = "q";
    double from = -5.0;
    double to = 5.0;
    double step = 0.5;
    double eps = 1e-12;
};

RunReport cmd_sweep(const SweepOptions& options);

// RFC 4180 table with header deg,h0,h1,rr_defect.
std::string sweep_csv(const RunReport& report);

} // namespace arithcoh
