#pragma once

// Command-line driver: a validated run configuration, the five subcommand
// entry points, and their report envelopes. The commands live in the library
// (not in main) so tests can run them in-process and assert on the reports
// byte for byte.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace su3 {

inline constexpr const char* kVersionTag = "1.0.0";

// Invalid configuration; the driver maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    uint64_t seed = 0;
    int samples = 512;
    int s_min = 2, s_max = 16;
    std::vector<std::pair<int, int>> orbit_list;  // explicit rays (p1, q1)
    double band_lo = -1.0, band_hi = -1.0;        // q1/sqrt(norm) band, unset < 0
    long long max_norm = 40;                      // primitive-norm cutoff
    int deg_u = 1, deg_v = 1;                     // canonical test-word degrees
    long long rho2 = 0;                           // orbits: sphere norm, unset 0
    int chain = 0;                                // orbits: radial chain depth, unset 0
    int p_max = 200, n_max = 4;
    int trace_p_cap = 12;                         // largest p given matrix-trace columns
    std::string kind = "berezin";                 // berezin | scaled
    bool inject_fault = false;                    // corrupt a structure constant
    // tolerances, serialized into every report
    double tol_exact = 0.0;
    double tol_dual_route = 1e-8;
    double tol_limit = 0.05;
    double tol_trace = 1e-9;
    double tol_gluing = 1e-8;
    double slope_lo = -1.3, slope_hi = -0.7;
};

struct CommandResult {
    int exit_code = 0;    // 0 pass, 1 any failure; config errors throw instead
    std::string summary;  // human-readable lines
    std::string csv;      // flat table with fixed columns; empty if none
    std::string json;     // report envelope embedding config and version tag
};

// Flag-text helpers shared by the driver and the tests.
std::pair<int, int> parse_int_pair(const std::string& text);  // "1,0"
std::pair<int, int> parse_s_range(const std::string& text);   // "2..16"
std::pair<double, double> parse_band(const std::string& text);  // "0.3,0.5"

CommandResult cmd_verify(const RunConfig& cfg);
CommandResult cmd_sweep(const RunConfig& cfg);
CommandResult cmd_orbits(const RunConfig& cfg);
CommandResult cmd_charnum(const RunConfig& cfg);
CommandResult cmd_magoo(const RunConfig& cfg);

}  // namespace su3
