#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qcs/estimation.hpp"
#include "qcs/qstate.hpp"

namespace qcs {

// Experiment description loaded from a flat key = value scenario file.
// tau and delta are oracle-only ground truth: the simulator uses them to
// build the universe, party logic never sees them.
struct Scenario {
    std::string protocol; // basic-qcs | teleport | ramsey | phase-map
    double omega = 0.0;
    double tau = 0.0;
    std::optional<double> delta; // nullopt => cabrillo draw per trial
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    // teleport
    Amplitude alpha{0.0, 0.0};
    Amplitude beta{0.0, 0.0};
    bool alpha_beta_defaulted = true;
    double correction_time = 0.0; // t_A
    std::optional<double> latency;

    // basic-qcs
    double bob_measure_time = 0.0;
    double alice_readout_time = 1.0;

    // estimate reduction
    double assumed_delta = 0.0;

    // comovement (party 3-velocities; must match for protocol runs)
    double va[3] = {0.0, 0.0, 0.0};
    double vb[3] = {0.0, 0.0, 0.0};

    // ramsey grid: omega*T sweeps [0, 2 pi] over `ramsey_points` points
    std::uint64_t ramsey_points = 17;

    // phase-map grid: x1 = (map_t0 + j*map_dt, x1_x, x1_y, x1_z)
    std::uint64_t map_points = 1;
    double map_t0 = 0.0;
    double map_dt = 1.0;
    double x1_space[3] = {0.0, 0.0, 0.0};
    double x2[4] = {0.0, 0.0, 0.0, 0.0};

    void validate() const;
};

// Thrown by load_scenario with the offending line or field named.
class ScenarioError : public std::runtime_error {
public:
    explicit ScenarioError(const std::string& what) : std::runtime_error(what) {}
};

Scenario load_scenario(const std::string& path);

// Override hook for --seed.
Scenario load_scenario(const std::string& path,
                       std::optional<std::uint64_t> seed_override);

using Cell = std::variant<std::int64_t, double, std::string>;

struct ResultTable {
    std::vector<std::string> comments; // emitted as leading '#' lines
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Deterministic dispatch: per-trial RNG stream = Rng::stream(seed, trial).
// Identical scenario => bit-identical table.
ResultTable run(const Scenario& scenario);

// 17-significant-digit CSV with a leading comment block echoing the
// scenario (hidden parameters included, marked as oracle-only).
void emit_csv(const ResultTable& table, const std::string& path);

std::string format_csv(const ResultTable& table);

// The record stream: column header plus data rows, no comment block.
// This is the byte stream compared by the gauge audit (the comment
// block necessarily differs between gauge-shifted scenarios).
std::string record_stream(const ResultTable& table);

// Phase/offset reduction of a protocol table (teleport or basic-qcs).
ResultTable estimate_table(const Scenario& scenario);

// Gauge audit: run `scenario` as-is and with (tau+shift, delta+omega*shift)
// under the same seed; true iff the record streams are byte-identical.
bool audit_gauge(const Scenario& scenario, double gauge_shift);

// Audit against an explicitly loaded second scenario.
bool audit_gauge_pair(const Scenario& a, const Scenario& b);

} // namespace qcs
