#ifndef NETEVOLVE_EXPERIMENTS_HPP
#define NETEVOLVE_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "netevolve/ga_engine.hpp"

namespace netevolve {

// A sweep over GaConfig fields: each entry is (config key, list of values in
// config-file syntax); cells are the cross product in row-major order.
struct Scenario {
    std::string name;
    GaConfig base;
    std::vector<std::pair<std::string, std::vector<std::string>>> sweeps;
    int replicates = 5;  // seeds per cell
    int window_start = 50;
    int window_end = 150;
};

// Windowed statistics of one run.
struct WindowStats {
    double mean_reliability = 0.0;
    double sd_reliability = 0.0;
    double mean_cost = 0.0;
    double sd_cost = 0.0;
    double mean_redundancy = 0.0;
    double mean_pleiotropy = 0.0;
    int n = 0;
};

// Mean and sample standard deviation (n-1 denominator) over generations
// start..end inclusive (1-based). Throws WindowOutOfRange when the window is
// not covered by the records.
WindowStats summarize(const std::vector<GenerationRecord>& records, int start,
                      int end);

struct Sample {
    double mean = 0.0;
    double sd = 0.0;
    int n = 0;
};

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    bool significant = false;
    bool degenerate = false;  // both SDs zero with equal means
};

// Welch's unequal-variance t test with Welch-Satterthwaite degrees of
// freedom, two-sided at the given confidence. Degenerate input (both SDs
// zero, equal means) reports t = 0, not significant.
WelchResult welch_t_test(const Sample& a, const Sample& b,
                         double confidence = 0.95);

// p-quantile of Student's t distribution with df degrees of freedom,
// computed by bisecting the CDF (regularized incomplete beta); accurate to
// well below 1e-4 over the df range used here.
double student_t_quantile(double p, double df);

// Two-sided critical value at the given confidence level.
double t_critical_value(double confidence, double df);

// One completed run within a scenario.
struct CellRun {
    int cell = 0;
    int replicate = 0;
    std::uint64_t seed = 0;  // the run's derived master seed
    GaConfig cfg;
    std::vector<GenerationRecord> records;
};

struct SummaryRow {
    std::string scenario;
    int cell = 0;
    int strategy = 1;
    std::string param;  // swept parameter shown in the CSV
    std::string value;
    std::uint64_t seed = 0;
    double mean_rel = 0.0;
    double sd_rel = 0.0;
    double mean_cost = 0.0;
    double sd_cost = 0.0;
    double mean_redundancy = 0.0;
    double mean_pleiotropy = 0.0;
};

struct ScenarioResult {
    std::vector<SummaryRow> summary;  // cell-major, then replicate
    std::vector<CellRun> runs;        // same order
    std::vector<std::string> errors;  // per-cell failures, never fatal
};

// Runs every sweep cell x replicate with a seed derived from
// (base.master_seed, cell, replicate). With threads > 1 the runs execute
// concurrently; the result is identical to the serial one.
ScenarioResult run_scenario(const Scenario& scenario, int threads = 1);

// Built-in scenario presets; names() lists them.
Scenario make_preset(const std::string& name);
std::vector<std::string> preset_names();

// Scenario description file: the flat key=value config syntax plus
// name=, replicates=, window_start=, window_end= and sweep.<key>=v1,v2,...
Scenario load_scenario(const std::string& path);

// CSV / plot-data artifacts. Byte output is deterministic: fixed headers,
// LF newlines, floats at 6 significant digits.
void write_generations_csv(const std::vector<CellRun>& runs,
                           const std::string& path);
void write_summary_csv(const std::vector<SummaryRow>& rows,
                       const std::string& path);
void write_plot_data(const std::vector<GenerationRecord>& records,
                     const std::string& path);

}  // namespace netevolve

#endif  // NETEVOLVE_EXPERIMENTS_HPP
