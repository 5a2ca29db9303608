#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "surropt/optimizer.hpp"

namespace surropt {

// One cell of the experiment matrix.
struct CellSpec {
    FunctionId function = FunctionId::Rosenbrock;
    SurrogateKind surrogate = SurrogateKind::Rbf;
    ReplicationPolicy policy = ReplicationPolicy::None;
    int replications = 0;  // r or r_max; 0 under policy None
    double noise = 0.0;
};

struct RunnerConfig {
    std::vector<FunctionId> functions;        // default: all five
    std::vector<SurrogateKind> surrogates;    // default: rbf, tkmars
    std::vector<ReplicationPolicy> policies;  // default: none, fixed, smart
    std::vector<int> fixed_levels = {5, 10};
    std::vector<int> rmax_levels = {5, 10};
    std::vector<double> noise_levels = {0.0, 0.05, 0.10, 0.25};
    int executions = 30;
    std::uint64_t master_seed = 20240101;
    int jobs = 1;
    Quadrature quadrature = Quadrature::Trapezoid;
    bool write_traces = true;
    std::string out_dir = "results";

    // Per-run settings shared by every cell; cell fields override the
    // function, surrogate, replication, and noise entries.
    ExperimentConfig base;
};

// Full factorial expansion in a fixed deterministic order.
std::vector<CellSpec> expand_cells(const RunnerConfig& config);

// Per-run configuration for one cell, seeded for one execution.
ExperimentConfig make_run_config(const RunnerConfig& config,
                                 const CellSpec& cell, std::uint64_t seed);

struct RunRecord {
    int cell_index = 0;
    int execution = 0;
    CellSpec cell;
    std::uint64_t seed = 0;
    bool failed = false;
    std::string error;
    RunTrace trace;
    double auc = 0.0;
    double mtfauc = 0.0;
};

// Runs executions x cells, optionally across worker threads. Results are
// identical for any job count: every run derives its own random stream from
// (master seed, cell, execution) and lands in a pre-assigned slot.
std::vector<RunRecord> execute_matrix(const RunnerConfig& config);

std::string run_id(const RunnerConfig& config, const RunRecord& record);

// Shortest representation that parses back to exactly the same double.
std::string format_double(double value);

void write_trace_csv(std::ostream& os, const std::string& id,
                     const RunTrace& trace);
void write_summary_csv(std::ostream& os, const RunnerConfig& config,
                       std::span<const RunRecord> records);

struct SummaryStats {
    int n = 0;
    double mean = 0.0;
    double variance = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
};

SummaryStats summarize(std::span<const double> values);

struct CellSummary {
    CellSpec cell;
    int runs = 0;
    int failures = 0;
    SummaryStats mtfauc;
    SummaryStats final_true;
};

std::vector<CellSummary> summarize_cells(const RunnerConfig& config,
                                         std::span<const RunRecord> records);
void print_summary_table(std::ostream& os,
                         std::span<const CellSummary> summaries);

// Writes summary.csv and per-run trace files under config.out_dir.
// Returns the number of failed runs.
int write_outputs(const RunnerConfig& config,
                  std::span<const RunRecord> records);

}  // namespace surropt
