#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "surropt/metrics.hpp"
#include "surropt/problem.hpp"
#include "surropt/surrogate.hpp"

namespace surropt {

enum class ReplicationPolicy { None, Fixed, Smart };

ReplicationPolicy replication_from_name(const std::string& name);
std::string replication_name(ReplicationPolicy policy);

// One recorded budget step: the best sample-mean solution after that many
// evaluations, scored by its true objective value and by its sample mean.
struct TraceEntry {
    int eval_index = 0;
    double bsms_true = 0.0;
    double bsms_mean = 0.0;
};

struct RunTrace {
    std::vector<TraceEntry> entries;

    // Final best sample-mean solution.
    Eigen::VectorXd best_point;
    double best_mean = 0.0;
    double best_true = 0.0;
    int best_count = 0;

    // 1-based variables used by the last fitted spline surrogate; empty for
    // kernel surrogates.
    std::vector<int> selected_variables;

    int initial_design_size = 0;
    double sigma0 = 0.0;
    int iterations = 0;
    int fallback_iterations = 0;  // iterations rescued by pure exploration

    // Points proposed after the initial design and the samples spent on
    // them; their ratio is the mean replication effort per candidate.
    int candidate_points = 0;
    int candidate_samples = 0;
};

struct ExperimentConfig {
    FunctionId function = FunctionId::Rosenbrock;
    int dim = 30;
    double fiv = 0.5;
    double noise = 0.0;
    SurrogateKind surrogate = SurrogateKind::TkMars;
    ReplicationPolicy replication = ReplicationPolicy::None;
    int replications = 5;  // r for fixed, r_max for smart
    double alpha = 0.05;
    int budget = 1000;
    int initial_design = 0;  // 0: dim + 1
    int pool_size = 0;       // 0: 100 * dim
    int k_prime = 3;
    std::uint64_t seed = 1;
    bool keep_all_samples = false;  // spline fits see every replicate
    SurrogateSettings settings;
};

void validate_config(const ExperimentConfig& config);

// Full surrogate-optimization run: space-filling initial design, then
// fit / select / evaluate rounds until the budget is exhausted. Iterations
// whose surrogate cannot be fitted fall back to the most isolated pool
// point. The trace gains one entry per evaluation.
RunTrace run_experiment(const ExperimentConfig& config);

// Trace rows for serialization; the inverse of rebuilding entries.
std::vector<TraceEntry> export_rows(const RunTrace& trace);

// Convenience: the bsms_true series of a trace.
std::vector<double> true_series(const RunTrace& trace);

}  // namespace surropt
