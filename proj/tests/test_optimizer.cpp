// End-to-end behavior of run_experiment: config validation, trace shape,
// monotonicity of the noise-free incumbent, determinism, and the budget
// accounting shared by all replication policies.
#include <catch2/catch_amalgamated.hpp>

#include "surropt/optimizer.hpp"

using namespace surropt;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.function = FunctionId::Zakharov;
    c.dim = 3;
    c.fiv = 1.0;
    c.noise = 0.0;
    c.surrogate = SurrogateKind::Rbf;
    c.replication = ReplicationPolicy::None;
    c.budget = 40;
    c.seed = 42;
    return c;
}

}  // namespace

TEST_CASE("invalid configurations are rejected", "[optimizer]") {
    ExperimentConfig ok = small_config();
    REQUIRE_NOTHROW(validate_config(ok));

    auto expect_reject = [&](auto&& mutate) {
        ExperimentConfig c = small_config();
        mutate(c);
        REQUIRE_THROWS_AS(validate_config(c), std::invalid_argument);
    };

    expect_reject([](ExperimentConfig& c) { c.dim = 0; });
    expect_reject([](ExperimentConfig& c) { c.fiv = 0.0; });
    expect_reject([](ExperimentConfig& c) { c.fiv = 1.1; });
    expect_reject([](ExperimentConfig& c) { c.noise = -0.01; });
    expect_reject([](ExperimentConfig& c) { c.budget = 0; });
    expect_reject([](ExperimentConfig& c) { c.alpha = 0.0; });
    expect_reject([](ExperimentConfig& c) { c.alpha = 1.0; });
    expect_reject([](ExperimentConfig& c) { c.initial_design = -1; });
    expect_reject([](ExperimentConfig& c) { c.pool_size = -2; });
    expect_reject([](ExperimentConfig& c) { c.k_prime = 0; });
    expect_reject([](ExperimentConfig& c) { c.settings.rbf_eta = 1.0; });
    expect_reject([](ExperimentConfig& c) { c.settings.tree.minsplit = 1; });
    expect_reject([](ExperimentConfig& c) { c.settings.tree.maxdepth = 0; });
    expect_reject([](ExperimentConfig& c) {
        c.replication = ReplicationPolicy::Fixed;
        c.replications = 0;
    });
    // replications is ignored without a replication policy.
    ExperimentConfig none = small_config();
    none.replications = 0;
    REQUIRE_NOTHROW(validate_config(none));
}

TEST_CASE("noise-free run: one entry per evaluation, non-increasing best",
          "[optimizer]") {
    ExperimentConfig c = small_config();
    RunTrace trace = run_experiment(c);

    REQUIRE(trace.entries.size() == static_cast<std::size_t>(c.budget));
    REQUIRE(trace.initial_design_size == c.dim + 1);
    REQUIRE(trace.iterations > 0);
    REQUIRE(trace.sigma0 > 0.0);

    for (std::size_t i = 0; i < trace.entries.size(); ++i) {
        const TraceEntry& e = trace.entries[i];
        REQUIRE(e.eval_index == static_cast<int>(i) + 1);
        // Without noise the sample mean at a point is its true value.
        REQUIRE(e.bsms_mean == e.bsms_true);
        if (i > 0) REQUIRE(e.bsms_true <= trace.entries[i - 1].bsms_true);
    }
    REQUIRE(trace.best_true == trace.entries.back().bsms_true);
    REQUIRE(trace.best_mean == trace.best_true);
    REQUIRE(trace.best_count == 1);
    // Kernel surrogates report no variable subset.
    REQUIRE(trace.selected_variables.empty());

    // Every post-design evaluation lands on a proposed candidate.
    REQUIRE(trace.candidate_points > 0);
    REQUIRE(trace.candidate_samples ==
            c.budget - trace.initial_design_size);

    std::vector<double> series = true_series(trace);
    REQUIRE(series.size() == trace.entries.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        REQUIRE(series[i] == trace.entries[i].bsms_true);
    }
    std::vector<TraceEntry> rows = export_rows(trace);
    REQUIRE(rows.size() == trace.entries.size());
    REQUIRE(rows.front().eval_index == trace.entries.front().eval_index);
}

TEST_CASE("spline surrogate reports the variables it kept", "[optimizer]") {
    ExperimentConfig c = small_config();
    c.function = FunctionId::Rosenbrock;
    c.dim = 4;
    c.surrogate = SurrogateKind::TkMars;
    c.budget = 60;
    RunTrace trace = run_experiment(c);

    REQUIRE(trace.entries.size() == static_cast<std::size_t>(c.budget));
    REQUIRE_FALSE(trace.selected_variables.empty());
    for (int v : trace.selected_variables) {
        REQUIRE(v >= 1);
        REQUIRE(v <= c.dim);
    }
    // Reported 1-based, ascending, without duplicates.
    for (std::size_t i = 1; i < trace.selected_variables.size(); ++i) {
        REQUIRE(trace.selected_variables[i - 1] < trace.selected_variables[i]);
    }
}

TEST_CASE("identical configuration and seed reproduce the trace bitwise",
          "[optimizer]") {
    ExperimentConfig c = small_config();
    c.dim = 2;
    c.noise = 0.1;
    c.replication = ReplicationPolicy::Fixed;
    c.replications = 3;
    c.budget = 30;
    c.seed = 99;

    RunTrace a = run_experiment(c);
    RunTrace b = run_experiment(c);

    REQUIRE(a.entries.size() == b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        REQUIRE(a.entries[i].eval_index == b.entries[i].eval_index);
        REQUIRE(a.entries[i].bsms_true == b.entries[i].bsms_true);
        REQUIRE(a.entries[i].bsms_mean == b.entries[i].bsms_mean);
    }
    REQUIRE(a.best_point.size() == b.best_point.size());
    REQUIRE((a.best_point - b.best_point).norm() == 0.0);
    REQUIRE(a.best_mean == b.best_mean);
    REQUIRE(a.best_count == b.best_count);
    REQUIRE(a.iterations == b.iterations);
    REQUIRE(a.candidate_points == b.candidate_points);
    REQUIRE(a.candidate_samples == b.candidate_samples);

    // A different seed explores differently.
    c.seed = 100;
    RunTrace d = run_experiment(c);
    bool any_diff = d.entries.size() != a.entries.size();
    for (std::size_t i = 0; !any_diff && i < a.entries.size(); ++i) {
        any_diff = a.entries[i].bsms_true != d.entries[i].bsms_true;
    }
    REQUIRE(any_diff);
}

TEST_CASE("budget equal to the initial design leaves no iterations",
          "[optimizer]") {
    ExperimentConfig c = small_config();
    c.budget = c.dim + 1;
    RunTrace trace = run_experiment(c);
    REQUIRE(trace.entries.size() == static_cast<std::size_t>(c.budget));
    REQUIRE(trace.iterations == 0);
    REQUIRE(trace.candidate_points == 0);
    REQUIRE(trace.candidate_samples == 0);
}

TEST_CASE("explicit design and pool sizes are honored", "[optimizer]") {
    ExperimentConfig c = small_config();
    c.dim = 2;
    c.initial_design = 8;
    c.pool_size = 50;
    c.budget = 20;
    RunTrace trace = run_experiment(c);
    REQUIRE(trace.initial_design_size == 8);
    REQUIRE(trace.entries.size() == static_cast<std::size_t>(c.budget));
}

TEST_CASE("noisy replication policies spend the whole budget", "[optimizer]") {
    ExperimentConfig c = small_config();
    c.dim = 2;
    c.noise = 0.25;
    c.budget = 40;

    SECTION("adaptive replication") {
        c.replication = ReplicationPolicy::Smart;
        c.replications = 4;
        RunTrace trace = run_experiment(c);
        REQUIRE(trace.entries.size() == static_cast<std::size_t>(c.budget));
        REQUIRE(trace.candidate_points > 0);
        REQUIRE(trace.candidate_samples ==
                c.budget - trace.initial_design_size);
        // Replication concentrates effort: fewer points than samples.
        REQUIRE(trace.candidate_points < trace.candidate_samples);
    }
    SECTION("fixed replication with per-replicate spline rows") {
        c.surrogate = SurrogateKind::TkMars;
        c.replication = ReplicationPolicy::Fixed;
        c.replications = 3;
        c.keep_all_samples = true;
        RunTrace trace = run_experiment(c);
        REQUIRE(trace.entries.size() == static_cast<std::size_t>(c.budget));
        REQUIRE(trace.candidate_samples ==
                c.budget - trace.initial_design_size);
    }
}
