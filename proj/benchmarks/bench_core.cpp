// Microbenchmarks for the hot paths of the optimization loop: tree fitting,
// spline fitting, kernel fitting, and candidate selection.

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "surropt/cart.hpp"
#include "surropt/kernels.hpp"
#include "surropt/mars.hpp"
#include "surropt/rng.hpp"
#include "surropt/sampling.hpp"

namespace {

struct Instance {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
};

Instance make_instance(int n, int d, std::uint64_t seed) {
    surropt::RngStream rng(seed);
    Instance inst;
    inst.X.resize(n, d);
    inst.y.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) inst.X(i, j) = 10.0 * rng.uniform() - 5.0;
        double v = 0.0;
        for (int j = 0; j < d; ++j) {
            v += (j % 2 == 0 ? 1.0 : -0.5) * inst.X(i, j) * inst.X(i, j);
        }
        inst.y[i] = v + 0.1 * rng.normal(0.0, 1.0);
    }
    return inst;
}

void bm_fit_tree(benchmark::State& state) {
    Instance inst = make_instance(static_cast<int>(state.range(0)), 10, 7);
    for (auto _ : state) {
        surropt::RegressionTree tree =
            surropt::RegressionTree::fit(inst.X, inst.y, surropt::TreeOptions{});
        benchmark::DoNotOptimize(tree.leaf_count());
    }
}
BENCHMARK(bm_fit_tree)->Arg(200)->Arg(500);

void bm_fit_mars(benchmark::State& state) {
    Instance inst = make_instance(static_cast<int>(state.range(0)), 10, 11);
    surropt::KnotSet knots = surropt::evenly_spaced_knots(inst.X, 20);
    for (auto _ : state) {
        surropt::MarsModel model =
            surropt::MarsModel::fit(inst.X, inst.y, knots, surropt::MarsOptions{});
        benchmark::DoNotOptimize(model.basis().size());
    }
}
BENCHMARK(bm_fit_mars)->Arg(200)->Arg(500);

void bm_fit_rbf(benchmark::State& state) {
    Instance inst = make_instance(static_cast<int>(state.range(0)), 10, 13);
    for (auto _ : state) {
        surropt::RbfModel model = surropt::fit_rbf(inst.X, inst.y);
        benchmark::DoNotOptimize(model.weights().size());
    }
}
BENCHMARK(bm_fit_rbf)->Arg(200)->Arg(500);

void bm_eepa_select(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    surropt::RngStream rng(17);
    surropt::ScoredPool pool;
    pool.points.reserve(n);
    pool.predicted.resize(n);
    pool.min_dist.resize(n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd x(5);
        for (int j = 0; j < 5; ++j) x[j] = rng.uniform();
        pool.points.push_back(x);
        pool.predicted[i] = rng.normal(0.0, 1.0);
        pool.min_dist[i] = rng.uniform();
    }
    for (auto _ : state) {
        std::vector<int> picks = surropt::eepa_select(pool, 3);
        benchmark::DoNotOptimize(picks.size());
    }
}
BENCHMARK(bm_eepa_select)->Arg(1000)->Arg(3000);

}  // namespace

BENCHMARK_MAIN();
