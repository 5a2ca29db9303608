#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Core>
#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "surropt/replication.hpp"

using surropt::Budget;
using surropt::Dataset;
using surropt::FunctionId;
using surropt::NoisyObjective;
using surropt::RngStream;
using surropt::TestFunction;

namespace {

Eigen::VectorXd vec1(double v) {
    Eigen::VectorXd x(1);
    x[0] = v;
    return x;
}

// Deterministic 1-D objective (Zakharov), increasing for x >= 0:
// f(x) = 1.25 x^2 + 0.0625 x^4.
NoisyObjective exact_objective() {
    NoisyObjective obj(TestFunction(FunctionId::Zakharov, 1, 1.0), 0.0);
    obj.freeze_sigma0(1.0);
    return obj;
}

double zak1(double x) { return 1.25 * x * x + 0.0625 * x * x * x * x; }

}  // namespace

TEST_CASE("critical values agree with the quadrature oracle",
          "[replication]") {
    for (int df : {1, 2, 5, 10, 30}) {
        for (double p : {0.6, 0.9, 0.95, 0.975, 0.995}) {
            REQUIRE_THAT(surropt::t_quantile(p, df),
                         Catch::Matchers::WithinAbs(
                             oracle::t_quantile(p, df), 1e-6));
        }
    }
    // Classical table entries.
    REQUIRE_THAT(surropt::t_quantile(0.975, 1),
                 Catch::Matchers::WithinAbs(12.7062047362, 1e-6));
    REQUIRE_THAT(surropt::t_quantile(0.975, 10),
                 Catch::Matchers::WithinAbs(2.2281388520, 1e-6));
}

TEST_CASE("critical value arguments are validated", "[replication]") {
    REQUIRE_THROWS_AS(surropt::t_quantile(0.0, 5), std::invalid_argument);
    REQUIRE_THROWS_AS(surropt::t_quantile(1.0, 5), std::invalid_argument);
    REQUIRE_THROWS_AS(surropt::t_quantile(0.9, 0), std::invalid_argument);
}

TEST_CASE("records carry running statistics and intervals", "[replication]") {
    Dataset data(0.05);
    int idx = data.append(vec1(0.0), 1.0);
    data.add_sample(idx, 2.0);
    data.add_sample(idx, 3.0);

    const surropt::PointRecord& rec = data.record(idx);
    REQUIRE(rec.count() == 3);
    REQUIRE_THAT(rec.mean, Catch::Matchers::WithinAbs(2.0, 1e-15));
    REQUIRE_THAT(rec.stddev, Catch::Matchers::WithinAbs(1.0, 1e-15));
    double hw = surropt::t_quantile(0.975, 2) * 1.0 / std::sqrt(3.0);
    REQUIRE_THAT(rec.ci_low, Catch::Matchers::WithinAbs(2.0 - hw, 1e-9));
    REQUIRE_THAT(rec.ci_up, Catch::Matchers::WithinAbs(2.0 + hw, 1e-9));
    REQUIRE_THAT(hw, Catch::Matchers::WithinAbs(2.484138554, 1e-6));
}

TEST_CASE("single observations have an unbounded interval", "[replication]") {
    Dataset data(0.05);
    int idx = data.append(vec1(1.0), 4.0);
    const surropt::PointRecord& rec = data.record(idx);
    REQUIRE(rec.mean == 4.0);
    REQUIRE(rec.ci_low == -std::numeric_limits<double>::infinity());
    REQUIRE(rec.ci_up == std::numeric_limits<double>::infinity());
}

TEST_CASE("best solution is the earliest smallest mean", "[replication]") {
    Dataset data(0.05);
    data.append(vec1(0.0), 5.0);
    int second = data.append(vec1(1.0), 3.0);
    data.append(vec1(2.0), 3.0);  // tied mean, later record
    REQUIRE(data.bsms_index() == second);

    // New evidence can move the incumbent.
    int third = 2;
    data.add_sample(third, 1.0);  // mean of {3, 1} = 2
    REQUIRE(data.bsms_index() == third);
    REQUIRE(data.bsms().mean == 2.0);
}

TEST_CASE("exact coordinates key the records", "[replication]") {
    Dataset data(0.05);
    data.append(vec1(0.5), 1.0);
    REQUIRE(data.find(vec1(0.5)) == 0);
    REQUIRE(data.find(vec1(0.5000001)) == -1);
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    data.mean_matrix(X, y);
    REQUIRE(X.rows() == 1);
    REQUIRE(y[0] == 1.0);
}

TEST_CASE("sample matrix repeats a row per observation", "[replication]") {
    Dataset data(0.05);
    int idx = data.append(vec1(2.0), 1.0);
    data.add_sample(idx, 3.0);
    data.append(vec1(4.0), 7.0);
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    data.sample_matrix(X, y);
    REQUIRE(X.rows() == 3);
    REQUIRE(X(0, 0) == 2.0);
    REQUIRE(X(1, 0) == 2.0);
    REQUIRE(X(2, 0) == 4.0);
    REQUIRE(y[1] == 3.0);
}

TEST_CASE("intervals achieve their nominal coverage", "[replication]") {
    RngStream rng(500);
    const int trials = 10000, r = 10;
    int covered = 0;
    for (int t = 0; t < trials; ++t) {
        Dataset data(0.05);
        int idx = data.append(vec1(0.0), rng.normal(0.0, 1.0));
        for (int k = 1; k < r; ++k) data.add_sample(idx, rng.normal(0.0, 1.0));
        const surropt::PointRecord& rec = data.record(idx);
        if (rec.ci_low <= 0.0 && 0.0 <= rec.ci_up) ++covered;
    }
    double rate = covered / static_cast<double>(trials);
    REQUIRE_THAT(rate, Catch::Matchers::WithinAbs(0.95, 0.02));
}

TEST_CASE("single-shot evaluation spends one unit per candidate",
          "[replication]") {
    NoisyObjective obj = exact_objective();
    Dataset data(0.05);
    Budget budget(2);
    RngStream rng(1);
    std::vector<Eigen::VectorXd> candidates{vec1(1.0), vec1(2.0), vec1(3.0)};
    int hook_calls = 0;
    surropt::evaluate_no_replication(data, candidates, obj, budget, rng,
                                     [&] { ++hook_calls; });
    REQUIRE(data.size() == 2);  // third candidate hit the budget wall
    REQUIRE(budget.exhausted());
    REQUIRE(hook_calls == 2);
    REQUIRE(data.record(0).mean == zak1(1.0));
}

TEST_CASE("fixed replication spends r units per candidate", "[replication]") {
    NoisyObjective obj = exact_objective();
    Dataset data(0.05);
    Budget budget(5);
    RngStream rng(1);
    std::vector<Eigen::VectorXd> candidates{vec1(1.0), vec1(2.0)};
    int hook_calls = 0;
    surropt::evaluate_fixed_replication(data, candidates, 3, obj, budget, rng,
                                        [&] { ++hook_calls; });
    REQUIRE(data.size() == 2);
    REQUIRE(data.record(0).count() == 3);
    REQUIRE(data.record(1).count() == 2);  // truncated by the budget
    REQUIRE(hook_calls == 5);
    REQUIRE_THROWS_AS(
        surropt::evaluate_fixed_replication(data, candidates, 0, obj, budget,
                                            rng),
        std::invalid_argument);
}

TEST_CASE("adaptive replication stops at two exact samples", "[replication]") {
    // Without noise every candidate is sampled twice: the first interval is
    // unbounded, the second is a point that can never undercut the
    // incumbent's bound.
    NoisyObjective obj = exact_objective();
    Dataset data(0.05);
    Budget budget(100);
    RngStream rng(1);
    int idx = data.append(vec1(1.0), zak1(1.0));
    data.add_sample(idx, zak1(1.0));  // incumbent with a tight interval

    std::vector<Eigen::VectorXd> candidates{
        vec1(2.0),    // worse than the incumbent
        vec1(0.5),    // better: becomes the incumbent in the first pass
        vec1(0.8)};   // better than the original, worse than the new best
    int hook_calls = 0;
    surropt::evaluate_smart_replication(data, candidates, 5, obj, budget, rng,
                                        [&] { ++hook_calls; });
    REQUIRE(data.size() == 4);
    REQUIRE(data.record(1).count() == 2);
    REQUIRE(data.record(2).count() == 2);
    REQUIRE(data.record(3).count() == 2);
    REQUIRE(hook_calls == 6);
    REQUIRE(data.bsms().x == vec1(0.5));
}

TEST_CASE("adaptive replication replicates under uncertainty",
          "[replication]") {
    NoisyObjective obj(TestFunction(FunctionId::Zakharov, 1, 1.0), 0.5);
    obj.freeze_sigma0(2.0);  // noise standard deviation 1
    Dataset data(0.05);
    Budget budget(1000);
    RngStream rng(42);
    const int r_max = 4;
    std::vector<Eigen::VectorXd> candidates;
    for (int i = 0; i < 20; ++i) candidates.push_back(vec1(0.1 * i));
    int hook_calls = 0;
    surropt::evaluate_smart_replication(data, candidates, r_max, obj, budget,
                                        rng, [&] { ++hook_calls; });
    int total = 0;
    bool some_replication = false;
    for (int i = 0; i < data.size(); ++i) {
        int c = data.record(i).count();
        REQUIRE(c >= 2);
        REQUIRE(c <= r_max + 1);
        some_replication = some_replication || c > 2;
        total += c;
    }
    REQUIRE(some_replication);  // noise must trigger extra replication
    REQUIRE(hook_calls == total);
    REQUIRE(budget.used() == total);
}

TEST_CASE("adaptive replication respects the budget", "[replication]") {
    NoisyObjective obj = exact_objective();
    Dataset data(0.05);
    Budget budget(3);
    RngStream rng(1);
    std::vector<Eigen::VectorXd> candidates{vec1(2.0), vec1(1.0)};
    surropt::evaluate_smart_replication(data, candidates, 5, obj, budget, rng);
    // First pass spends two units; only one remains for the loop.
    REQUIRE(budget.exhausted());
    REQUIRE(data.record(0).count() + data.record(1).count() == 3);

    Budget one(1);
    Dataset fresh(0.05);
    surropt::evaluate_smart_replication(fresh, candidates, 5, obj, one, rng);
    REQUIRE(fresh.size() == 1);  // second candidate never sampled
}

TEST_CASE("repeated candidates extend the existing record", "[replication]") {
    NoisyObjective obj = exact_objective();
    Dataset data(0.05);
    Budget budget(10);
    RngStream rng(1);
    std::vector<Eigen::VectorXd> twice{vec1(1.0), vec1(1.0)};
    surropt::evaluate_no_replication(data, twice, obj, budget, rng);
    REQUIRE(data.size() == 1);
    REQUIRE(data.record(0).count() == 2);
}
