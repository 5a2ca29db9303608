#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Core>
#include <cmath>
#include <vector>

#include "surropt/errors.hpp"
#include "surropt/kernels.hpp"
#include "surropt/rng.hpp"

using surropt::GpHyperParams;
using surropt::GpModel;
using surropt::RbfModel;
using surropt::RngStream;

namespace {

void smooth_instance(RngStream& rng, int n, int d, Eigen::MatrixXd& X,
                     Eigen::VectorXd& y) {
    X.resize(n, d);
    y.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) X(i, j) = rng.uniform(-5.0, 5.0);
        double v = 0.0;
        for (int j = 0; j < d; ++j) {
            v += 0.3 * X(i, j) * X(i, j) + std::sin(X(i, j));
        }
        y[i] = v;
    }
}

}  // namespace

TEST_CASE("duplicate rows collapse to their average output", "[kernels]") {
    Eigen::MatrixXd X(3, 2);
    X << 1.0, 2.0, 3.0, 4.0, 1.0, 2.0;
    Eigen::VectorXd y(3);
    y << 1.0, 2.0, 5.0;
    surropt::collapse_duplicates(X, y);
    REQUIRE(X.rows() == 2);
    REQUIRE(X(0, 0) == 1.0);
    REQUIRE(X(1, 0) == 3.0);
    REQUIRE(y[0] == 3.0);  // mean of 1 and 5
    REQUIRE(y[1] == 2.0);
}

TEST_CASE("radial surrogate interpolates the training data", "[kernels]") {
    RngStream rng(41);
    for (int n : {5, 50}) {
        Eigen::MatrixXd X;
        Eigen::VectorXd y;
        smooth_instance(rng, n, 3, X, y);
        RbfModel model = surropt::fit_rbf(X, y);
        Eigen::VectorXd pred = model.predict_batch(X);
        double tol = 1e-8 * (1.0 + y.lpNorm<Eigen::Infinity>());
        REQUIRE((pred - y).lpNorm<Eigen::Infinity>() < tol);
    }
}

TEST_CASE("radial surrogate reproduces linear data everywhere", "[kernels]") {
    RngStream rng(42);
    const int n = 30, d = 3;
    Eigen::MatrixXd X(n, d);
    Eigen::VectorXd y(n);
    auto f = [](const Eigen::VectorXd& x) {
        return 4.0 - x[0] + 2.0 * x[2];
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) X(i, j) = rng.uniform(-3.0, 3.0);
        y[i] = f(X.row(i).transpose());
    }
    RbfModel model = surropt::fit_rbf(X, y);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd x(d);
        for (int j = 0; j < d; ++j) x[j] = rng.uniform(-3.0, 3.0);
        REQUIRE_THAT(model.predict(x),
                     Catch::Matchers::WithinAbs(f(x), 1e-6));
    }
}

TEST_CASE("smoothing surrogate trades interpolation for stability",
          "[kernels]") {
    RngStream rng(43);
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    smooth_instance(rng, 40, 2, X, y);
    RbfModel smooth = surropt::fit_noninterpolating_rbf(X, y);
    Eigen::VectorXd pred = smooth.predict_batch(X);
    double residual = (pred - y).lpNorm<Eigen::Infinity>();
    REQUIRE(residual > 1e-12);  // no longer an interpolant
    REQUIRE(residual < 0.1 * (1.0 + y.lpNorm<Eigen::Infinity>()));

    // Stationarity of the smoothing system: the training misfit equals the
    // ridge eta/(1 - eta) times the kernel weights, entry for entry.
    double eta = 1e-4;
    double ridge = eta / (1.0 - eta);
    Eigen::VectorXd misfit = y - pred - ridge * smooth.weights();
    REQUIRE_THAT(misfit.lpNorm<Eigen::Infinity>(),
                 Catch::Matchers::WithinAbs(
                     0.0, 1e-8 * (1.0 + y.lpNorm<Eigen::Infinity>())));
}

TEST_CASE("smoothing weight must stay in the open unit interval", "[kernels]") {
    Eigen::MatrixXd X(3, 1);
    X << 0.0, 1.0, 2.0;
    Eigen::VectorXd y(3);
    y << 0.0, 1.0, 0.0;
    REQUIRE_THROWS_AS(surropt::fit_noninterpolating_rbf(X, y, 2.0, 0.0),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(surropt::fit_noninterpolating_rbf(X, y, 2.0, 1.0),
                      std::invalid_argument);
}

TEST_CASE("kernel fits tolerate repeated sites", "[kernels]") {
    Eigen::MatrixXd X(4, 1);
    X << 0.0, 1.0, 0.0, 2.0;
    Eigen::VectorXd y(4);
    y << 1.0, 5.0, 3.0, 4.0;
    RbfModel model = surropt::fit_rbf(X, y);
    Eigen::VectorXd at0(1);
    at0 << 0.0;
    // The duplicate site carries the average of its observations.
    REQUIRE_THAT(model.predict(at0), Catch::Matchers::WithinAbs(2.0, 1e-7));
}

TEST_CASE("noise-free posterior interpolates and pinches variance",
          "[kernels]") {
    RngStream rng(44);
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    smooth_instance(rng, 25, 2, X, y);
    GpHyperParams params{y.norm() / 3.0, 3.0, 0.0};
    GpModel gp = GpModel::fit(X, y, params);

    double tol = 1e-6 * (1.0 + y.lpNorm<Eigen::Infinity>());
    for (int i = 0; i < X.rows(); ++i) {
        GpModel::Prediction p = gp.predict(X.row(i).transpose());
        REQUIRE_THAT(p.mean, Catch::Matchers::WithinAbs(y[i], tol));
        REQUIRE(p.variance >= 0.0);
        REQUIRE(p.variance < 1e-6 * params.signal_std * params.signal_std);
    }

    // Far from every observation the prior takes over: mean 0, full
    // amplitude.
    Eigen::VectorXd far = Eigen::VectorXd::Constant(2, 1e3);
    GpModel::Prediction p = gp.predict(far);
    REQUIRE_THAT(p.mean, Catch::Matchers::WithinAbs(0.0, 1e-6));
    REQUIRE_THAT(p.variance,
                 Catch::Matchers::WithinRel(
                     params.signal_std * params.signal_std, 1e-9));
}

TEST_CASE("observation noise smooths the posterior mean", "[kernels]") {
    RngStream rng(45);
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    smooth_instance(rng, 25, 2, X, y);
    GpHyperParams noisy{y.norm() / 3.0, 3.0, 5.0};
    GpModel gp = GpModel::fit(X, y, noisy);
    double residual = 0.0;
    for (int i = 0; i < X.rows(); ++i) {
        GpModel::Prediction p = gp.predict(X.row(i).transpose());
        residual = std::max(residual, std::abs(p.mean - y[i]));
        REQUIRE(p.variance > 0.0);
    }
    REQUIRE(residual > 1e-3);  // no longer interpolating
}

TEST_CASE("invalid hyperparameters are rejected", "[kernels]") {
    Eigen::MatrixXd X(3, 1);
    X << 0.0, 1.0, 2.0;
    Eigen::VectorXd y(3);
    y << 1.0, 2.0, 3.0;
    REQUIRE_THROWS_AS(GpModel::fit(X, y, GpHyperParams{0.0, 1.0, 0.0}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(GpModel::fit(X, y, GpHyperParams{1.0, -2.0, 0.0}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(GpModel::fit(X, y, GpHyperParams{1.0, 1.0, -1.0}),
                      std::invalid_argument);
}

TEST_CASE("data-driven defaults fill unset fields only", "[kernels]") {
    Eigen::MatrixXd X(3, 1);
    X << 0.0, 1.0, 3.0;  // pairwise distances 1, 2, 3 -> median 2
    Eigen::VectorXd y(3);
    y << 1.0, 3.0, 5.0;  // sample standard deviation 2

    GpHyperParams p = surropt::default_gp_params(X, y);
    REQUIRE_THAT(p.signal_std, Catch::Matchers::WithinRel(2.0, 1e-12));
    REQUIRE_THAT(p.length_scale, Catch::Matchers::WithinRel(2.0, 1e-12));
    REQUIRE(p.noise_std == 0.0);

    GpHyperParams seeded = surropt::default_gp_params(
        X, y, GpHyperParams{7.0, 0.0, 0.5});
    REQUIRE(seeded.signal_std == 7.0);
    REQUIRE_THAT(seeded.length_scale, Catch::Matchers::WithinRel(2.0, 1e-12));
    REQUIRE(seeded.noise_std == 0.5);
}

TEST_CASE("cross-validated tuning is deterministic and sound", "[kernels]") {
    RngStream rng(46);
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    smooth_instance(rng, 40, 2, X, y);
    GpHyperParams a = surropt::tune_gp_cv(X, y);
    GpHyperParams b = surropt::tune_gp_cv(X, y);
    REQUIRE(a.signal_std == b.signal_std);
    REQUIRE(a.length_scale == b.length_scale);
    REQUIRE(a.noise_std == b.noise_std);
    REQUIRE(a.signal_std > 0.0);
    REQUIRE(a.length_scale > 0.0);
    REQUIRE(a.noise_std >= 0.0);
    // The tuned model must actually fit.
    GpModel gp = GpModel::fit(X, y, a);
    REQUIRE(std::isfinite(gp.predict(X.row(0).transpose()).mean));
}
