#pragma once

#include <Eigen/Core>
#include <vector>

namespace surropt {

// Collapses rows with exactly equal coordinates, averaging their outputs.
// Kernel systems need distinct centers to stay solvable.
void collapse_duplicates(Eigen::MatrixXd& X, Eigen::VectorXd& y);

struct RbfOptions {
    double shape = 2.0;  // multiquadric offset omega
    double ridge = 0.0;  // diagonal added to the kernel block
};

// Multiquadric radial basis surrogate with a linear polynomial tail:
//   s(x) = sum_k lambda_k sqrt(|x - x_k|^2 + shape^2) + c0 + c' x
// solved from the augmented symmetric system with orthogonality constraints
// P' lambda = 0. With ridge = 0 the surface interpolates the training data;
// a positive ridge relaxes interpolation and smooths the surface.
class RbfModel {
public:
    static RbfModel fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                        const RbfOptions& options = {});

    double predict(const Eigen::VectorXd& x) const;
    Eigen::VectorXd predict_batch(const Eigen::MatrixXd& points) const;

    const Eigen::MatrixXd& centers() const { return centers_; }
    const Eigen::VectorXd& weights() const { return lambda_; }

private:
    Eigen::MatrixXd centers_;
    Eigen::VectorXd lambda_;
    double tail0_ = 0.0;
    Eigen::VectorXd tail_;
    double shape_ = 2.0;
};

RbfModel fit_rbf(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                 double shape = 2.0);

// Ridge mu = eta / (1 - eta) trades interpolation error against weight
// size, minimizing eta |lambda|^2 + (1 - eta) |residual|^2.
RbfModel fit_noninterpolating_rbf(const Eigen::MatrixXd& X,
                                  const Eigen::VectorXd& y, double shape = 2.0,
                                  double eta = 1e-4);

struct GpHyperParams {
    double signal_std = 1.0;   // kernel amplitude
    double length_scale = 1.0;
    double noise_std = 0.0;    // observation noise added to the diagonal
};

// Gaussian process with a squared-exponential kernel and zero prior mean.
// With noise_std -> 0 the posterior mean interpolates the training data and
// the variance vanishes there; far from data the variance approaches the
// prior amplitude.
class GpModel {
public:
    struct Prediction {
        double mean = 0.0;
        double variance = 0.0;
    };

    static GpModel fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const GpHyperParams& params);

    Prediction predict(const Eigen::VectorXd& x) const;
    Eigen::VectorXd predict_batch(const Eigen::MatrixXd& points) const;

    const GpHyperParams& params() const { return params_; }

private:
    Eigen::MatrixXd centers_;
    Eigen::VectorXd alpha_;
    Eigen::MatrixXd chol_;  // lower factor of K + noise^2 I (+ jitter)
    GpHyperParams params_;
};

// Data-driven defaults: length scale from the median pairwise distance,
// amplitude from the output spread. Zero-valued fields in the seed are
// replaced; explicitly set fields are kept.
GpHyperParams default_gp_params(const Eigen::MatrixXd& X,
                                const Eigen::VectorXd& y,
                                const GpHyperParams& seed = {0.0, 0.0, -1.0});

// k-fold cross-validated grid search around the data-driven defaults.
// Folds are assigned round-robin by row index, so the search is
// deterministic for a fixed dataset.
GpHyperParams tune_gp_cv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         int folds = 5);

}  // namespace surropt
