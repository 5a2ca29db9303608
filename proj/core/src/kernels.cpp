#include "surropt/kernels.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "surropt/errors.hpp"

namespace surropt {
namespace {

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& A,
                                  const Eigen::MatrixXd& B) {
    Eigen::VectorXd an = A.rowwise().squaredNorm();
    Eigen::VectorXd bn = B.rowwise().squaredNorm();
    Eigen::MatrixXd D = -2.0 * A * B.transpose();
    D.colwise() += an;
    D.rowwise() += bn.transpose();
    return D.cwiseMax(0.0);
}

}  // namespace

void collapse_duplicates(Eigen::MatrixXd& X, Eigen::VectorXd& y) {
    int n = static_cast<int>(X.rows());
    std::vector<int> group(n, -1);
    std::vector<int> reps;
    std::vector<double> sums;
    std::vector<int> counts;
    for (int i = 0; i < n; ++i) {
        if (group[i] >= 0) continue;
        int g = static_cast<int>(reps.size());
        reps.push_back(i);
        sums.push_back(y[i]);
        counts.push_back(1);
        group[i] = g;
        for (int j = i + 1; j < n; ++j) {
            if (group[j] < 0 && X.row(j) == X.row(i)) {
                group[j] = g;
                sums[g] += y[j];
                ++counts[g];
            }
        }
    }
    if (static_cast<int>(reps.size()) == n) return;
    Eigen::MatrixXd Xc(reps.size(), X.cols());
    Eigen::VectorXd yc(reps.size());
    for (std::size_t g = 0; g < reps.size(); ++g) {
        Xc.row(g) = X.row(reps[g]);
        yc[g] = sums[g] / counts[g];
    }
    X = std::move(Xc);
    y = std::move(yc);
}

RbfModel RbfModel::fit(const Eigen::MatrixXd& X_in, const Eigen::VectorXd& y_in,
                       const RbfOptions& options) {
    if (X_in.rows() != y_in.size() || X_in.rows() == 0) {
        throw std::invalid_argument("rbf training data is empty or mismatched");
    }
    if (options.ridge < 0.0) throw std::invalid_argument("ridge must be >= 0");
    Eigen::MatrixXd X = X_in;
    Eigen::VectorXd y = y_in;
    collapse_duplicates(X, y);

    int n = static_cast<int>(X.rows());
    int d = static_cast<int>(X.cols());
    int m = n + d + 1;

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    A.topLeftCorner(n, n) =
        (squared_distances(X, X).array() + options.shape * options.shape)
            .sqrt()
            .matrix();
    A.topLeftCorner(n, n).diagonal().array() += options.ridge;
    A.block(0, n, n, 1).setOnes();
    A.block(0, n + 1, n, d) = X;
    A.block(n, 0, 1, n).setOnes();
    A.block(n + 1, 0, d, n) = X.transpose();

    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    b.head(n) = y;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    Eigen::VectorXd z = lu.solve(b);
    // One step of iterative refinement, then verify the residual; a large
    // residual means the augmented system was effectively singular.
    Eigen::VectorXd resid = b - A * z;
    z += lu.solve(resid);
    resid = b - A * z;
    double scale = 1.0 + b.cwiseAbs().maxCoeff();
    if (!z.allFinite() || resid.cwiseAbs().maxCoeff() > 1e-6 * scale) {
        throw FitError("rbf system is singular or severely ill-conditioned");
    }

    RbfModel model;
    model.centers_ = std::move(X);
    model.lambda_ = z.head(n);
    model.tail0_ = z[n];
    model.tail_ = z.tail(d);
    model.shape_ = options.shape;
    return model;
}

double RbfModel::predict(const Eigen::VectorXd& x) const {
    if (x.size() != centers_.cols()) {
        throw std::invalid_argument("point dimension mismatch");
    }
    double s = tail0_ + tail_.dot(x);
    double w2 = shape_ * shape_;
    for (Eigen::Index k = 0; k < centers_.rows(); ++k) {
        double d2 = (centers_.row(k).transpose() - x).squaredNorm();
        s += lambda_[k] * std::sqrt(d2 + w2);
    }
    return s;
}

Eigen::VectorXd RbfModel::predict_batch(const Eigen::MatrixXd& points) const {
    if (points.cols() != centers_.cols()) {
        throw std::invalid_argument("point dimension mismatch");
    }
    Eigen::MatrixXd Phi =
        (squared_distances(points, centers_).array() + shape_ * shape_)
            .sqrt()
            .matrix();
    return Phi * lambda_ + (points * tail_).array().matrix() +
           Eigen::VectorXd::Constant(points.rows(), tail0_);
}

RbfModel fit_rbf(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                 double shape) {
    return RbfModel::fit(X, y, RbfOptions{shape, 0.0});
}

RbfModel fit_noninterpolating_rbf(const Eigen::MatrixXd& X,
                                  const Eigen::VectorXd& y, double shape,
                                  double eta) {
    if (eta <= 0.0 || eta >= 1.0) {
        throw std::invalid_argument("eta must lie in (0, 1)");
    }
    return RbfModel::fit(X, y, RbfOptions{shape, eta / (1.0 - eta)});
}

GpModel GpModel::fit(const Eigen::MatrixXd& X_in, const Eigen::VectorXd& y_in,
                     const GpHyperParams& params) {
    if (X_in.rows() != y_in.size() || X_in.rows() == 0) {
        throw std::invalid_argument("gp training data is empty or mismatched");
    }
    if (params.signal_std <= 0.0 || params.length_scale <= 0.0 ||
        params.noise_std < 0.0) {
        throw std::invalid_argument("gp hyperparameters out of range");
    }
    Eigen::MatrixXd X = X_in;
    Eigen::VectorXd y = y_in;
    collapse_duplicates(X, y);

    double s2 = params.signal_std * params.signal_std;
    double inv = 1.0 / (2.0 * params.length_scale * params.length_scale);
    Eigen::MatrixXd K = s2 * (-squared_distances(X, X).array() * inv).exp();
    Eigen::MatrixXd A = K;
    A.diagonal().array() += params.noise_std * params.noise_std;

    Eigen::LLT<Eigen::MatrixXd> llt(A);
    if (llt.info() != Eigen::Success) {
        A.diagonal().array() += 1e-10 * K.trace();
        llt.compute(A);
        if (llt.info() != Eigen::Success) {
            throw FitError("gp covariance is not positive definite");
        }
    }

    GpModel model;
    model.centers_ = std::move(X);
    model.alpha_ = llt.solve(y);
    model.chol_ = llt.matrixL();
    model.params_ = params;
    return model;
}

GpModel::Prediction GpModel::predict(const Eigen::VectorXd& x) const {
    if (x.size() != centers_.cols()) {
        throw std::invalid_argument("point dimension mismatch");
    }
    double s2 = params_.signal_std * params_.signal_std;
    double inv = 1.0 / (2.0 * params_.length_scale * params_.length_scale);
    Eigen::VectorXd k(centers_.rows());
    for (Eigen::Index i = 0; i < centers_.rows(); ++i) {
        k[i] = s2 * std::exp(-(centers_.row(i).transpose() - x).squaredNorm() *
                             inv);
    }
    Prediction p;
    p.mean = k.dot(alpha_);
    Eigen::VectorXd v =
        chol_.triangularView<Eigen::Lower>().solve(k);
    p.variance = std::max(0.0, s2 - v.squaredNorm());
    return p;
}

Eigen::VectorXd GpModel::predict_batch(const Eigen::MatrixXd& points) const {
    if (points.cols() != centers_.cols()) {
        throw std::invalid_argument("point dimension mismatch");
    }
    double s2 = params_.signal_std * params_.signal_std;
    double inv = 1.0 / (2.0 * params_.length_scale * params_.length_scale);
    Eigen::MatrixXd Ks =
        s2 * (-squared_distances(points, centers_).array() * inv).exp();
    return Ks * alpha_;
}

GpHyperParams default_gp_params(const Eigen::MatrixXd& X,
                                const Eigen::VectorXd& y,
                                const GpHyperParams& seed) {
    GpHyperParams p = seed;
    int n = static_cast<int>(X.rows());
    if (p.signal_std <= 0.0) {
        double mean = y.mean();
        double var = n > 1 ? (y.array() - mean).square().sum() / (n - 1) : 0.0;
        p.signal_std = var > 0.0 ? std::sqrt(var) : 1.0;
    }
    if (p.length_scale <= 0.0) {
        int limit = std::min(n, 300);
        std::vector<double> dists;
        dists.reserve(static_cast<std::size_t>(limit) * (limit - 1) / 2);
        for (int i = 0; i < limit; ++i) {
            for (int j = i + 1; j < limit; ++j) {
                dists.push_back((X.row(i) - X.row(j)).norm());
            }
        }
        if (dists.empty()) {
            p.length_scale = 1.0;
        } else {
            std::nth_element(dists.begin(), dists.begin() + dists.size() / 2,
                             dists.end());
            double med = dists[dists.size() / 2];
            p.length_scale = med > 0.0 ? med : 1.0;
        }
    }
    if (p.noise_std < 0.0) p.noise_std = 0.0;
    return p;
}

GpHyperParams tune_gp_cv(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         int folds) {
    int n = static_cast<int>(X.rows());
    GpHyperParams base = default_gp_params(X, y);
    if (n < 4) return base;
    folds = std::clamp(folds, 2, n / 2);

    const double length_grid[] = {0.25, 0.5, 1.0, 2.0, 4.0};
    const double signal_grid[] = {0.5, 1.0, 2.0};
    const double noise_grid[] = {0.0, 1e-3, 1e-2, 1e-1};

    GpHyperParams best = base;
    double best_score = std::numeric_limits<double>::infinity();
    for (double lf : length_grid) {
        for (double sf : signal_grid) {
            for (double nf : noise_grid) {
                GpHyperParams cand{base.signal_std * sf,
                                   base.length_scale * lf,
                                   base.signal_std * nf};
                double score = 0.0;
                bool valid = true;
                for (int f = 0; f < folds && valid; ++f) {
                    std::vector<int> train, test;
                    for (int i = 0; i < n; ++i) {
                        (i % folds == f ? test : train).push_back(i);
                    }
                    if (train.size() < 2) {
                        valid = false;
                        break;
                    }
                    Eigen::MatrixXd Xt = X(train, Eigen::all);
                    Eigen::VectorXd yt = y(train);
                    try {
                        GpModel m = GpModel::fit(Xt, yt, cand);
                        for (int i : test) {
                            double e =
                                m.predict(X.row(i).transpose()).mean - y[i];
                            score += e * e;
                        }
                    } catch (const FitError&) {
                        valid = false;
                    }
                }
                if (valid && score < best_score) {
                    best_score = score;
                    best = cand;
                }
            }
        }
    }
    return best;
}

}  // namespace surropt
