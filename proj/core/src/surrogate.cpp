#include "surropt/surrogate.hpp"

#include <algorithm>
#include <stdexcept>

namespace surropt {
namespace {

class MarsSurrogate : public Surrogate {
public:
    MarsSurrogate(MarsModel model, std::vector<Eigen::VectorXd> centroids)
        : model_(std::move(model)), centroids_(std::move(centroids)) {}

    double predict(const Eigen::VectorXd& x) const override {
        return model_.predict(x);
    }
    Eigen::VectorXd predict_batch(const Eigen::MatrixXd& pts) const override {
        return model_.predict_batch(pts);
    }
    std::vector<Eigen::VectorXd> extra_candidates() const override {
        return centroids_;
    }
    std::vector<int> active_variables() const override {
        return model_.selected_variables();
    }

private:
    MarsModel model_;
    std::vector<Eigen::VectorXd> centroids_;
};

class RbfSurrogate : public Surrogate {
public:
    explicit RbfSurrogate(RbfModel model) : model_(std::move(model)) {}

    double predict(const Eigen::VectorXd& x) const override {
        return model_.predict(x);
    }
    Eigen::VectorXd predict_batch(const Eigen::MatrixXd& pts) const override {
        return model_.predict_batch(pts);
    }

private:
    RbfModel model_;
};

class GpSurrogate : public Surrogate {
public:
    explicit GpSurrogate(GpModel model) : model_(std::move(model)) {}

    double predict(const Eigen::VectorXd& x) const override {
        return model_.predict(x).mean;
    }
    Eigen::VectorXd predict_batch(const Eigen::MatrixXd& pts) const override {
        return model_.predict_batch(pts);
    }

private:
    GpModel model_;
};

}  // namespace

SurrogateKind surrogate_from_name(const std::string& name) {
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (n == "mars") return SurrogateKind::Mars;
    if (n == "tkmars" || n == "tk-mars") return SurrogateKind::TkMars;
    if (n == "rbf") return SurrogateKind::Rbf;
    if (n == "nonrbf" || n == "non-rbf") return SurrogateKind::NonInterpolatingRbf;
    if (n == "gp") return SurrogateKind::Gp;
    throw std::invalid_argument("unknown surrogate: " + name);
}

std::string surrogate_name(SurrogateKind kind) {
    switch (kind) {
        case SurrogateKind::Mars: return "mars";
        case SurrogateKind::TkMars: return "tkmars";
        case SurrogateKind::Rbf: return "rbf";
        case SurrogateKind::NonInterpolatingRbf: return "nonrbf";
        case SurrogateKind::Gp: return "gp";
    }
    throw std::invalid_argument("unknown surrogate kind");
}

std::vector<std::string> surrogate_names() {
    return {"mars", "tkmars", "rbf", "nonrbf", "gp"};
}

std::unique_ptr<Surrogate> fit_surrogate(SurrogateKind kind,
                                         const Eigen::MatrixXd& X,
                                         const Eigen::VectorXd& y,
                                         const SurrogateSettings& settings) {
    switch (kind) {
        case SurrogateKind::Mars: {
            int count = settings.mars_knot_count;
            if (count <= 0) {
                RegressionTree tree = RegressionTree::fit(X, y, settings.tree);
                count = tree.leaf_count();
            }
            KnotSet knots = evenly_spaced_knots(X, count);
            MarsOptions opt;
            opt.max_basis = settings.mars_max_basis;
            opt.max_interaction = settings.mars_max_interaction;
            return std::make_unique<MarsSurrogate>(
                MarsModel::fit(X, y, knots, opt), std::vector<Eigen::VectorXd>{});
        }
        case SurrogateKind::TkMars: {
            RegressionTree tree = RegressionTree::fit(X, y, settings.tree);
            KnotSet knots = tree_knots(tree, X);
            MarsOptions opt;
            opt.max_basis = settings.mars_max_basis;
            opt.max_interaction = settings.mars_max_interaction;
            return std::make_unique<MarsSurrogate>(
                MarsModel::fit(X, y, knots, opt), tree.leaf_centroids(X));
        }
        case SurrogateKind::Rbf:
            return std::make_unique<RbfSurrogate>(
                fit_rbf(X, y, settings.rbf_shape));
        case SurrogateKind::NonInterpolatingRbf:
            return std::make_unique<RbfSurrogate>(fit_noninterpolating_rbf(
                X, y, settings.rbf_shape, settings.rbf_eta));
        case SurrogateKind::Gp: {
            GpHyperParams params =
                settings.gp_cv ? tune_gp_cv(X, y)
                               : default_gp_params(X, y, settings.gp);
            return std::make_unique<GpSurrogate>(GpModel::fit(X, y, params));
        }
    }
    throw std::invalid_argument("unknown surrogate kind");
}

Eigen::VectorXd Surrogate::predict_batch(const Eigen::MatrixXd& points) const {
    Eigen::VectorXd out(points.rows());
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
        out[i] = predict(points.row(i).transpose());
    }
    return out;
}

}  // namespace surropt
