#pragma once

#include <Eigen/Core>
#include <memory>
#include <string>
#include <vector>

#include "surropt/cart.hpp"
#include "surropt/kernels.hpp"
#include "surropt/mars.hpp"

namespace surropt {

enum class SurrogateKind { Mars, TkMars, Rbf, NonInterpolatingRbf, Gp };

SurrogateKind surrogate_from_name(const std::string& name);
std::string surrogate_name(SurrogateKind kind);
std::vector<std::string> surrogate_names();

// Uniform fit/predict contract shared by every surrogate family.
class Surrogate {
public:
    virtual ~Surrogate() = default;

    virtual double predict(const Eigen::VectorXd& x) const = 0;
    virtual Eigen::VectorXd predict_batch(const Eigen::MatrixXd& points) const;

    // Additional candidate points worth sampling near; tree-guided models
    // return their terminal-node centroids, everything else nothing.
    virtual std::vector<Eigen::VectorXd> extra_candidates() const { return {}; }

    // 1-based input dimensions the model actually uses; empty when the
    // notion does not apply to the family.
    virtual std::vector<int> active_variables() const { return {}; }
};

struct SurrogateSettings {
    // Original-MARS knot plan: an evenly spaced count, or 0 to size the
    // count by the number of terminal nodes of a regression tree fitted to
    // the same data.
    int mars_knot_count = 20;
    int mars_max_basis = 0;  // 0: auto
    int mars_max_interaction = 1;
    double rbf_shape = 2.0;
    double rbf_eta = 1e-4;
    TreeOptions tree;
    GpHyperParams gp{0.0, 0.0, -1.0};  // non-positive fields resolve to auto
    bool gp_cv = false;
};

std::unique_ptr<Surrogate> fit_surrogate(SurrogateKind kind,
                                         const Eigen::MatrixXd& X,
                                         const Eigen::VectorXd& y,
                                         const SurrogateSettings& settings);

}  // namespace surropt
