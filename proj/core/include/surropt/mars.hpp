#pragma once

#include <Eigen/Core>
#include <vector>

#include "surropt/cart.hpp"
#include "surropt/problem.hpp"

namespace surropt {

// One hinge factor max(0, sign * (x[dim] - knot)), sign in {+1, -1}.
struct HingeTerm {
    int dim = 0;
    double knot = 0.0;
    int sign = +1;
};

// Product of hinge factors. Additive models keep exactly one factor.
struct BasisFunction {
    std::vector<HingeTerm> terms;
};

double eval_basis(const BasisFunction& basis, const Eigen::VectorXd& x);
bool same_basis(const BasisFunction& a, const BasisFunction& b);

// Candidate knot locations, one sorted deduplicated list per dimension.
struct KnotSet {
    std::vector<std::vector<double>> per_dim;
};

// count equally spaced values spanning the observed data range per
// dimension; endpoints included. A constant column yields a single knot.
KnotSet evenly_spaced_knots(const Eigen::MatrixXd& X, int count);
KnotSet evenly_spaced_knots(const Bounds& bounds, int count);

// Knot per terminal node and dimension: the member coordinate closest to
// the node centroid, ties toward the smallest member row index.
KnotSet tree_knots(const RegressionTree& tree, const Eigen::MatrixXd& X);

struct MarsOptions {
    int max_basis = 0;        // 0: auto_max_basis(rows, dim)
    int max_interaction = 1;  // factors allowed per basis function
    double gcv_penalty = 3.0;
    double max_condition = 1e10;  // normal-equation condition guard
};

// Cap on the number of non-intercept basis functions. Grows with the number
// of training rows and saturates at a dimension-dependent ceiling so that
// fits stay tractable while models can touch every influential variable.
int auto_max_basis(int rows, int dim);

// Adaptive regression spline model: intercept plus hinge products chosen
// greedily by SSE (forward) and pruned by generalized cross-validation
// (backward). Knots are restricted to the supplied KnotSet.
class MarsModel {
public:
    static MarsModel fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const KnotSet& knots, const MarsOptions& options = {});

    double predict(const Eigen::VectorXd& x) const;
    Eigen::VectorXd predict_batch(const Eigen::MatrixXd& points) const;

    const std::vector<BasisFunction>& basis() const { return basis_; }
    // coefficients()[0] is the intercept; entry m+1 belongs to basis()[m].
    const Eigen::VectorXd& coefficients() const { return coef_; }

    // 1-based indices of the input dimensions used by surviving bases.
    std::vector<int> selected_variables() const;

    double sse() const { return sse_; }
    double gcv() const { return gcv_; }

private:
    int dim_ = 0;
    std::vector<BasisFunction> basis_;
    Eigen::VectorXd coef_;
    double sse_ = 0.0;
    double gcv_ = 0.0;
};

}  // namespace surropt
