#pragma once

#include <Eigen/Core>
#include <vector>

namespace surropt {

struct TreeOptions {
    int minsplit = 20;       // members required before a split is attempted
    int maxdepth = 30;       // root has depth 0
    double tolerance = 1e-12;  // required SSE improvement for a split
};

struct TreeNode {
    int depth = 0;
    int split_dim = -1;  // -1 marks a terminal node
    double split_value = 0.0;
    int left = -1;
    int right = -1;
    double mean = 0.0;
    std::vector<int> members;  // training row indices, kept on leaves only

    bool is_leaf() const { return split_dim < 0; }
};

// Binary regression tree grown by exhaustive SSE minimization. Split points
// are midpoints between consecutive distinct coordinate values; ties in SSE
// are broken toward the lowest dimension, then the smallest cut point.
class RegressionTree {
public:
    static RegressionTree fit(const Eigen::MatrixXd& X,
                              const Eigen::VectorXd& y,
                              const TreeOptions& options = {});

    double predict(const Eigen::VectorXd& x) const;

    const std::vector<TreeNode>& nodes() const { return nodes_; }
    std::vector<int> leaf_ids() const;
    int leaf_count() const;

    // Member row indices per terminal node; together they partition the
    // training set.
    std::vector<std::vector<int>> leaf_members() const;

    // Coordinate means of each terminal node's members.
    std::vector<Eigen::VectorXd> leaf_centroids(const Eigen::MatrixXd& X) const;

private:
    std::vector<TreeNode> nodes_;
    int dim_ = 0;
};

}  // namespace surropt
