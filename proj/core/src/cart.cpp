#include "surropt/cart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace surropt {
namespace {

struct Split {
    int dim = -1;
    double cut = 0.0;
    double children_sse = std::numeric_limits<double>::infinity();
};

double subset_sse(const Eigen::VectorXd& y, const std::vector<int>& rows) {
    double sum = 0.0, sumsq = 0.0;
    for (int r : rows) {
        sum += y[r];
        sumsq += y[r] * y[r];
    }
    double n = static_cast<double>(rows.size());
    return std::max(0.0, sumsq - sum * sum / n);
}

// Scans all midpoint cuts of one node. Prefix sums over the sorted order
// give each candidate's child SSEs in one pass per dimension.
Split best_split(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                 const std::vector<int>& rows) {
    Split best;
    int n = static_cast<int>(rows.size());
    std::vector<int> order(rows);
    for (int dim = 0; dim < X.cols(); ++dim) {
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return X(a, dim) < X(b, dim);
        });
        double total_sum = 0.0, total_sq = 0.0;
        for (int r : order) {
            total_sum += y[r];
            total_sq += y[r] * y[r];
        }
        double left_sum = 0.0, left_sq = 0.0;
        for (int k = 0; k + 1 < n; ++k) {
            int r = order[k];
            left_sum += y[r];
            left_sq += y[r] * y[r];
            double lo = X(r, dim);
            double hi = X(order[k + 1], dim);
            if (!(lo < hi)) continue;
            double cut = 0.5 * (lo + hi);
            // Degenerate midpoints (adjacent representable values) cannot
            // separate the children.
            if (!(lo < cut) || !(cut < hi)) continue;
            double nl = k + 1.0;
            double nr = n - nl;
            double sse_l = left_sq - left_sum * left_sum / nl;
            double right_sum = total_sum - left_sum;
            double sse_r = (total_sq - left_sq) - right_sum * right_sum / nr;
            double sse = std::max(0.0, sse_l) + std::max(0.0, sse_r);
            bool better = sse < best.children_sse;
            bool tie = sse == best.children_sse &&
                       (dim < best.dim || (dim == best.dim && cut < best.cut));
            if (better || tie) {
                best.dim = dim;
                best.cut = cut;
                best.children_sse = sse;
            }
        }
    }
    return best;
}

}  // namespace

RegressionTree RegressionTree::fit(const Eigen::MatrixXd& X,
                                   const Eigen::VectorXd& y,
                                   const TreeOptions& options) {
    if (X.rows() != y.size() || X.rows() == 0) {
        throw std::invalid_argument("tree training data is empty or mismatched");
    }
    if (options.minsplit < 2) {
        throw std::invalid_argument("minsplit must be at least 2");
    }
    RegressionTree tree;
    tree.dim_ = static_cast<int>(X.cols());

    std::vector<int> all(X.rows());
    std::iota(all.begin(), all.end(), 0);
    tree.nodes_.push_back(TreeNode{0, -1, 0.0, -1, -1, y.mean(), std::move(all)});

    // Grow depth-first; children are created in left-right order.
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        TreeNode& node = tree.nodes_[id];
        int n = static_cast<int>(node.members.size());
        if (n < options.minsplit || node.depth >= options.maxdepth) continue;

        double node_sse = subset_sse(y, node.members);
        Split split = best_split(X, y, node.members);
        if (split.dim < 0) continue;
        if (node_sse - split.children_sse <= options.tolerance) continue;

        std::vector<int> left_rows, right_rows;
        for (int r : node.members) {
            (X(r, split.dim) <= split.cut ? left_rows : right_rows).push_back(r);
        }

        double left_mean = 0.0, right_mean = 0.0;
        for (int r : left_rows) left_mean += y[r];
        for (int r : right_rows) right_mean += y[r];
        left_mean /= static_cast<double>(left_rows.size());
        right_mean /= static_cast<double>(right_rows.size());

        int left_id = static_cast<int>(tree.nodes_.size());
        int right_id = left_id + 1;
        int depth = node.depth + 1;
        node.split_dim = split.dim;
        node.split_value = split.cut;
        node.left = left_id;
        node.right = right_id;
        node.members.clear();
        node.members.shrink_to_fit();

        tree.nodes_.push_back(
            TreeNode{depth, -1, 0.0, -1, -1, left_mean, std::move(left_rows)});
        tree.nodes_.push_back(
            TreeNode{depth, -1, 0.0, -1, -1, right_mean, std::move(right_rows)});
        stack.push_back(right_id);
        stack.push_back(left_id);
    }
    return tree;
}

double RegressionTree::predict(const Eigen::VectorXd& x) const {
    if (x.size() != dim_) throw std::invalid_argument("point dimension mismatch");
    int id = 0;
    while (!nodes_[id].is_leaf()) {
        const TreeNode& node = nodes_[id];
        id = x[node.split_dim] <= node.split_value ? node.left : node.right;
    }
    return nodes_[id].mean;
}

std::vector<int> RegressionTree::leaf_ids() const {
    std::vector<int> ids;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
        if (nodes_[i].is_leaf()) ids.push_back(i);
    }
    return ids;
}

int RegressionTree::leaf_count() const {
    return static_cast<int>(leaf_ids().size());
}

std::vector<std::vector<int>> RegressionTree::leaf_members() const {
    std::vector<std::vector<int>> members;
    for (int id : leaf_ids()) members.push_back(nodes_[id].members);
    return members;
}

std::vector<Eigen::VectorXd> RegressionTree::leaf_centroids(
    const Eigen::MatrixXd& X) const {
    std::vector<Eigen::VectorXd> centroids;
    for (int id : leaf_ids()) {
        const std::vector<int>& rows = nodes_[id].members;
        Eigen::VectorXd c = Eigen::VectorXd::Zero(X.cols());
        for (int r : rows) c += X.row(r).transpose();
        centroids.push_back(c / static_cast<double>(rows.size()));
    }
    return centroids;
}

}  // namespace surropt
