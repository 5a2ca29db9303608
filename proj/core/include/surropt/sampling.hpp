#pragma once

#include <Eigen/Core>
#include <vector>

namespace surropt {

// Pool of unsampled candidates scored for the exploration/exploitation
// trade-off: predicted objective (minimize) against distance to the closest
// already-evaluated point (maximize).
struct ScoredPool {
    std::vector<Eigen::VectorXd> points;
    Eigen::VectorXd predicted;
    Eigen::VectorXd min_dist;
};

// Indices (ascending) of candidates not dominated in (predicted, min_dist).
// A candidate dominates another when its prediction is no worse and its
// distance no smaller, the two not being tied on both; exact ties on both
// scores survive together.
std::vector<int> pareto_front(const Eigen::VectorXd& predicted,
                              const Eigen::VectorXd& min_dist);

// Picks up to k_prime points from the front: first the best predicted value
// (ties toward the lowest index), then repeatedly the front member farthest
// from every evaluated and already-picked point. Candidates that coincide
// with an evaluated point (min_dist = 0) are never picked. Returns pool
// indices in pick order.
std::vector<int> eepa_select(const ScoredPool& pool, int k_prime);

// Pool extension with exact-coordinate deduplication: candidates already in
// the pool (or repeated among themselves) are dropped.
std::vector<Eigen::VectorXd> augment_pool(
    std::vector<Eigen::VectorXd> pool,
    const std::vector<Eigen::VectorXd>& extras);

}  // namespace surropt
