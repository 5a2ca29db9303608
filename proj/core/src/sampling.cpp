#include "surropt/sampling.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace surropt {

std::vector<int> pareto_front(const Eigen::VectorXd& predicted,
                              const Eigen::VectorXd& min_dist) {
    int n = static_cast<int>(predicted.size());
    if (min_dist.size() != n) {
        throw std::invalid_argument("score vectors differ in length");
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (predicted[a] != predicted[b]) return predicted[a] < predicted[b];
        return min_dist[a] > min_dist[b];
    });

    // Sweep in order of ascending prediction. Within a tie group only the
    // members matching the group's best distance can survive; a group
    // survives only if it strictly beats every cheaper group's distance.
    std::vector<int> front;
    double best_dist = -std::numeric_limits<double>::infinity();
    int i = 0;
    while (i < n) {
        int j = i;
        while (j < n && predicted[order[j]] == predicted[order[i]]) ++j;
        double group_best = min_dist[order[i]];  // sorted descending in group
        if (group_best > best_dist) {
            for (int k = i; k < j && min_dist[order[k]] == group_best; ++k) {
                front.push_back(order[k]);
            }
            best_dist = group_best;
        }
        i = j;
    }
    std::sort(front.begin(), front.end());
    return front;
}

std::vector<int> eepa_select(const ScoredPool& pool, int k_prime) {
    if (k_prime < 1) throw std::invalid_argument("k_prime must be positive");
    int n = static_cast<int>(pool.points.size());
    if (pool.predicted.size() != n || pool.min_dist.size() != n) {
        throw std::invalid_argument("scored pool is inconsistent");
    }

    // Candidates at distance zero duplicate an evaluated point; filtering
    // them here guarantees the picks are always new locations.
    std::vector<int> eligible;
    eligible.reserve(n);
    for (int i = 0; i < n; ++i) {
        if (pool.min_dist[i] > 0.0) eligible.push_back(i);
    }
    if (eligible.empty()) return {};

    Eigen::VectorXd pred(eligible.size()), dist(eligible.size());
    for (std::size_t k = 0; k < eligible.size(); ++k) {
        pred[k] = pool.predicted[eligible[k]];
        dist[k] = pool.min_dist[eligible[k]];
    }
    std::vector<int> front_local = pareto_front(pred, dist);

    // Remaining front members carry their distance to the union of the
    // evaluated set and the picks made so far.
    struct Member {
        int index;
        double dist;
    };
    std::vector<Member> front;
    front.reserve(front_local.size());
    for (int k : front_local) {
        front.push_back(Member{eligible[k], pool.min_dist[eligible[k]]});
    }

    std::vector<int> picks;
    int first = -1;
    double best_pred = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < front.size(); ++k) {
        double p = pool.predicted[front[k].index];
        if (p < best_pred) {
            best_pred = p;
            first = static_cast<int>(k);
        }
    }
    picks.push_back(front[first].index);
    front.erase(front.begin() + first);

    while (static_cast<int>(picks.size()) < k_prime && !front.empty()) {
        const Eigen::VectorXd& last = pool.points[picks.back()];
        int best = -1;
        double best_dist = -1.0;
        for (std::size_t k = 0; k < front.size(); ++k) {
            double d = (pool.points[front[k].index] - last).norm();
            front[k].dist = std::min(front[k].dist, d);
            if (front[k].dist > best_dist) {
                best_dist = front[k].dist;
                best = static_cast<int>(k);
            }
        }
        picks.push_back(front[best].index);
        front.erase(front.begin() + best);
    }
    return picks;
}

std::vector<Eigen::VectorXd> augment_pool(
    std::vector<Eigen::VectorXd> pool,
    const std::vector<Eigen::VectorXd>& extras) {
    for (const Eigen::VectorXd& c : extras) {
        bool present = false;
        for (const Eigen::VectorXd& p : pool) {
            if (p.size() == c.size() && p == c) {
                present = true;
                break;
            }
        }
        if (!present) pool.push_back(c);
    }
    return pool;
}

}  // namespace surropt
