#pragma once

#include <Eigen/Core>
#include <vector>

#include "surropt/problem.hpp"
#include "surropt/rng.hpp"

namespace surropt {

enum class DesignKind { LatinHypercube, UniformRandom };

struct Design {
    DesignKind kind;
    std::vector<Eigen::VectorXd> points;
};

// Latin hypercube with random pairing: every dimension is cut into n equal
// strata, each stratum holds exactly one point, and strata are matched
// across dimensions by independent random permutations.
Design latin_hypercube(int n, const Bounds& bounds, RngStream& rng);

// Plain i.i.d. uniform sample over the box; used for the candidate pool.
Design uniform_pool(int n, const Bounds& bounds, RngStream& rng);

}  // namespace surropt
