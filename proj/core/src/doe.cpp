#include "surropt/doe.hpp"

#include <numeric>
#include <stdexcept>

namespace surropt {
namespace {

void check_args(int n, const Bounds& bounds) {
    if (n < 1) throw std::invalid_argument("design size must be positive");
    if (bounds.lower.size() != bounds.upper.size() || bounds.lower.size() == 0) {
        throw std::invalid_argument("malformed bounds");
    }
    for (int j = 0; j < bounds.lower.size(); ++j) {
        if (!(bounds.lower[j] < bounds.upper[j])) {
            throw std::invalid_argument("bounds must satisfy lower < upper");
        }
    }
}

// Fisher-Yates driven by the shared stream.
std::vector<int> permutation(int n, RngStream& rng) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(i + 1));
        std::swap(p[i], p[j]);
    }
    return p;
}

}  // namespace

Design latin_hypercube(int n, const Bounds& bounds, RngStream& rng) {
    check_args(n, bounds);
    int d = static_cast<int>(bounds.lower.size());
    Design design{DesignKind::LatinHypercube, {}};
    design.points.assign(n, Eigen::VectorXd(d));
    for (int j = 0; j < d; ++j) {
        std::vector<int> strata = permutation(n, rng);
        double width = (bounds.upper[j] - bounds.lower[j]) / n;
        for (int i = 0; i < n; ++i) {
            double u = rng.uniform();
            design.points[i][j] = bounds.lower[j] + width * (strata[i] + u);
        }
    }
    return design;
}

Design uniform_pool(int n, const Bounds& bounds, RngStream& rng) {
    check_args(n, bounds);
    int d = static_cast<int>(bounds.lower.size());
    Design design{DesignKind::UniformRandom, {}};
    design.points.assign(n, Eigen::VectorXd(d));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
            design.points[i][j] = rng.uniform(bounds.lower[j], bounds.upper[j]);
        }
    }
    return design;
}

}  // namespace surropt
