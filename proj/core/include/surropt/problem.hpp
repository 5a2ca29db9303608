#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "surropt/errors.hpp"
#include "surropt/rng.hpp"

namespace surropt {

enum class FunctionId { Rosenbrock, Rastrigin, Levy, Ackley, Zakharov };

FunctionId function_from_name(const std::string& name);
std::string function_name(FunctionId id);
std::vector<std::string> function_names();

// Hypercube domain [lower, upper]^d with a shared scalar bound per side.
struct Bounds {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
};

// Deterministic test problem. A fraction fiv of the coordinates is
// "important": with m = ceil(fiv * d), the function formula is applied in
// dimension m to the first m coordinates, so the remaining d - m coordinates
// never influence the output. Points outside the box are rejected.
class TestFunction {
public:
    TestFunction(FunctionId id, int dim, double fraction_important);

    double operator()(const Eigen::VectorXd& x) const;

    FunctionId id() const { return id_; }
    int dimension() const { return dim_; }
    double fraction_important() const { return fiv_; }
    int num_important() const { return important_; }
    const Bounds& bounds() const { return bounds_; }

private:
    FunctionId id_;
    int dim_;
    double fiv_;
    int important_;
    Bounds bounds_;
};

// Spread of the initial design outputs; the base unit for the noise level.
double initial_output_range(std::span<const double> outputs);

// Evaluation budget shared by every sampling decision in a run.
class Budget {
public:
    explicit Budget(int limit);

    void consume();
    bool exhausted() const { return used_ >= limit_; }
    int used() const { return used_; }
    int limit() const { return limit_; }
    int remaining() const { return limit_ - used_; }

private:
    int limit_;
    int used_ = 0;
};

// Stochastic wrapper around a TestFunction. Observations carry additive
// Gaussian noise with standard deviation np * sigma0, where sigma0 is the
// output range of the initial design. Until sigma0 is frozen (and always
// when np = 0) observations equal the true values, so the initial design
// itself is evaluated noise free.
class NoisyObjective {
public:
    NoisyObjective(TestFunction base, double noise_level);

    // One observation; consumes one unit of budget.
    double sample(const Eigen::VectorXd& x, Budget& budget, RngStream& rng);

    void freeze_sigma0(double sigma0);
    bool sigma0_frozen() const { return frozen_; }
    double sigma0() const { return sigma0_; }
    double noise_level() const { return np_; }
    const TestFunction& base() const { return base_; }

private:
    TestFunction base_;
    double np_;
    double sigma0_ = 0.0;
    bool frozen_ = false;
};

}  // namespace surropt
