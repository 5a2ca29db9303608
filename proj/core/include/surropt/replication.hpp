#pragma once

#include <Eigen/Core>
#include <functional>
#include <span>
#include <vector>

#include "surropt/problem.hpp"

namespace surropt {

// Two-sided Student-t critical value: the p-quantile with df degrees of
// freedom.
double t_quantile(double p, int df);

// All observations collected at one location, with the running mean and a
// symmetric confidence interval. Below two samples the interval is the
// whole real line.
struct PointRecord {
    Eigen::VectorXd x;
    std::vector<double> samples;
    double mean = 0.0;
    double stddev = 0.0;
    double ci_low = 0.0;
    double ci_up = 0.0;

    int count() const { return static_cast<int>(samples.size()); }
};

// Evaluated points of one run, keyed by exact coordinates. Tracks the best
// sample-mean solution (BSMS): the record with the smallest mean, ties
// toward the earliest record.
class Dataset {
public:
    explicit Dataset(double alpha = 0.05);

    int append(const Eigen::VectorXd& x, double first_sample);
    void add_sample(int index, double value);
    int find(const Eigen::VectorXd& x) const;  // -1 when absent

    int size() const { return static_cast<int>(records_.size()); }
    const PointRecord& record(int index) const { return records_.at(index); }
    int bsms_index() const { return bsms_; }
    const PointRecord& bsms() const { return records_.at(bsms_); }
    double alpha() const { return alpha_; }

    // Design matrix and response for surrogate fitting, one row per record
    // carrying the sample mean.
    void mean_matrix(Eigen::MatrixXd& X, Eigen::VectorXd& y) const;
    // One row per individual sample instead.
    void sample_matrix(Eigen::MatrixXd& X, Eigen::VectorXd& y) const;

private:
    void refresh(int index);

    std::vector<PointRecord> records_;
    double alpha_;
    int bsms_ = -1;
};

// Called after every recorded sample; the optimizer uses it to extend the
// convergence trace.
using SampleHook = std::function<void()>;

// Samples each candidate once.
void evaluate_no_replication(Dataset& data,
                             std::span<const Eigen::VectorXd> candidates,
                             NoisyObjective& objective, Budget& budget,
                             RngStream& rng, const SampleHook& hook = {});

// Samples each candidate exactly r times, budget permitting.
void evaluate_fixed_replication(Dataset& data,
                                std::span<const Eigen::VectorXd> candidates,
                                int r, NoisyObjective& objective, Budget& budget,
                                RngStream& rng, const SampleHook& hook = {});

// Samples each candidate once, then keeps replicating a candidate while its
// confidence lower bound stays below the BSMS confidence upper bound, up to
// r_max extra rounds (at most r_max + 1 samples per candidate). The BSMS
// bound is refreshed after each candidate; with a single BSMS sample the
// bound is that sample itself.
void evaluate_smart_replication(Dataset& data,
                                std::span<const Eigen::VectorXd> candidates,
                                int r_max, NoisyObjective& objective,
                                Budget& budget, RngStream& rng,
                                const SampleHook& hook = {});

}  // namespace surropt
