#include "surropt/replication.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace surropt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Confidence upper bound used as the replication stopping reference. With a
// single sample the interval degenerates to the observation itself.
double bsms_upper(const PointRecord& rec) {
    return rec.count() >= 2 ? rec.ci_up : rec.mean;
}

}  // namespace

double t_quantile(double p, int df) {
    if (df < 1) throw std::invalid_argument("degrees of freedom must be >= 1");
    if (p <= 0.0 || p >= 1.0) {
        throw std::invalid_argument("quantile level must lie in (0, 1)");
    }
    boost::math::students_t_distribution<double> dist(df);
    return boost::math::quantile(dist, p);
}

Dataset::Dataset(double alpha) : alpha_(alpha) {
    if (alpha <= 0.0 || alpha >= 1.0) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
}

int Dataset::append(const Eigen::VectorXd& x, double first_sample) {
    PointRecord rec;
    rec.x = x;
    records_.push_back(std::move(rec));
    int index = static_cast<int>(records_.size()) - 1;
    add_sample(index, first_sample);
    return index;
}

void Dataset::add_sample(int index, double value) {
    PointRecord& rec = records_.at(index);
    rec.samples.push_back(value);
    refresh(index);
}

void Dataset::refresh(int index) {
    PointRecord& rec = records_[index];
    int r = rec.count();
    double sum = 0.0;
    for (double s : rec.samples) sum += s;
    rec.mean = sum / r;
    if (r >= 2) {
        double ss = 0.0;
        for (double s : rec.samples) ss += (s - rec.mean) * (s - rec.mean);
        rec.stddev = std::sqrt(ss / (r - 1));
        double hw = t_quantile(1.0 - alpha_ / 2.0, r - 1) * rec.stddev /
                    std::sqrt(static_cast<double>(r));
        rec.ci_low = rec.mean - hw;
        rec.ci_up = rec.mean + hw;
    } else {
        rec.stddev = 0.0;
        rec.ci_low = -kInf;
        rec.ci_up = kInf;
    }
    // Means move, so the argmin is rescanned; ties keep the earliest record.
    bsms_ = 0;
    for (int i = 1; i < size(); ++i) {
        if (records_[i].mean < records_[bsms_].mean) bsms_ = i;
    }
}

int Dataset::find(const Eigen::VectorXd& x) const {
    for (int i = 0; i < size(); ++i) {
        if (records_[i].x.size() == x.size() && records_[i].x == x) return i;
    }
    return -1;
}

void Dataset::mean_matrix(Eigen::MatrixXd& X, Eigen::VectorXd& y) const {
    if (records_.empty()) throw std::logic_error("dataset is empty");
    X.resize(records_.size(), records_.front().x.size());
    y.resize(records_.size());
    for (int i = 0; i < size(); ++i) {
        X.row(i) = records_[i].x.transpose();
        y[i] = records_[i].mean;
    }
}

void Dataset::sample_matrix(Eigen::MatrixXd& X, Eigen::VectorXd& y) const {
    if (records_.empty()) throw std::logic_error("dataset is empty");
    int total = 0;
    for (const PointRecord& rec : records_) total += rec.count();
    X.resize(total, records_.front().x.size());
    y.resize(total);
    int row = 0;
    for (const PointRecord& rec : records_) {
        for (double s : rec.samples) {
            X.row(row) = rec.x.transpose();
            y[row] = s;
            ++row;
        }
    }
}

namespace {

// Records one observation of x, creating or extending its record.
void observe(Dataset& data, const Eigen::VectorXd& x, NoisyObjective& objective,
             Budget& budget, RngStream& rng, const SampleHook& hook) {
    double value = objective.sample(x, budget, rng);
    int idx = data.find(x);
    if (idx < 0) {
        data.append(x, value);
    } else {
        data.add_sample(idx, value);
    }
    if (hook) hook();
}

}  // namespace

void evaluate_no_replication(Dataset& data,
                             std::span<const Eigen::VectorXd> candidates,
                             NoisyObjective& objective, Budget& budget,
                             RngStream& rng, const SampleHook& hook) {
    for (const Eigen::VectorXd& x : candidates) {
        if (budget.exhausted()) return;
        observe(data, x, objective, budget, rng, hook);
    }
}

void evaluate_fixed_replication(Dataset& data,
                                std::span<const Eigen::VectorXd> candidates,
                                int r, NoisyObjective& objective, Budget& budget,
                                RngStream& rng, const SampleHook& hook) {
    if (r < 1) throw std::invalid_argument("replication count must be >= 1");
    for (const Eigen::VectorXd& x : candidates) {
        for (int k = 0; k < r; ++k) {
            if (budget.exhausted()) return;
            observe(data, x, objective, budget, rng, hook);
        }
    }
}

void evaluate_smart_replication(Dataset& data,
                                std::span<const Eigen::VectorXd> candidates,
                                int r_max, NoisyObjective& objective,
                                Budget& budget, RngStream& rng,
                                const SampleHook& hook) {
    if (r_max < 1) throw std::invalid_argument("r_max must be >= 1");
    std::vector<int> indices;
    for (const Eigen::VectorXd& x : candidates) {
        if (budget.exhausted()) return;
        observe(data, x, objective, budget, rng, hook);
        indices.push_back(data.find(x));
    }
    double upper = bsms_upper(data.bsms());
    for (int idx : indices) {
        while (!budget.exhausted() && data.record(idx).count() <= r_max &&
               data.record(idx).ci_low < upper) {
            observe(data, data.record(idx).x, objective, budget, rng, hook);
        }
        upper = bsms_upper(data.bsms());
    }
}

}  // namespace surropt
