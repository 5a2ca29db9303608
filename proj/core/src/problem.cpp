#include "surropt/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace surropt {
namespace {

constexpr double kPi = std::numbers::pi;

double rosenbrock(const Eigen::VectorXd& x, int m) {
    double s = 0.0;
    for (int i = 0; i + 1 < m; ++i) {
        double a = x[i + 1] - x[i] * x[i];
        double b = x[i] - 1.0;
        s += 100.0 * a * a + b * b;
    }
    if (m == 1) {
        double b = x[0] - 1.0;
        s = b * b;
    }
    return s;
}

double rastrigin(const Eigen::VectorXd& x, int m) {
    double s = 10.0 * m;
    for (int i = 0; i < m; ++i) {
        s += x[i] * x[i] - 10.0 * std::cos(2.0 * kPi * x[i]);
    }
    return s;
}

double levy(const Eigen::VectorXd& x, int m) {
    auto w = [&](int i) { return 1.0 + (x[i] - 1.0) / 4.0; };
    double s0 = std::sin(kPi * w(0));
    double s = s0 * s0;
    for (int i = 0; i + 1 < m; ++i) {
        double wi = w(i);
        double sw = std::sin(kPi * wi + 1.0);
        s += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * sw * sw);
    }
    double wd = w(m - 1);
    double sd = std::sin(2.0 * kPi * wd);
    s += (wd - 1.0) * (wd - 1.0) * (1.0 + sd * sd);
    return s;
}

double ackley(const Eigen::VectorXd& x, int m) {
    double sq = 0.0;
    double cs = 0.0;
    for (int i = 0; i < m; ++i) {
        sq += x[i] * x[i];
        cs += std::cos(2.0 * kPi * x[i]);
    }
    double inv = 1.0 / m;
    return -20.0 * std::exp(-0.2 * std::sqrt(inv * sq)) - std::exp(inv * cs) +
           20.0 + std::numbers::e;
}

double zakharov(const Eigen::VectorXd& x, int m) {
    double sq = 0.0;
    double lin = 0.0;
    for (int i = 0; i < m; ++i) {
        sq += x[i] * x[i];
        lin += 0.5 * (i + 1) * x[i];
    }
    return sq + lin * lin + lin * lin * lin * lin;
}

double domain_half_width(FunctionId id, bool upper) {
    switch (id) {
        case FunctionId::Rosenbrock: return upper ? 10.0 : -5.0;
        case FunctionId::Rastrigin: return upper ? 5.12 : -5.12;
        case FunctionId::Levy: return upper ? 10.0 : -10.0;
        case FunctionId::Ackley: return upper ? 32.768 : -32.768;
        case FunctionId::Zakharov: return upper ? 10.0 : -5.0;
    }
    throw std::invalid_argument("unknown function id");
}

}  // namespace

FunctionId function_from_name(const std::string& name) {
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (n == "rosenbrock") return FunctionId::Rosenbrock;
    if (n == "rastrigin") return FunctionId::Rastrigin;
    if (n == "levy") return FunctionId::Levy;
    if (n == "ackley") return FunctionId::Ackley;
    if (n == "zakharov") return FunctionId::Zakharov;
    throw std::invalid_argument("unknown test function: " + name);
}

std::string function_name(FunctionId id) {
    switch (id) {
        case FunctionId::Rosenbrock: return "rosenbrock";
        case FunctionId::Rastrigin: return "rastrigin";
        case FunctionId::Levy: return "levy";
        case FunctionId::Ackley: return "ackley";
        case FunctionId::Zakharov: return "zakharov";
    }
    throw std::invalid_argument("unknown function id");
}

std::vector<std::string> function_names() {
    return {"rosenbrock", "rastrigin", "levy", "ackley", "zakharov"};
}

TestFunction::TestFunction(FunctionId id, int dim, double fraction_important)
    : id_(id), dim_(dim), fiv_(fraction_important) {
    if (dim < 1) throw std::invalid_argument("dimension must be positive");
    if (fiv_ <= 0.0 || fiv_ > 1.0) {
        throw std::invalid_argument(
            "fraction of important variables must lie in (0, 1]");
    }
    important_ = static_cast<int>(std::ceil(fiv_ * dim));
    bounds_.lower = Eigen::VectorXd::Constant(dim, domain_half_width(id, false));
    bounds_.upper = Eigen::VectorXd::Constant(dim, domain_half_width(id, true));
}

double TestFunction::operator()(const Eigen::VectorXd& x) const {
    if (x.size() != dim_) {
        throw std::invalid_argument("point dimension mismatch");
    }
    for (int i = 0; i < dim_; ++i) {
        if (x[i] < bounds_.lower[i] || x[i] > bounds_.upper[i]) {
            throw std::invalid_argument("point outside the function domain");
        }
    }
    switch (id_) {
        case FunctionId::Rosenbrock: return rosenbrock(x, important_);
        case FunctionId::Rastrigin: return rastrigin(x, important_);
        case FunctionId::Levy: return levy(x, important_);
        case FunctionId::Ackley: return ackley(x, important_);
        case FunctionId::Zakharov: return zakharov(x, important_);
    }
    throw std::invalid_argument("unknown function id");
}

double initial_output_range(std::span<const double> outputs) {
    if (outputs.empty()) {
        throw std::invalid_argument("initial design has no outputs");
    }
    auto [lo, hi] = std::minmax_element(outputs.begin(), outputs.end());
    return *hi - *lo;
}

Budget::Budget(int limit) : limit_(limit) {
    if (limit < 0) throw std::invalid_argument("budget must be non-negative");
}

void Budget::consume() {
    if (exhausted()) throw BudgetExhausted();
    ++used_;
}

NoisyObjective::NoisyObjective(TestFunction base, double noise_level)
    : base_(std::move(base)), np_(noise_level) {
    if (np_ < 0.0) throw std::invalid_argument("noise level must be >= 0");
}

double NoisyObjective::sample(const Eigen::VectorXd& x, Budget& budget,
                              RngStream& rng) {
    budget.consume();
    double value = base_(x);
    if (np_ > 0.0 && frozen_) {
        value += rng.normal(0.0, np_ * sigma0_);
    }
    return value;
}

void NoisyObjective::freeze_sigma0(double sigma0) {
    if (sigma0 < 0.0) throw std::invalid_argument("sigma0 must be >= 0");
    sigma0_ = sigma0;
    frozen_ = true;
}

}  // namespace surropt
