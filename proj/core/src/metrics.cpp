#include "surropt/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace surropt {
namespace {

double area(const std::vector<double>& v, Quadrature quadrature) {
    std::size_t n = v.size();
    double s = 0.0;
    if (quadrature == Quadrature::Trapezoid) {
        // Virtual step 0 repeats the first value.
        double prev = v.front();
        for (double x : v) {
            s += 0.5 * (prev + x);
            prev = x;
        }
    } else {
        for (double x : v) s += x;
    }
    return s / static_cast<double>(n);
}

}  // namespace

NormalizedTrace normalize_trace(std::span<const double> bsms_true,
                                double f_min) {
    if (bsms_true.empty()) {
        throw std::invalid_argument("cannot normalize an empty trace");
    }
    NormalizedTrace out;
    out.f_min = f_min;
    out.f_max = *std::max_element(bsms_true.begin(), bsms_true.end());
    out.values.reserve(bsms_true.size());
    double span = out.f_max - out.f_min;
    for (double f : bsms_true) {
        out.values.push_back(span > 0.0 ? (f - out.f_min) / span : 0.0);
    }
    return out;
}

double auc(std::span<const double> bsms_true, double f_min,
           Quadrature quadrature) {
    NormalizedTrace t = normalize_trace(bsms_true, f_min);
    if (t.f_max == t.f_min) return 0.0;
    return area(t.values, quadrature);
}

double mtfauc(std::span<const double> bsms_true, double f_min,
              Quadrature quadrature) {
    NormalizedTrace t = normalize_trace(bsms_true, f_min);
    if (t.f_max == t.f_min) return 0.0;
    // Monotone envelope from the tail: M(i) = max_{j >= i} value(j).
    for (std::size_t i = t.values.size() - 1; i-- > 0;) {
        t.values[i] = std::max(t.values[i], t.values[i + 1]);
    }
    return area(t.values, quadrature);
}

}  // namespace surropt
