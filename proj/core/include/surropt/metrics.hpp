#pragma once

#include <span>
#include <vector>

namespace surropt {

// Integration rule for the area under the normalized convergence trace.
// Trapezoid averages consecutive values; PlainSum takes the values directly.
enum class Quadrature { Trapezoid, PlainSum };

struct NormalizedTrace {
    std::vector<double> values;  // (f - f_min) / (f_max - f_min)
    double f_min = 0.0;
    double f_max = 0.0;
};

// Normalizes a best-so-far trace of true objective values to [0, 1]. f_max
// is taken from the trace itself; f_min is the known optimum (0 for every
// built-in test function). A flat trace pinned at f_min is degenerate and
// normalizes to all zeros.
NormalizedTrace normalize_trace(std::span<const double> bsms_true,
                                double f_min = 0.0);

// Mean area under the normalized trace, lower is better. The leading value
// is extended backwards one step so the first interval is well defined.
double auc(std::span<const double> bsms_true, double f_min = 0.0,
           Quadrature quadrature = Quadrature::Trapezoid);

// Same area computed on the monotone envelope M(i) = max_{j >= i} of the
// normalized trace. Penalizes traces whose best-so-far regresses under
// noise; equals auc on non-increasing traces and never falls below it.
double mtfauc(std::span<const double> bsms_true, double f_min = 0.0,
              Quadrature quadrature = Quadrature::Trapezoid);

}  // namespace surropt
