#pragma once

#include <cstddef>

#include "recordcpd/errors.hpp"

namespace recordcpd {
namespace kolmogorov {

enum class series_id { alternating, theta };

struct eval {
    double x = 0.0;
    double survival = 1.0;
    int terms_used = 0;
    series_id series = series_id::alternating;
};

// P(K >= x) for the Kolmogorov distribution. Total on the reals:
// x <= 0 gives 1, large x underflows to 0. Uses the alternating
// exponential series for x >= 1 and the theta-function series below.
double survival(double x);
double cdf(double x);

// Series-specific evaluations, exposed for the seam check between the
// two expansions.
eval survival_alternating(double x);
eval survival_theta(double x);

// Inverse CDF: the x with P(K < x) = p, 0 < p < 1. Bisection to 1e-10.
double quantile(double p);

} // namespace kolmogorov
} // namespace recordcpd
