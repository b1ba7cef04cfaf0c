#include "recordcpd/kolmogorov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace recordcpd {
namespace kolmogorov {

namespace {
constexpr double term_tol = 1e-14;
constexpr int max_terms = 200;
} // namespace

eval survival_alternating(double x) {
    eval e{x, 1.0, 0, series_id::alternating};
    if (x <= 0.0) return e;
    double s = 0.0;
    double sign = 1.0;
    int k = 1;
    for (; k <= max_terms; ++k) {
        const double term = 2.0 * std::exp(-2.0 * (k * x) * (k * x));
        s += sign * term;
        if (term < term_tol) break;
        sign = -sign;
    }
    e.survival = std::clamp(s, 0.0, 1.0);
    e.terms_used = std::min(k, max_terms);
    return e;
}

eval survival_theta(double x) {
    eval e{x, 1.0, 0, series_id::theta};
    if (x <= 0.0) return e;
    const double c = std::numbers::pi * std::numbers::pi / (8.0 * x * x);
    double s = 0.0;
    int k = 1;
    for (; k <= max_terms; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double term = std::exp(-c * odd * odd);
        s += term;
        if (term < term_tol) break;
    }
    e.survival = std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / x * s, 0.0, 1.0);
    e.terms_used = std::min(k, max_terms);
    return e;
}

double survival(double x) {
    if (x <= 0.0) return 1.0;
    // Each expansion converges fastest in its own regime; switch at 1.
    return x >= 1.0 ? survival_alternating(x).survival : survival_theta(x).survival;
}

double cdf(double x) { return 1.0 - survival(x); }

double quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw out_of_domain("kolmogorov::quantile: need 0 < p < 1");
    double lo = 0.0;
    double hi = 1.0;
    while (cdf(hi) < p) hi *= 2.0; // cdf(8) is already 1 - ~1e-55
    for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace kolmogorov
} // namespace recordcpd
