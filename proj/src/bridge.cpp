#include "recordcpd/bridge.hpp"

#include <algorithm>
#include <cmath>

namespace recordcpd {

namespace {

// Cumulative weighted variances scaled to [0,1]. Throws if the total is 0.
std::vector<double> nu_grid(std::span<const double> weights, std::span<const double> var0,
                            double M) {
    const std::size_t T = var0.size();
    std::vector<double> nu(T);
    double acc = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        acc += weights[t] * weights[t] * (var0[t] / M);
        nu[t] = acc;
    }
    const double total = nu[T - 1];
    if (!(total > 0.0))
        throw degenerate_variance("bridge: sigma_T^2 = 0 under this weight scheme");
    // total/total = 1 exactly, so nu[T-1] lands on 1 and B[T-1] on 0.
    for (std::size_t t = 0; t < T; ++t) nu[t] /= total;
    return nu;
}

bridge_sample assemble(std::vector<double> nu, std::span<const double> xi, indicator_kind kind,
                       weight_rule rule) {
    const std::size_t T = nu.size();
    bridge_sample out;
    out.kind = kind;
    out.scheme_rule = rule;
    out.nu = std::move(nu);
    out.b.resize(T);
    double s = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        s += xi[t];
        out.b[t] = s; // S_t for now
    }
    const double s_total = s;
    double best = -1.0;
    std::size_t best_t = 0;
    for (std::size_t t = 0; t < T; ++t) {
        out.b[t] -= out.nu[t] * s_total;
        const double a = std::fabs(out.b[t]);
        if (a > best) {
            best = a;
            best_t = t;
        }
    }
    out.k = best;
    out.that_index = best_t + 1;
    return out;
}

} // namespace

std::vector<double> standardize(const indicator_sequence& ind, std::span<const double> weights) {
    const std::size_t T = ind.size();
    double sigma2 = 0.0;
    for (std::size_t t = 0; t < T; ++t) sigma2 += weights[t] * weights[t] * ind.var0[t];
    if (!(sigma2 > 0.0))
        throw degenerate_variance("standardize: sigma_T^2 = 0 under this weight scheme");
    const double sigma = std::sqrt(sigma2);
    std::vector<double> xi(T);
    for (std::size_t t = 0; t < T; ++t)
        xi[t] = weights[t] * (static_cast<double>(ind.values[t]) - ind.mean0[t]) / sigma;
    return xi;
}

bridge_sample bridge(std::span<const double> xi, std::span<const double> weights,
                     const indicator_sequence& ind) {
    return assemble(nu_grid(weights, ind.var0, 1.0), xi, ind.kind, weight_rule::custom);
}

bridge_sample bridge_pooled_core(std::span<const double> observed,
                                 std::span<const double> mean0, std::span<const double> var0,
                                 double M, std::span<const double> weights, indicator_kind kind,
                                 weight_rule rule) {
    const std::size_t T = observed.size();
    double sigma2 = 0.0;
    for (std::size_t t = 0; t < T; ++t) sigma2 += weights[t] * weights[t] * (var0[t] / M);
    if (!(sigma2 > 0.0))
        throw degenerate_variance("bridge: sigma_T^2 = 0 under this weight scheme");
    const double sigma = std::sqrt(sigma2);
    std::vector<double> xi(T);
    for (std::size_t t = 0; t < T; ++t)
        xi[t] = weights[t] * (observed[t] - mean0[t]) / sigma;
    return assemble(nu_grid(weights, var0, M), xi, kind, rule);
}

bridge_sample bridge_for(const indicator_sequence& ind, const weight_scheme& scheme) {
    const auto w = realize_weights(scheme, ind.kind, ind.size());
    std::vector<double> observed(ind.values.begin(), ind.values.end());
    return bridge_pooled_core(observed, ind.mean0, ind.var0, 1.0, w, ind.kind, scheme.rule);
}

double fisher_transform(double K, std::size_t T) {
    const double root_t = std::sqrt(static_cast<double>(T));
    if (!(K >= 0.0) || !(K < root_t))
        throw out_of_domain("fisher_transform: need 0 <= K < sqrt(T)");
    return -root_t * std::log1p(-K / root_t);
}

std::vector<double> bridge_variance_curve(indicator_kind kind, const weight_scheme& scheme,
                                          std::size_t T) {
    if (T < 2) throw too_short("bridge_variance_curve: T must be >= 2");
    std::vector<double> mean0, var0;
    null_moments(kind, T, mean0, var0);
    const auto w = realize_weights(scheme, kind, T);
    const auto nu = nu_grid(w, var0, 1.0);
    std::vector<double> curve(T);
    for (std::size_t t = 0; t < T; ++t) curve[t] = nu[t] * (1.0 - nu[t]);
    return curve;
}

double weighted_sum_skewness(double n, std::size_t T) {
    if (T < 3) throw too_short("weighted_sum_skewness: T must be >= 3");
    double sigma2 = 0.0;
    double mu3 = 0.0;
    for (std::size_t i = 1; i <= T; ++i) {
        const double t = static_cast<double>(i);
        const double w = std::pow(t, n);
        sigma2 += w * w * (t - 1.0) / (t * t);
        mu3 += w * w * w * (t * t - 3.0 * t + 2.0) / (t * t * t);
    }
    return mu3 / (sigma2 * std::sqrt(sigma2));
}

std::vector<std::pair<double, double>> dense_bridge(const bridge_sample& sample,
                                                    std::size_t points) {
    if (points < 2) throw config_error("dense_bridge: need at least 2 points");
    std::vector<std::pair<double, double>> out;
    out.reserve(points);
    const auto& nu = sample.nu;
    const auto& b = sample.b;
    std::size_t seg = 0;
    for (std::size_t i = 0; i < points; ++i) {
        const double v = static_cast<double>(i) / static_cast<double>(points - 1);
        while (seg + 2 < nu.size() && nu[seg + 1] < v) ++seg;
        const double lo = nu[seg], hi = nu[seg + 1];
        double y;
        if (hi > lo) {
            const double f = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
            y = b[seg] + f * (b[seg + 1] - b[seg]);
        } else {
            y = b[seg + 1];
        }
        out.emplace_back(v, y);
    }
    return out;
}

} // namespace recordcpd
