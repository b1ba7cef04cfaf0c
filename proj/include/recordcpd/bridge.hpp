#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "recordcpd/records.hpp"

namespace recordcpd {

// Discrete skeleton of the bridge process: the points (nu_Tt, B_T(nu_Tt)),
// the max-abs statistic K_T and the argmax changepoint estimate.
// B is exactly 0 at both endpoints; nu runs from 0 to 1.
struct bridge_sample {
    std::vector<double> nu;
    std::vector<double> b;
    double k = 0.0;
    std::size_t that_index = 1; // 1-based, smallest t attaining |B| = K
    indicator_kind kind = indicator_kind::upper;
    weight_rule scheme_rule = weight_rule::none;
};

// Standardized increments xi_Tt = w_t (V_t - E V_t) / sigma_T with
// sigma_T^2 = sum w_k^2 Var(V_k). Throws degenerate_variance if sigma_T = 0.
std::vector<double> standardize(const indicator_sequence& ind, std::span<const double> weights);

// Assemble the bridge from precomputed increments. nu comes from the
// cumulative weighted variances of `ind`.
bridge_sample bridge(std::span<const double> xi, std::span<const double> weights,
                     const indicator_sequence& ind);

// One-call convenience for a single column's indicator sequence.
bridge_sample bridge_for(const indicator_sequence& ind, const weight_scheme& scheme);

// Shared core: `observed` holds the per-t indicator values averaged over
// M subseries, and the null variances enter divided by M. The single
// series path is exactly the M = 1 case.
bridge_sample bridge_pooled_core(std::span<const double> observed,
                                 std::span<const double> mean0, std::span<const double> var0,
                                 double M, std::span<const double> weights, indicator_kind kind,
                                 weight_rule rule);

// Conservativeness adjustment -sqrt(T) log(1 - K/sqrt(T)). Experimental;
// reference distribution is not asserted. Requires 0 <= K < sqrt(T).
double fisher_transform(double K, std::size_t T);

// Var(B_T(nu_Tt)) = nu_Tt (1 - nu_Tt) across t, for plot output.
std::vector<double> bridge_variance_curve(indicator_kind kind, const weight_scheme& scheme,
                                          std::size_t T);

// Asymptotic-diagnostic skewness of the weighted record count with
// omega_t = t^n: third central moment over sigma^3 from the exact null
// moment sums. Tends to (2/3) sqrt(2n) as T grows.
double weighted_sum_skewness(double n, std::size_t T);

// Piecewise-linear resample of (nu, B) on an equispaced nu grid of
// `points` nodes, for plot output only.
std::vector<std::pair<double, double>> dense_bridge(const bridge_sample& sample,
                                                    std::size_t points);

} // namespace recordcpd
