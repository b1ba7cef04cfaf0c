#pragma once

#include <cstdint>
#include <vector>

#include "recordcpd/bridge.hpp"
#include "recordcpd/records.hpp"

namespace recordcpd {

struct monte_carlo_config {
    std::size_t replicates = 1000;
    std::uint64_t seed = 0;
    unsigned parallel_chunks = 1;
};

// Sorted null statistic values plus the configuration they came from.
struct null_sample {
    std::vector<double> statistic_values; // ascending
    indicator_kind kind = indicator_kind::upper;
    weight_rule scheme_rule = weight_rule::none;
    std::size_t T = 0;
    std::size_t M = 1;
    std::uint64_t seed = 0;
};

// Null distribution of the K_T statistic for (kind, scheme, T, M).
// Each replicate draws M independent random permutations of 1..T (ranks
// are sufficient under exchangeability), computes the record indicators
// per column, pools across columns and evaluates K_T. Replicate r uses a
// stream derived from (seed, r), so output is bit-identical for any
// parallel_chunks.
null_sample simulate_null_statistic(indicator_kind kind, const weight_scheme& scheme,
                                    std::size_t T, std::size_t M,
                                    const monte_carlo_config& config);

// Conservative Monte Carlo p-value (1 + #{replicate >= observed}) / (R + 1).
double mc_pvalue(double observed, const null_sample& null);

// Empirical critical value: the ceil((1-alpha) R)-th order statistic, so
// that P(K > c) <= alpha over the sample.
double mc_critical_value(const null_sample& null, double alpha);

} // namespace recordcpd
