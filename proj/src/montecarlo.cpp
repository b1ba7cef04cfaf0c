#include "recordcpd/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "recordcpd/parallel.hpp"
#include "recordcpd/rng.hpp"

namespace recordcpd {

namespace {

// Accumulate the kind's indicator values of one permutation into acc.
// Permutations are tie-free so no tie handling is needed here.
void accumulate_permutation_indicators(const std::vector<std::int32_t>& perm,
                                       indicator_kind kind, std::vector<double>& acc) {
    const std::size_t T = perm.size();
    std::int32_t run_max = perm[0];
    std::int32_t run_min = perm[0];
    switch (kind) {
    case indicator_kind::upper: acc[0] += 1.0; break;
    case indicator_kind::lower: acc[0] += 1.0; break;
    case indicator_kind::diff: break;
    case indicator_kind::sum: acc[0] += 2.0; break;
    }
    for (std::size_t t = 1; t < T; ++t) {
        const std::int32_t x = perm[t];
        const int up = x > run_max;
        const int lo = x < run_min;
        if (up) run_max = x;
        if (lo) run_min = x;
        switch (kind) {
        case indicator_kind::upper: acc[t] += up; break;
        case indicator_kind::lower: acc[t] += lo; break;
        case indicator_kind::diff: acc[t] += up - lo; break;
        case indicator_kind::sum: acc[t] += up + lo; break;
        }
    }
}

} // namespace

null_sample simulate_null_statistic(indicator_kind kind, const weight_scheme& scheme,
                                    std::size_t T, std::size_t M,
                                    const monte_carlo_config& config) {
    if (T < 2) throw too_short("simulate_null_statistic: T must be >= 2");
    if (M < 1) throw config_error("simulate_null_statistic: M must be >= 1");
    if (config.replicates < 100)
        throw config_error("simulate_null_statistic: need at least 100 replicates");

    const auto weights = realize_weights(scheme, kind, T);
    std::vector<double> mean0, var0;
    null_moments(kind, T, mean0, var0);

    // Fail fast on a degenerate configuration before the replicate loop.
    {
        double sigma2 = 0.0;
        for (std::size_t t = 0; t < T; ++t) sigma2 += weights[t] * weights[t] * var0[t];
        if (!(sigma2 > 0.0))
            throw degenerate_variance("simulate_null_statistic: sigma_T^2 = 0");
    }

    null_sample out;
    out.kind = kind;
    out.scheme_rule = scheme.rule;
    out.T = T;
    out.M = M;
    out.seed = config.seed;
    out.statistic_values.resize(config.replicates);

    const double m_count = static_cast<double>(M);
    run_chunked(config.replicates, config.parallel_chunks,
                [&](std::size_t begin, std::size_t end) {
                    std::vector<std::int32_t> perm(T);
                    std::vector<double> mean(T);
                    for (std::size_t r = begin; r < end; ++r) {
                        auto stream = rng_stream::for_index(config.seed, r);
                        std::fill(mean.begin(), mean.end(), 0.0);
                        for (std::size_t m = 0; m < M; ++m) {
                            stream.fill_permutation(perm);
                            accumulate_permutation_indicators(perm, kind, mean);
                        }
                        for (std::size_t t = 0; t < T; ++t) mean[t] /= m_count;
                        out.statistic_values[r] =
                            bridge_pooled_core(mean, mean0, var0, m_count, weights, kind,
                                               scheme.rule)
                                .k;
                    }
                });

    std::sort(out.statistic_values.begin(), out.statistic_values.end());
    return out;
}

double mc_pvalue(double observed, const null_sample& null) {
    const auto& v = null.statistic_values;
    if (v.empty()) throw config_error("mc_pvalue: empty null sample");
    const auto ge = v.end() - std::lower_bound(v.begin(), v.end(), observed);
    return (1.0 + static_cast<double>(ge)) / (static_cast<double>(v.size()) + 1.0);
}

double mc_critical_value(const null_sample& null, double alpha) {
    const auto& v = null.statistic_values;
    if (v.empty()) throw config_error("mc_critical_value: empty null sample");
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw out_of_domain("mc_critical_value: need 0 < alpha < 1");
    const double r = static_cast<double>(v.size());
    std::size_t idx = static_cast<std::size_t>(std::ceil((1.0 - alpha) * r));
    idx = std::min(std::max<std::size_t>(idx, 1), v.size());
    return v[idx - 1];
}

} // namespace recordcpd
