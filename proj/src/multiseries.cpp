#include "recordcpd/multiseries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "recordcpd/rng.hpp"

namespace recordcpd {

const char* to_string(selection_method m) {
    switch (m) {
    case selection_method::fixed_spacing: return "spacing";
    case selection_method::greedy_correlation: return "greedy";
    case selection_method::user_provided: return "user";
    }
    return "?";
}

bridge_sample pooled_bridge(const series_matrix& matrix, indicator_kind kind,
                            const weight_scheme& scheme, const indicator_policies& policies) {
    const std::size_t T = matrix.rows();
    const std::size_t M = matrix.cols();
    if (matrix.has_missing())
        throw missing_data("pooled_bridge: all subseries must be complete");

    const auto weights = realize_weights(scheme, kind, T);
    std::vector<double> mean0, var0;
    null_moments(kind, T, mean0, var0);

    // Indicator values are small integers, so the per-t sums are exact.
    std::vector<double> mean(T, 0.0);
    std::vector<double> column(T);
    for (std::size_t m = 0; m < M; ++m) {
        for (std::size_t t = 0; t < T; ++t) column[t] = matrix.at(t, m);
        const auto ind = compute_indicators(column, kind, policies);
        for (std::size_t t = 0; t < T; ++t) mean[t] += static_cast<double>(ind.values[t]);
    }
    const double m_count = static_cast<double>(M);
    for (std::size_t t = 0; t < T; ++t) mean[t] /= m_count;

    return bridge_pooled_core(mean, mean0, var0, m_count, weights, kind, scheme.rule);
}

int spacing_for_target(int m_target) {
    if (m_target < 1) throw config_error("spacing_for_target: target must be >= 1");
    return (365 + m_target - 1) / m_target;
}

namespace {

std::vector<double> midranks(std::span<const double> x) {
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] < x[b];
    });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0; // average of ranks i+1..j+1
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
        i = j + 1;
    }
    return rank;
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= static_cast<double>(n);
    mb /= static_cast<double>(n);
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (!(saa > 0.0) || !(sbb > 0.0)) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

} // namespace

double rank_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 3)
        throw config_error("rank_correlation: need two equal columns of length >= 3");
    return pearson(midranks(a), midranks(b));
}

subseries_selection select_subseries(const series_matrix& matrix365,
                                     const subseries_spec& spec) {
    const int M = static_cast<int>(matrix365.cols());
    subseries_selection out;
    out.method = spec.method;
    out.threshold = spec.threshold;

    switch (spec.method) {
    case selection_method::user_provided: {
        if (spec.user.empty()) throw invalid_indices("subseries: empty user selection");
        int prev = 0;
        for (int d : spec.user) {
            if (d < 1 || d > 365 || d > M)
                throw invalid_indices("subseries: index " + std::to_string(d) +
                                      " outside [1, " + std::to_string(std::min(365, M)) + "]");
            if (d <= prev) throw invalid_indices("subseries: indices must be strictly increasing");
            prev = d;
        }
        out.selected = spec.user;
        return out;
    }
    case selection_method::fixed_spacing: {
        if (spec.spacing < 1) throw config_error("subseries: spacing must be >= 1");
        for (int d = 1; d <= std::min(365, M); d += spec.spacing) out.selected.push_back(d);
        return out;
    }
    case selection_method::greedy_correlation: break;
    }

    if (!(spec.threshold > 0.0) || !(spec.threshold < 1.0))
        throw config_error("subseries: greedy threshold must be in (0,1)");
    const std::size_t years = matrix365.rows();
    if (years < 10)
        throw insufficient_years("subseries: need >= 10 years to estimate correlations");

    // z = r sqrt(n-1) ~ N(0,1) under independence; keep a day only when
    // its correlation with the last kept day is not significant.
    const double z_crit = normal_quantile(1.0 - spec.threshold / 2.0);
    const double r_crit = z_crit / std::sqrt(static_cast<double>(years - 1));

    auto complete = [&](int col0) {
        for (std::size_t t = 0; t < years; ++t)
            if (matrix365.is_missing(t, static_cast<std::size_t>(col0))) return false;
        return true;
    };

    int last_kept = -1;
    std::vector<double> last_col, cand;
    for (int d = 0; d < std::min(365, M); ++d) {
        if (!complete(d)) continue;
        if (last_kept < 0) {
            out.selected.push_back(d + 1);
            last_kept = d;
            last_col = matrix365.column(static_cast<std::size_t>(d));
            continue;
        }
        cand = matrix365.column(static_cast<std::size_t>(d));
        if (std::fabs(rank_correlation(last_col, cand)) < r_crit) {
            out.selected.push_back(d + 1);
            last_kept = d;
            last_col = std::move(cand);
        }
    }
    if (out.selected.empty())
        throw insufficient_years("subseries: no complete columns available");
    return out;
}

series_matrix select_columns(const series_matrix& matrix, const std::vector<int>& one_based) {
    if (one_based.empty()) throw invalid_indices("select_columns: empty selection");
    const std::size_t T = matrix.rows();
    const std::size_t M = one_based.size();
    std::vector<double> values(T * M, 0.0);
    std::vector<std::uint8_t> missing(T * M, 0);
    for (std::size_t j = 0; j < M; ++j) {
        const int d = one_based[j];
        if (d < 1 || static_cast<std::size_t>(d) > matrix.cols())
            throw invalid_indices("select_columns: index out of range");
        for (std::size_t t = 0; t < T; ++t) {
            values[t * M + j] = matrix.at(t, static_cast<std::size_t>(d - 1));
            missing[t * M + j] = matrix.is_missing(t, static_cast<std::size_t>(d - 1)) ? 1 : 0;
        }
    }
    return series_matrix(T, M, std::move(values), std::move(missing));
}

} // namespace recordcpd
