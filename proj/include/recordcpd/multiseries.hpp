#pragma once

#include <cstddef>
#include <vector>

#include "recordcpd/bridge.hpp"
#include "recordcpd/records.hpp"
#include "recordcpd/series.hpp"

namespace recordcpd {

// Single K_T statistic from M subseries: records are computed
// independently per column, the indicator values are averaged at each t,
// and the null variances enter divided by M. With M = 1 this is
// bit-identical to the single-series path.
bridge_sample pooled_bridge(const series_matrix& matrix, indicator_kind kind,
                            const weight_scheme& scheme,
                            const indicator_policies& policies = {});

enum class selection_method { fixed_spacing, greedy_correlation, user_provided };

const char* to_string(selection_method m);

struct subseries_spec {
    selection_method method = selection_method::greedy_correlation;
    int spacing = 7;                // fixed_spacing: keep days 1, 1+k, 1+2k, ...
    double threshold = 0.05;        // greedy: significance level of the rank
                                    // correlation test between candidate and
                                    // last kept column
    std::vector<int> user;          // user_provided, 1-based day indices
};

struct subseries_selection {
    std::vector<int> selected; // 1-based column indices, strictly increasing
    double threshold = 0.0;
    selection_method method = selection_method::user_provided;
};

// ceil(365 / m_target): the spacing that yields roughly m_target days.
int spacing_for_target(int m_target);

// Choose an approximately uncorrelated subset of day-of-year columns.
// greedy_correlation walks the columns in order and keeps one only if
// its rank correlation with the last kept column is not significant at
// level `threshold` (needs >= 10 rows); columns containing missing
// values are never kept.
subseries_selection select_subseries(const series_matrix& matrix365,
                                     const subseries_spec& spec);

// Materialize the selected columns as a new matrix.
series_matrix select_columns(const series_matrix& matrix, const std::vector<int>& one_based);

// Spearman correlation between two equal-length columns (midranks).
double rank_correlation(std::span<const double> a, std::span<const double> b);

} // namespace recordcpd
