#pragma once

#include <optional>
#include <string>
#include <vector>

#include "recordcpd/bridge.hpp"
#include "recordcpd/montecarlo.hpp"
#include "recordcpd/records.hpp"
#include "recordcpd/series.hpp"

namespace recordcpd {

enum class pvalue_mode { asymptotic, monte_carlo };

const char* to_string(pvalue_mode m);

struct test_request {
    indicator_kind kind = indicator_kind::upper;
    weight_scheme scheme = weight_scheme::none();
    pvalue_mode mode = pvalue_mode::asymptotic;
    monte_carlo_config mc;
    indicator_policies policies;
    bool include_fisher = false; // experimental diagnostic, off by default
};

struct test_result {
    double statistic = 0.0;
    std::optional<double> fisher;
    double pvalue = 1.0;
    pvalue_mode pvalue_source = pvalue_mode::asymptotic;
    std::size_t that_index = 1;   // 1-based
    std::optional<int> that_year; // when year labels were supplied
    double threshold95 = 0.0;     // Kolmogorov 95th percentile, for plots
    bridge_sample sample;
    std::size_t T = 0;
    std::size_t M = 0;
    test_request request;
};

// Run one configured record test on a complete T x M matrix. Asymptotic
// p-values are only defined for the unweighted statistic; a weighted
// scheme in asymptotic mode is a configuration error.
test_result run_test(const series_matrix& matrix, const test_request& request,
                     const std::vector<int>& years = {});

std::string to_json(const test_result& r);
std::string to_table(const test_result& r);
// Tidy (t, year, nu, abs_b, threshold) rows for plotting.
std::string to_plot_csv(const test_result& r, const std::vector<int>& years = {});

} // namespace recordcpd
