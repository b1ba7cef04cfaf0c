#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "recordcpd/records.hpp"
#include "recordcpd/series.hpp"

namespace recordcpd {
namespace simlab {

// Alternative-hypothesis generators. With 1-based time t and changepoint
// t0 < T:
//   A: Y = mu_t + eps,            mu_t = theta (t - t0) for t > t0
//   B: Y = sigma_t eps,           sigma_t = 1 + theta (t - t0) for t > t0
//   C: Y = mu_t + eps,            mu_t = theta for t > t0
//   D: mixture with a drift in the right tail: with prob tau a N(0,1)
//      truncated below its tau-quantile, else mu_t (per A) plus a N(0,1)
//      truncated above it.
enum class scenario_id { A, B, C, D };

struct scenario {
    scenario_id id = scenario_id::A;
    std::size_t T = 100;
    std::size_t M = 1;
    std::size_t t0 = 50;
    double theta = 0.0;
    double tau = 0.95; // D only
};

const char* to_string(scenario_id id);
scenario_id scenario_id_from_string(const std::string& s);

series_matrix generate(const scenario& sc, std::uint64_t seed);

// One of the nine statistics: kind in {N, d, s} crossed with no weights,
// inverse-SD weights (^var) and linear weights (^linear).
struct statistic_spec {
    std::string label;
    indicator_kind kind = indicator_kind::upper;
    weight_rule rule = weight_rule::none;
};

statistic_spec statistic_from_label(const std::string& label);
std::vector<statistic_spec> default_statistics();

struct report_row {
    std::string statistic;
    std::string scenario;  // "null" or A/B/C/D
    std::size_t T = 0;
    std::size_t M = 0;
    std::size_t t0 = 0;          // 0 when not applicable
    double theta = 0.0;
    double alpha = 0.0;          // NaN when not applicable
    double rejection_rate = 0.0; // NaN when not applicable
    double est_q1 = 0.0, est_median = 0.0, est_q3 = 0.0; // NaN for size rows
    std::size_t est_count = 0;   // trials summarized in the estimate columns
    bool rejected_only = false;
};

struct experiment_report {
    std::vector<report_row> rows;
    std::size_t trials = 0;
    std::uint64_t seed = 0;

    std::string to_csv() const;
};

// Null rejection rates per statistic and alpha. Unweighted statistics
// are thresholded at the asymptotic Kolmogorov quantiles; weighted ones
// at Monte Carlo critical values from `mc_threshold_replicates` null
// replicates per configuration.
experiment_report run_size(const std::vector<statistic_spec>& statistics, std::size_t T,
                           std::size_t M, const std::vector<double>& alphas,
                           std::size_t trials, std::uint64_t seed,
                           unsigned parallel_chunks = 1,
                           std::size_t mc_threshold_replicates = 1000);

// Rejection rates under the given scenarios at a single alpha.
experiment_report run_power(const std::vector<statistic_spec>& statistics,
                            const std::vector<scenario>& scenarios, double alpha,
                            std::size_t trials, std::uint64_t seed,
                            unsigned parallel_chunks = 1,
                            std::size_t mc_threshold_replicates = 1000);

// Quartile summary of the changepoint estimate under each scenario.
// Summaries cover all trials unless rejected_only_alpha is set, in which
// case only trials rejecting at that level are kept.
experiment_report run_estimation(const std::vector<statistic_spec>& statistics,
                                 const std::vector<scenario>& scenarios, std::size_t trials,
                                 std::uint64_t seed, unsigned parallel_chunks = 1,
                                 std::optional<double> rejected_only_alpha = std::nullopt,
                                 std::size_t mc_threshold_replicates = 1000);

} // namespace simlab
} // namespace recordcpd
