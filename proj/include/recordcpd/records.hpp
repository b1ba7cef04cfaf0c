#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "recordcpd/errors.hpp"

namespace recordcpd {

// The four indicator sequences derived from a series: upper records,
// lower records, their difference d_t and their sum s_t.
enum class indicator_kind { upper, lower, diff, sum };

const char* to_string(indicator_kind k);
indicator_kind indicator_kind_from_string(const std::string& s);

// How an observation exactly equal to the running extremum is handled.
// The null moments assume a continuous parent, so ties are an error by
// default; `not_a_record` scores the tie as 0 and counts it.
enum class tie_policy { error, not_a_record };

// Missing entries: hard error (default) or compress the column,
// re-indexing t over the present values only.
enum class missing_policy { error, compress };

struct indicator_policies {
    tie_policy ties = tie_policy::error;
    missing_policy missing = missing_policy::error;
};

// Per-time record-event values for one kind, with their exact moments
// under the stationary null.
struct indicator_sequence {
    indicator_kind kind = indicator_kind::upper;
    std::vector<std::int8_t> values; // {0,1} / {-1,0,1} / {0,1,2}
    std::vector<double> mean0;       // E under H0, mean0[0] degenerate
    std::vector<double> var0;        // Var under H0, var0[0] = 0
    std::size_t tie_count = 0;       // > 0 only under tie_policy::not_a_record

    std::size_t size() const { return values.size(); }
};

// Weight rule omega_t applied to the standardized increments.
enum class weight_rule { none, inverse_sd, linear, custom };

struct weight_scheme {
    weight_rule rule = weight_rule::none;
    std::vector<double> custom; // required iff rule == custom

    static weight_scheme none() { return {weight_rule::none, {}}; }
    static weight_scheme inverse_sd() { return {weight_rule::inverse_sd, {}}; }
    static weight_scheme linear() { return {weight_rule::linear, {}}; }
    static weight_scheme with_custom(std::vector<double> w) {
        return {weight_rule::custom, std::move(w)};
    }
};

const char* to_string(weight_rule r);

// Exact H0 moments of the indicator variable of `kind` at t = 1..T
// (returned 0-indexed). For t >= 2:
//   upper/lower: mean 1/t,  var (1/t)(1-1/t)
//   diff:        mean 0,    var 2/t
//   sum:         mean 2/t,  var (2/t)(1-2/t)
// t = 1 carries the degenerate values with variance 0.
void null_moments(indicator_kind kind, std::size_t T, std::vector<double>& mean0,
                  std::vector<double>& var0);

// Upper and lower record indicators of one column in a single pass.
// Throws ties_detected under tie_policy::error; under not_a_record a tie
// scores 0 for the tied side and increments *tie_count.
void record_indicators(std::span<const double> column, tie_policy ties,
                       std::vector<std::int8_t>& upper, std::vector<std::int8_t>& lower,
                       std::size_t* tie_count = nullptr);

// Record indicators plus exact null moments for one column.
indicator_sequence compute_indicators(std::span<const double> column, indicator_kind kind,
                                      const indicator_policies& policies = {});

// Same, honoring a missing mask per `policies.missing`.
indicator_sequence compute_indicators(std::span<const double> column,
                                      std::span<const std::uint8_t> missing_mask,
                                      indicator_kind kind,
                                      const indicator_policies& policies = {});

// Realize the weight vector omega_1..omega_T for a scheme and kind.
// inverse_sd weights are proportional to 1/sd of the indicator variable:
//   upper/lower: omega_1 = 0, omega_t = t/sqrt(t-1)
//   diff:        omega_1 = 0, omega_t = sqrt(t)
//   sum:         omega_1 = omega_2 = 0, omega_t = t/sqrt(t-2)
// Throws all_zero_weights when every positive-variance term is annihilated.
std::vector<double> realize_weights(const weight_scheme& scheme, indicator_kind kind,
                                    std::size_t T);

} // namespace recordcpd
