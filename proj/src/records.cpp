#include "recordcpd/records.hpp"

#include <cmath>

namespace recordcpd {

const char* to_string(indicator_kind k) {
    switch (k) {
    case indicator_kind::upper: return "upper";
    case indicator_kind::lower: return "lower";
    case indicator_kind::diff: return "diff";
    case indicator_kind::sum: return "sum";
    }
    return "?";
}

indicator_kind indicator_kind_from_string(const std::string& s) {
    if (s == "upper") return indicator_kind::upper;
    if (s == "lower") return indicator_kind::lower;
    if (s == "diff") return indicator_kind::diff;
    if (s == "sum") return indicator_kind::sum;
    throw config_error("unknown indicator kind: " + s);
}

const char* to_string(weight_rule r) {
    switch (r) {
    case weight_rule::none: return "none";
    case weight_rule::inverse_sd: return "invsd";
    case weight_rule::linear: return "linear";
    case weight_rule::custom: return "custom";
    }
    return "?";
}

void null_moments(indicator_kind kind, std::size_t T, std::vector<double>& mean0,
                  std::vector<double>& var0) {
    if (T < 2) throw too_short("null_moments: T must be >= 2");
    mean0.assign(T, 0.0);
    var0.assign(T, 0.0);
    switch (kind) {
    case indicator_kind::upper:
    case indicator_kind::lower:
        mean0[0] = 1.0;
        for (std::size_t i = 1; i < T; ++i) {
            const double t = static_cast<double>(i + 1);
            mean0[i] = 1.0 / t;
            var0[i] = (1.0 / t) * (1.0 - 1.0 / t);
        }
        break;
    case indicator_kind::diff:
        // d_1 = 0 with certainty
        for (std::size_t i = 1; i < T; ++i) {
            const double t = static_cast<double>(i + 1);
            var0[i] = 2.0 / t;
        }
        break;
    case indicator_kind::sum:
        mean0[0] = 2.0;
        for (std::size_t i = 1; i < T; ++i) {
            const double t = static_cast<double>(i + 1);
            mean0[i] = 2.0 / t;
            var0[i] = (2.0 / t) * (1.0 - 2.0 / t);
        }
        break;
    }
}

void record_indicators(std::span<const double> column, tie_policy ties,
                       std::vector<std::int8_t>& upper, std::vector<std::int8_t>& lower,
                       std::size_t* tie_count) {
    const std::size_t T = column.size();
    if (T < 2) throw too_short("record_indicators: need T >= 2 observations");
    upper.assign(T, 0);
    lower.assign(T, 0);
    upper[0] = 1;
    lower[0] = 1;
    double run_max = column[0];
    double run_min = column[0];
    for (std::size_t t = 1; t < T; ++t) {
        const double x = column[t];
        if (x == run_max || x == run_min) {
            if (ties == tie_policy::error)
                throw ties_detected("record_indicators: observation at t=" +
                                    std::to_string(t + 1) + " ties the running extremum");
            if (tie_count) ++*tie_count;
        }
        if (x > run_max) {
            upper[t] = 1;
            run_max = x;
        }
        if (x < run_min) {
            lower[t] = 1;
            run_min = x;
        }
    }
}

namespace {

indicator_sequence from_upper_lower(indicator_kind kind, std::vector<std::int8_t>& up,
                                    std::vector<std::int8_t>& lo, std::size_t tie_count) {
    indicator_sequence seq;
    seq.kind = kind;
    seq.tie_count = tie_count;
    const std::size_t T = up.size();
    switch (kind) {
    case indicator_kind::upper: seq.values = std::move(up); break;
    case indicator_kind::lower: seq.values = std::move(lo); break;
    case indicator_kind::diff:
        seq.values.resize(T);
        for (std::size_t t = 0; t < T; ++t)
            seq.values[t] = static_cast<std::int8_t>(up[t] - lo[t]);
        break;
    case indicator_kind::sum:
        seq.values.resize(T);
        for (std::size_t t = 0; t < T; ++t)
            seq.values[t] = static_cast<std::int8_t>(up[t] + lo[t]);
        break;
    }
    null_moments(kind, T, seq.mean0, seq.var0);
    return seq;
}

} // namespace

indicator_sequence compute_indicators(std::span<const double> column, indicator_kind kind,
                                      const indicator_policies& policies) {
    std::vector<std::int8_t> up, lo;
    std::size_t tie_count = 0;
    record_indicators(column, policies.ties, up, lo, &tie_count);
    return from_upper_lower(kind, up, lo, tie_count);
}

indicator_sequence compute_indicators(std::span<const double> column,
                                      std::span<const std::uint8_t> missing_mask,
                                      indicator_kind kind,
                                      const indicator_policies& policies) {
    bool any_missing = false;
    for (auto f : missing_mask)
        if (f) { any_missing = true; break; }
    if (!any_missing) return compute_indicators(column, kind, policies);
    if (policies.missing == missing_policy::error)
        throw missing_data("compute_indicators: column contains missing entries");
    std::vector<double> compressed;
    compressed.reserve(column.size());
    for (std::size_t t = 0; t < column.size(); ++t)
        if (!missing_mask[t]) compressed.push_back(column[t]);
    if (compressed.size() < 2)
        throw too_short("compute_indicators: fewer than 2 non-missing observations");
    return compute_indicators(compressed, kind, policies);
}

std::vector<double> realize_weights(const weight_scheme& scheme, indicator_kind kind,
                                    std::size_t T) {
    if (T < 2) throw too_short("realize_weights: T must be >= 2");
    std::vector<double> w(T, 0.0);
    switch (scheme.rule) {
    case weight_rule::none:
        w.assign(T, 1.0);
        break;
    case weight_rule::linear:
        for (std::size_t i = 0; i < T; ++i) w[i] = static_cast<double>(i);
        break;
    case weight_rule::inverse_sd:
        switch (kind) {
        case indicator_kind::upper:
        case indicator_kind::lower:
            for (std::size_t i = 1; i < T; ++i) {
                const double t = static_cast<double>(i + 1);
                w[i] = t / std::sqrt(t - 1.0);
            }
            break;
        case indicator_kind::diff:
            for (std::size_t i = 1; i < T; ++i)
                w[i] = std::sqrt(static_cast<double>(i + 1));
            break;
        case indicator_kind::sum:
            for (std::size_t i = 2; i < T; ++i) {
                const double t = static_cast<double>(i + 1);
                w[i] = t / std::sqrt(t - 2.0);
            }
            break;
        }
        break;
    case weight_rule::custom:
        if (scheme.custom.size() != T)
            throw config_error("custom weights: expected length " + std::to_string(T) +
                               ", got " + std::to_string(scheme.custom.size()));
        for (double v : scheme.custom)
            if (!(v >= 0.0))
                throw config_error("custom weights must be nonnegative and finite");
        w = scheme.custom;
        break;
    }

    // At least one positive-variance term must survive, else sigma_T = 0.
    std::vector<double> mean0, var0;
    null_moments(kind, T, mean0, var0);
    bool alive = false;
    for (std::size_t i = 0; i < T; ++i)
        if (w[i] > 0.0 && var0[i] > 0.0) { alive = true; break; }
    if (!alive)
        throw all_zero_weights("realize_weights: scheme annihilates every positive-variance term");
    return w;
}

} // namespace recordcpd
