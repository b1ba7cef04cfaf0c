#include "recordcpd/simlab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <tuple>

#include "recordcpd/bridge.hpp"
#include "recordcpd/kolmogorov.hpp"
#include "recordcpd/montecarlo.hpp"
#include "recordcpd/parallel.hpp"
#include "recordcpd/rng.hpp"

namespace recordcpd {
namespace simlab {

namespace {
constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();
}

const char* to_string(scenario_id id) {
    switch (id) {
    case scenario_id::A: return "A";
    case scenario_id::B: return "B";
    case scenario_id::C: return "C";
    case scenario_id::D: return "D";
    }
    return "?";
}

scenario_id scenario_id_from_string(const std::string& s) {
    if (s == "A" || s == "a") return scenario_id::A;
    if (s == "B" || s == "b") return scenario_id::B;
    if (s == "C" || s == "c") return scenario_id::C;
    if (s == "D" || s == "d") return scenario_id::D;
    throw invalid_scenario("unknown scenario id: " + s);
}

namespace {

void validate(const scenario& sc) {
    if (sc.T < 2) throw invalid_scenario("scenario: T must be >= 2");
    if (sc.M < 1) throw invalid_scenario("scenario: M must be >= 1");
    if (sc.t0 < 1 || sc.t0 >= sc.T) throw invalid_scenario("scenario: need 1 <= t0 < T");
    if (sc.id == scenario_id::D && !(sc.tau > 0.0 && sc.tau < 1.0))
        throw invalid_scenario("scenario D: tau must be in (0,1)");
}

// Fill `buf` column-major (buf[m*T + t]) drawing in the same (t, m)
// order as generate(), so a harness trial equals a generate() call.
void fill_scenario(const scenario& sc, rng_stream& stream, std::vector<double>& buf) {
    const std::size_t T = sc.T;
    const std::size_t M = sc.M;
    buf.resize(T * M);
    switch (sc.id) {
    case scenario_id::A:
    case scenario_id::C:
        for (std::size_t t = 0; t < T; ++t) {
            const double after = static_cast<double>(t + 1) - static_cast<double>(sc.t0);
            double mu = 0.0;
            if (after > 0.0) mu = sc.id == scenario_id::A ? sc.theta * after : sc.theta;
            for (std::size_t m = 0; m < M; ++m) buf[m * T + t] = mu + stream.normal();
        }
        break;
    case scenario_id::B:
        for (std::size_t t = 0; t < T; ++t) {
            const double after = static_cast<double>(t + 1) - static_cast<double>(sc.t0);
            const double sigma = after > 0.0 ? 1.0 + sc.theta * after : 1.0;
            for (std::size_t m = 0; m < M; ++m) buf[m * T + t] = sigma * stream.normal();
        }
        break;
    case scenario_id::D:
        for (std::size_t t = 0; t < T; ++t) {
            const double after = static_cast<double>(t + 1) - static_cast<double>(sc.t0);
            const double mu = after > 0.0 ? sc.theta * after : 0.0;
            for (std::size_t m = 0; m < M; ++m) {
                const double u = stream.uniform();
                buf[m * T + t] = u <= sc.tau ? stream.normal_below_quantile(sc.tau)
                                             : mu + stream.normal_above_quantile(sc.tau);
            }
        }
        break;
    }
}

} // namespace

series_matrix generate(const scenario& sc, std::uint64_t seed) {
    validate(sc);
    auto stream = rng_stream::for_index(seed, 0);
    std::vector<double> buf;
    fill_scenario(sc, stream, buf);
    series_matrix out(sc.T, sc.M);
    for (std::size_t t = 0; t < sc.T; ++t)
        for (std::size_t m = 0; m < sc.M; ++m) out.at(t, m) = buf[m * sc.T + t];
    return out;
}

statistic_spec statistic_from_label(const std::string& label) {
    statistic_spec spec;
    spec.label = label;
    std::string base = label;
    std::string suffix;
    if (const auto caret = label.find('^'); caret != std::string::npos) {
        base = label.substr(0, caret);
        suffix = label.substr(caret + 1);
    }
    if (base == "N")
        spec.kind = indicator_kind::upper;
    else if (base == "d")
        spec.kind = indicator_kind::diff;
    else if (base == "s")
        spec.kind = indicator_kind::sum;
    else
        throw config_error("unknown statistic label: " + label);
    if (suffix.empty())
        spec.rule = weight_rule::none;
    else if (suffix == "var")
        spec.rule = weight_rule::inverse_sd;
    else if (suffix == "linear")
        spec.rule = weight_rule::linear;
    else
        throw config_error("unknown statistic label: " + label);
    return spec;
}

std::vector<statistic_spec> default_statistics() {
    std::vector<statistic_spec> out;
    for (const char* label :
         {"N", "N^var", "N^linear", "d", "d^var", "d^linear", "s", "s^var", "s^linear"})
        out.push_back(statistic_from_label(label));
    return out;
}

namespace {

// Per-statistic constants hoisted out of the trial loop.
struct statistic_eval {
    statistic_spec spec;
    std::vector<double> weights;
    std::vector<double> mean0;
    std::vector<double> var0;
};

statistic_eval make_eval(const statistic_spec& spec, std::size_t T) {
    statistic_eval ev;
    ev.spec = spec;
    ev.weights = realize_weights(weight_scheme{spec.rule, {}}, spec.kind, T);
    null_moments(spec.kind, T, ev.mean0, ev.var0);
    return ev;
}

// Scratch space reused across the trials of one chunk.
struct trial_scratch {
    std::vector<double> data;   // column-major T x M
    std::vector<double> sum_up; // per-t sums over columns, exact integers
    std::vector<double> sum_lo;
    std::vector<double> mean;
};

// Upper/lower record sums across the M columns of one trial.
void indicator_sums(const std::vector<double>& data, std::size_t T, std::size_t M,
                    std::vector<double>& sum_up, std::vector<double>& sum_lo) {
    sum_up.assign(T, 0.0);
    sum_lo.assign(T, 0.0);
    for (std::size_t m = 0; m < M; ++m) {
        const double* col = data.data() + m * T;
        sum_up[0] += 1.0;
        sum_lo[0] += 1.0;
        double run_max = col[0];
        double run_min = col[0];
        for (std::size_t t = 1; t < T; ++t) {
            const double x = col[t];
            if (x > run_max) {
                sum_up[t] += 1.0;
                run_max = x;
            }
            if (x < run_min) {
                sum_lo[t] += 1.0;
                run_min = x;
            }
        }
    }
}

// K_T and changepoint index of one statistic given the indicator sums.
bridge_sample eval_statistic(const statistic_eval& ev, const trial_scratch& s, std::size_t T,
                             std::size_t M, std::vector<double>& mean) {
    mean.resize(T);
    const double m_count = static_cast<double>(M);
    switch (ev.spec.kind) {
    case indicator_kind::upper:
        for (std::size_t t = 0; t < T; ++t) mean[t] = s.sum_up[t] / m_count;
        break;
    case indicator_kind::lower:
        for (std::size_t t = 0; t < T; ++t) mean[t] = s.sum_lo[t] / m_count;
        break;
    case indicator_kind::diff:
        for (std::size_t t = 0; t < T; ++t) mean[t] = (s.sum_up[t] - s.sum_lo[t]) / m_count;
        break;
    case indicator_kind::sum:
        for (std::size_t t = 0; t < T; ++t) mean[t] = (s.sum_up[t] + s.sum_lo[t]) / m_count;
        break;
    }
    return bridge_pooled_core(mean, ev.mean0, ev.var0, m_count, ev.weights, ev.spec.kind,
                              ev.spec.rule);
}

std::uint64_t threshold_seed(std::uint64_t master, const statistic_spec& spec, std::size_t T,
                             std::size_t M) {
    std::uint64_t h = splitmix64(master + 0x7E57u);
    h = splitmix64(h + static_cast<std::uint64_t>(spec.kind));
    h = splitmix64(h + static_cast<std::uint64_t>(spec.rule));
    h = splitmix64(h + T);
    h = splitmix64(h + M);
    return h;
}

// Critical value for one statistic: asymptotic for unweighted, Monte
// Carlo otherwise. Cached per (kind, rule, T, M) so identical
// configurations share thresholds regardless of grid order.
class threshold_cache {
  public:
    threshold_cache(std::uint64_t master_seed, unsigned chunks, std::size_t replicates)
        : master_(master_seed), chunks_(chunks), replicates_(replicates) {}

    double critical(const statistic_spec& spec, std::size_t T, std::size_t M, double alpha) {
        if (spec.rule == weight_rule::none) return kolmogorov::quantile(1.0 - alpha);
        const key k{static_cast<int>(spec.kind), static_cast<int>(spec.rule), T, M,
                    alpha};
        auto it = cache_.find(k);
        if (it != cache_.end()) return it->second;
        const auto& null = null_for(spec, T, M);
        const double c = mc_critical_value(null, alpha);
        cache_.emplace(k, c);
        return c;
    }

  private:
    using key = std::tuple<int, int, std::size_t, std::size_t, double>;
    using null_key = std::tuple<int, int, std::size_t, std::size_t>;

    const null_sample& null_for(const statistic_spec& spec, std::size_t T, std::size_t M) {
        const null_key k{static_cast<int>(spec.kind), static_cast<int>(spec.rule), T, M};
        auto it = nulls_.find(k);
        if (it != nulls_.end()) return it->second;
        monte_carlo_config cfg;
        cfg.replicates = replicates_;
        cfg.seed = threshold_seed(master_, spec, T, M);
        cfg.parallel_chunks = chunks_;
        auto null = simulate_null_statistic(spec.kind, weight_scheme{spec.rule, {}}, T, M, cfg);
        return nulls_.emplace(k, std::move(null)).first->second;
    }

    std::uint64_t master_;
    unsigned chunks_;
    std::size_t replicates_;
    std::map<null_key, null_sample> nulls_;
    std::map<key, double> cache_;
};

// Evaluate all statistics over `trials` replicates of `sc`, recording
// K_T and the changepoint index per (trial, statistic).
void run_trials(const scenario& sc, const std::vector<statistic_eval>& evals,
                std::size_t trials, std::uint64_t seed, unsigned chunks,
                std::vector<double>& k_out, std::vector<std::uint32_t>& that_out) {
    const std::size_t S = evals.size();
    k_out.assign(trials * S, 0.0);
    that_out.assign(trials * S, 0);
    run_chunked(trials, chunks, [&](std::size_t begin, std::size_t end) {
        trial_scratch scratch;
        std::vector<double> mean;
        for (std::size_t trial = begin; trial < end; ++trial) {
            auto stream = rng_stream::for_index(seed, trial);
            fill_scenario(sc, stream, scratch.data);
            indicator_sums(scratch.data, sc.T, sc.M, scratch.sum_up, scratch.sum_lo);
            for (std::size_t s = 0; s < S; ++s) {
                const auto sample = eval_statistic(evals[s], scratch, sc.T, sc.M, mean);
                k_out[trial * S + s] = sample.k;
                that_out[trial * S + s] = static_cast<std::uint32_t>(sample.that_index);
            }
        }
    });
}

struct quartiles {
    double q1 = nan_v, median = nan_v, q3 = nan_v;
    std::size_t n = 0;
};

quartiles summarize(std::vector<double>& v) {
    quartiles q;
    q.n = v.size();
    if (v.empty()) return q;
    std::sort(v.begin(), v.end());
    auto type7 = [&](double p) {
        const double h = p * static_cast<double>(v.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(h);
        if (lo + 1 >= v.size()) return v.back();
        return v[lo] + (h - static_cast<double>(lo)) * (v[lo + 1] - v[lo]);
    };
    q.q1 = type7(0.25);
    q.median = type7(0.5);
    q.q3 = type7(0.75);
    return q;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string experiment_report::to_csv() const {
    std::string out =
        "statistic,scenario,T,M,t0,theta,alpha,rejection_rate,est_q1,est_median,est_q3,"
        "est_count,filter,trials,seed\n";
    for (const auto& r : rows) {
        out += r.statistic;
        out += ',' + r.scenario;
        out += ',' + std::to_string(r.T);
        out += ',' + std::to_string(r.M);
        out += ',' + (r.t0 ? std::to_string(r.t0) : std::string());
        out += ',' + format_double(r.theta);
        out += ',' + format_double(r.alpha);
        out += ',' + format_double(r.rejection_rate);
        out += ',' + format_double(r.est_q1);
        out += ',' + format_double(r.est_median);
        out += ',' + format_double(r.est_q3);
        out += ',' + std::to_string(r.est_count);
        out += ',';
        out += r.rejected_only ? "rejected" : "all";
        out += ',' + std::to_string(trials);
        out += ',' + std::to_string(seed);
        out += '\n';
    }
    return out;
}

experiment_report run_size(const std::vector<statistic_spec>& statistics, std::size_t T,
                           std::size_t M, const std::vector<double>& alphas,
                           std::size_t trials, std::uint64_t seed, unsigned parallel_chunks,
                           std::size_t mc_threshold_replicates) {
    if (trials < 1) throw config_error("run_size: trials must be >= 1");
    std::vector<statistic_eval> evals;
    for (const auto& s : statistics) evals.push_back(make_eval(s, T));

    threshold_cache thresholds(seed, parallel_chunks, mc_threshold_replicates);
    const std::size_t S = evals.size();
    std::vector<double> crit(S * alphas.size());
    for (std::size_t s = 0; s < S; ++s)
        for (std::size_t a = 0; a < alphas.size(); ++a)
            crit[s * alphas.size() + a] = thresholds.critical(evals[s].spec, T, M, alphas[a]);

    scenario null_sc;
    null_sc.id = scenario_id::A;
    null_sc.T = T;
    null_sc.M = M;
    null_sc.t0 = 1;
    null_sc.theta = 0.0;
    validate(null_sc);

    std::vector<double> k_values;
    std::vector<std::uint32_t> that_values;
    run_trials(null_sc, evals, trials, seed, parallel_chunks, k_values, that_values);

    experiment_report report;
    report.trials = trials;
    report.seed = seed;
    for (std::size_t s = 0; s < S; ++s) {
        for (std::size_t a = 0; a < alphas.size(); ++a) {
            std::size_t rejected = 0;
            const double c = crit[s * alphas.size() + a];
            for (std::size_t trial = 0; trial < trials; ++trial)
                if (k_values[trial * S + s] > c) ++rejected;
            report_row row;
            row.statistic = evals[s].spec.label;
            row.scenario = "null";
            row.T = T;
            row.M = M;
            row.t0 = 0;
            row.theta = nan_v;
            row.alpha = alphas[a];
            row.rejection_rate = static_cast<double>(rejected) / static_cast<double>(trials);
            row.est_q1 = row.est_median = row.est_q3 = nan_v;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

experiment_report run_power(const std::vector<statistic_spec>& statistics,
                            const std::vector<scenario>& scenarios, double alpha,
                            std::size_t trials, std::uint64_t seed, unsigned parallel_chunks,
                            std::size_t mc_threshold_replicates) {
    if (trials < 1) throw config_error("run_power: trials must be >= 1");
    threshold_cache thresholds(seed, parallel_chunks, mc_threshold_replicates);

    experiment_report report;
    report.trials = trials;
    report.seed = seed;

    std::vector<double> k_values;
    std::vector<std::uint32_t> that_values;
    for (const auto& sc : scenarios) {
        validate(sc);
        std::vector<statistic_eval> evals;
        for (const auto& s : statistics) evals.push_back(make_eval(s, sc.T));
        run_trials(sc, evals, trials, seed, parallel_chunks, k_values, that_values);
        const std::size_t S = evals.size();
        for (std::size_t s = 0; s < S; ++s) {
            const double c = thresholds.critical(evals[s].spec, sc.T, sc.M, alpha);
            std::size_t rejected = 0;
            for (std::size_t trial = 0; trial < trials; ++trial)
                if (k_values[trial * S + s] > c) ++rejected;
            report_row row;
            row.statistic = evals[s].spec.label;
            row.scenario = to_string(sc.id);
            row.T = sc.T;
            row.M = sc.M;
            row.t0 = sc.t0;
            row.theta = sc.theta;
            row.alpha = alpha;
            row.rejection_rate = static_cast<double>(rejected) / static_cast<double>(trials);
            row.est_q1 = row.est_median = row.est_q3 = nan_v;
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

experiment_report run_estimation(const std::vector<statistic_spec>& statistics,
                                 const std::vector<scenario>& scenarios, std::size_t trials,
                                 std::uint64_t seed, unsigned parallel_chunks,
                                 std::optional<double> rejected_only_alpha,
                                 std::size_t mc_threshold_replicates) {
    if (trials < 1) throw config_error("run_estimation: trials must be >= 1");
    threshold_cache thresholds(seed, parallel_chunks, mc_threshold_replicates);

    experiment_report report;
    report.trials = trials;
    report.seed = seed;

    std::vector<double> k_values;
    std::vector<std::uint32_t> that_values;
    for (const auto& sc : scenarios) {
        validate(sc);
        std::vector<statistic_eval> evals;
        for (const auto& s : statistics) evals.push_back(make_eval(s, sc.T));
        run_trials(sc, evals, trials, seed, parallel_chunks, k_values, that_values);
        const std::size_t S = evals.size();
        for (std::size_t s = 0; s < S; ++s) {
            double c = -1.0;
            if (rejected_only_alpha)
                c = thresholds.critical(evals[s].spec, sc.T, sc.M, *rejected_only_alpha);
            std::vector<double> estimates;
            estimates.reserve(trials);
            for (std::size_t trial = 0; trial < trials; ++trial)
                if (!rejected_only_alpha || k_values[trial * S + s] > c)
                    estimates.push_back(static_cast<double>(that_values[trial * S + s]));
            const auto q = summarize(estimates);
            report_row row;
            row.statistic = evals[s].spec.label;
            row.scenario = to_string(sc.id);
            row.T = sc.T;
            row.M = sc.M;
            row.t0 = sc.t0;
            row.theta = sc.theta;
            row.alpha = rejected_only_alpha ? *rejected_only_alpha : nan_v;
            row.rejection_rate = nan_v;
            row.est_q1 = q.q1;
            row.est_median = q.median;
            row.est_q3 = q.q3;
            row.est_count = q.n;
            row.rejected_only = rejected_only_alpha.has_value();
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

} // namespace simlab
} // namespace recordcpd
