#include "recordcpd/runtest.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "recordcpd/kolmogorov.hpp"
#include "recordcpd/multiseries.hpp"

namespace recordcpd {

const char* to_string(pvalue_mode m) {
    return m == pvalue_mode::asymptotic ? "asymptotic" : "monte-carlo";
}

test_result run_test(const series_matrix& matrix, const test_request& request,
                     const std::vector<int>& years) {
    if (request.mode == pvalue_mode::asymptotic && request.scheme.rule != weight_rule::none)
        throw config_error("asymptotic p-values require the unweighted statistic; "
                           "use Monte Carlo for weighted schemes");
    if (!years.empty() && years.size() != matrix.rows())
        throw config_error("run_test: year labels must match the number of rows");

    test_result out;
    out.T = matrix.rows();
    out.M = matrix.cols();
    out.request = request;
    out.sample = pooled_bridge(matrix, request.kind, request.scheme, request.policies);
    out.statistic = out.sample.k;
    out.that_index = out.sample.that_index;
    if (!years.empty()) out.that_year = years[out.that_index - 1];
    out.threshold95 = kolmogorov::quantile(0.95);
    if (request.include_fisher) out.fisher = fisher_transform(out.statistic, out.T);

    out.pvalue_source = request.mode;
    if (request.mode == pvalue_mode::asymptotic) {
        out.pvalue = kolmogorov::survival(out.statistic);
    } else {
        const auto null = simulate_null_statistic(request.kind, request.scheme, out.T, out.M,
                                                  request.mc);
        out.pvalue = mc_pvalue(out.statistic, null);
    }
    return out;
}

namespace {

std::string fmt(double v, const char* spec = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

} // namespace

std::string to_json(const test_result& r) {
    nlohmann::json j;
    j["statistic"] = r.statistic;
    if (r.fisher) j["fisher"] = *r.fisher;
    j["pvalue"] = r.pvalue;
    j["pvalue_source"] = to_string(r.pvalue_source);
    j["changepoint_index"] = r.that_index;
    if (r.that_year) j["changepoint_year"] = *r.that_year;
    j["T"] = r.T;
    j["M"] = r.M;
    j["threshold95"] = r.threshold95;
    j["config"] = {
        {"kind", to_string(r.request.kind)},
        {"weights", to_string(r.request.scheme.rule)},
        {"pvalue_mode", to_string(r.request.mode)},
    };
    if (r.pvalue_source == pvalue_mode::monte_carlo) {
        j["config"]["replicates"] = r.request.mc.replicates;
        j["config"]["seed"] = r.request.mc.seed;
        j["config"]["chunks"] = r.request.mc.parallel_chunks;
    }
    j["bridge"] = {{"nu", r.sample.nu}, {"b", r.sample.b}};
    return j.dump(2);
}

std::string to_table(const test_result& r) {
    std::ostringstream os;
    os << "record changepoint test\n";
    os << "  kind:        " << to_string(r.request.kind) << "\n";
    os << "  weights:     " << to_string(r.request.scheme.rule) << "\n";
    os << "  T x M:       " << r.T << " x " << r.M << "\n";
    os << "  statistic:   " << fmt(r.statistic) << "\n";
    if (r.fisher) os << "  fisher:      " << fmt(*r.fisher) << " (experimental)\n";
    os << "  p-value:     " << fmt(r.pvalue, "%.4g") << " (" << to_string(r.pvalue_source);
    if (r.pvalue_source == pvalue_mode::monte_carlo)
        os << ", " << r.request.mc.replicates << " replicates, seed " << r.request.mc.seed;
    os << ")\n";
    os << "  changepoint: t = " << r.that_index;
    if (r.that_year) os << " (year " << *r.that_year << ")";
    os << "\n";
    return os.str();
}

std::string to_plot_csv(const test_result& r, const std::vector<int>& years) {
    std::string out = "t,year,nu,abs_b,threshold\n";
    for (std::size_t t = 0; t < r.sample.nu.size(); ++t) {
        out += std::to_string(t + 1);
        out += ',';
        if (!years.empty() && t < years.size()) out += std::to_string(years[t]);
        out += ',' + fmt(r.sample.nu[t], "%.10g");
        out += ',' + fmt(std::fabs(r.sample.b[t]), "%.10g");
        out += ',' + fmt(r.threshold95, "%.10g");
        out += '\n';
    }
    return out;
}

} // namespace recordcpd
