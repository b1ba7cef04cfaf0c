#include "recordcpd/pettitt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace recordcpd {

pettitt_result pettitt(std::span<const double> series) {
    const std::size_t T = series.size();
    if (T < 2) throw too_short("pettitt: need T >= 2 observations");

    std::vector<std::size_t> order(T);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return series[a] < series[b]; });
    std::vector<double> rank(T);
    std::size_t i = 0;
    while (i < T) {
        std::size_t j = i;
        while (j + 1 < T && series[order[j + 1]] == series[order[i]]) ++j;
        const double r = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
        i = j + 1;
    }

    pettitt_result out;
    out.u.resize(T);
    double cum = 0.0;
    double best = -1.0;
    std::size_t best_t = 0;
    for (std::size_t t = 0; t < T; ++t) {
        cum += rank[t];
        out.u[t] = 2.0 * cum - static_cast<double>(t + 1) * static_cast<double>(T + 1);
        const double a = std::fabs(out.u[t]);
        if (a > best) {
            best = a;
            best_t = t;
        }
    }
    out.k = best;
    out.that_index = best_t + 1;
    const double tt = static_cast<double>(T);
    out.pvalue = std::min(1.0, 2.0 * std::exp(-6.0 * best * best / (tt * tt * tt + tt * tt)));
    return out;
}

} // namespace recordcpd
