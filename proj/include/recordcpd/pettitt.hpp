#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "recordcpd/errors.hpp"

namespace recordcpd {

// Rank-based AMOC test for a location shift, used as a baseline against
// the record statistics. U_t = 2 sum_{i<=t} r_i - t(T+1) with midranks,
// K_P = max |U_t|, and the usual tail bound p = min(1, 2 exp(-6 K_P^2 /
// (T^3 + T^2))).
struct pettitt_result {
    std::vector<double> u;
    double k = 0.0;
    std::size_t that_index = 1; // 1-based, smallest argmax of |U|
    double pvalue = 1.0;
};

pettitt_result pettitt(std::span<const double> series);

} // namespace recordcpd
