#pragma once

#include <stdexcept>
#include <string>

namespace recordcpd {

// Base class for all library errors. The CLI maps usage/configuration
// errors to exit code 1 and data errors to exit code 2.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configuration / usage errors (exit code 1).
struct config_error : error {
    using error::error;
};
struct out_of_domain : config_error {
    using config_error::config_error;
};
struct invalid_scenario : config_error {
    using config_error::config_error;
};
struct invalid_indices : config_error {
    using config_error::config_error;
};

// Data errors (exit code 2).
struct data_error : error {
    using error::error;
};
struct too_short : data_error {
    using data_error::data_error;
};
struct ties_detected : data_error {
    using data_error::data_error;
};
struct missing_data : data_error {
    using data_error::data_error;
};
struct degenerate_variance : data_error {
    using data_error::data_error;
};
struct all_zero_weights : data_error {
    using data_error::data_error;
};
struct parse_error : data_error {
    parse_error(const std::string& what, std::size_t line)
        : data_error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    std::size_t line;
};
struct empty_input : data_error {
    using data_error::data_error;
};
struct insufficient_years : data_error {
    using data_error::data_error;
};
struct incomplete_year : data_error {
    using data_error::data_error;
};

} // namespace recordcpd
