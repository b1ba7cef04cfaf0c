#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "recordcpd/errors.hpp"

namespace recordcpd {

// T x M grid of observations, rows = time, columns = subseries.
// Entries may be flagged missing; every non-missing entry must be finite.
class series_matrix {
  public:
    series_matrix() = default;

    series_matrix(std::size_t T, std::size_t M)
        : T_(T), M_(M), values_(T * M, 0.0), missing_(T * M, 0) {
        check_shape();
    }

    // Single complete column.
    explicit series_matrix(std::vector<double> column)
        : T_(column.size()), M_(1), values_(std::move(column)), missing_(T_, 0) {
        check_shape();
        check_finite();
    }

    series_matrix(std::size_t T, std::size_t M, std::vector<double> values,
                  std::vector<std::uint8_t> missing)
        : T_(T), M_(M), values_(std::move(values)), missing_(std::move(missing)) {
        check_shape();
        if (values_.size() != T_ * M_ || missing_.size() != T_ * M_)
            throw data_error("series_matrix: value/mask size does not match T*M");
        check_finite();
    }

    std::size_t rows() const { return T_; }
    std::size_t cols() const { return M_; }

    double& at(std::size_t t, std::size_t m) { return values_[t * M_ + m]; }
    double at(std::size_t t, std::size_t m) const { return values_[t * M_ + m]; }

    bool is_missing(std::size_t t, std::size_t m) const { return missing_[t * M_ + m] != 0; }
    void set_missing(std::size_t t, std::size_t m, bool miss = true) {
        missing_[t * M_ + m] = miss ? 1 : 0;
    }

    bool has_missing() const {
        for (auto f : missing_)
            if (f) return true;
        return false;
    }

    std::vector<double> column(std::size_t m) const {
        std::vector<double> out(T_);
        for (std::size_t t = 0; t < T_; ++t) out[t] = values_[t * M_ + m];
        return out;
    }

    std::vector<std::uint8_t> column_mask(std::size_t m) const {
        std::vector<std::uint8_t> out(T_);
        for (std::size_t t = 0; t < T_; ++t) out[t] = missing_[t * M_ + m];
        return out;
    }

    const std::vector<double>& values() const { return values_; }
    const std::vector<std::uint8_t>& mask() const { return missing_; }

  private:
    void check_shape() const {
        if (T_ < 2) throw too_short("series_matrix: T must be >= 2");
        if (M_ < 1) throw data_error("series_matrix: M must be >= 1");
    }
    void check_finite() const {
        for (std::size_t i = 0; i < values_.size(); ++i)
            if (!missing_[i] && !std::isfinite(values_[i]))
                throw data_error("series_matrix: non-finite entry present");
    }

    std::size_t T_ = 0;
    std::size_t M_ = 0;
    std::vector<double> values_;
    std::vector<std::uint8_t> missing_;
};

} // namespace recordcpd
