#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace recordcpd {

// Phi and its inverse. The quantile uses a rational approximation
// refined by one Halley step, giving close to full double precision.
double normal_cdf(double x);
double normal_quantile(double p);

// splitmix64 step, used only to derive substream seeds.
std::uint64_t splitmix64(std::uint64_t z);

// One deterministic random stream. Every replicate/trial owns its own
// stream derived from (master seed, index), so results do not depend on
// how work is partitioned across threads.
class rng_stream {
  public:
    explicit rng_stream(std::uint64_t seed) : eng_(seed) {}

    static rng_stream for_index(std::uint64_t master_seed, std::uint64_t index) {
        return rng_stream(splitmix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL));
    }

    std::uint64_t raw() { return eng_(); }

    // Uniform strictly inside (0,1), 53-bit resolution.
    double uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

    double normal() { return normal_quantile(uniform()); }

    // Standard normal conditioned on being below / above the tau-quantile.
    double normal_below_quantile(double tau) { return normal_quantile(uniform() * tau); }
    double normal_above_quantile(double tau) {
        return normal_quantile(tau + uniform() * (1.0 - tau));
    }

    // Unbiased integer in [0, n).
    std::uint64_t bounded(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = eng_();
            if (r >= threshold) return r % n;
        }
    }

    // Fisher-Yates permutation of 1..perm.size().
    void fill_permutation(std::vector<std::int32_t>& perm) {
        const std::size_t n = perm.size();
        for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::int32_t>(i + 1);
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(bounded(i + 1));
            std::swap(perm[i], perm[j]);
        }
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace recordcpd
