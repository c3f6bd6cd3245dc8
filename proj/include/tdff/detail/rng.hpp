#ifndef TDFF_DETAIL_RNG_HPP
#define TDFF_DETAIL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tdff::detail {

// Deterministic RNG used everywhere randomness is needed. mt19937_64 is
// fully specified by the standard; the distribution transforms below are
// spelled out by hand because the std::*_distribution algorithms are
// implementation-defined and would break byte-identical reruns.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1): 53 mantissa bits.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), n >= 1. Rejection sampling keeps the
    /// distribution exact.
    std::uint64_t uniform_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

    /// Standard normal via Box-Muller; one spare value is cached.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// FNV-1a over a string, folded with a base seed. Used to derive
/// independent per-job seeds from one config seed so that results do not
/// depend on scheduling order or worker count.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::string_view id) {
    std::uint64_t h = 0xcbf29ce484222325ull ^ base;
    const auto mix = [&h](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
    };
    mix(tag);
    h ^= 0xff;
    h *= 0x100000001b3ull;
    mix(id);
    return h;
}

}  // namespace tdff::detail

#endif  // TDFF_DETAIL_RNG_HPP
