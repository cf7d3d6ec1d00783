#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace subfpt {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
}  // namespace detail

/**
 * @brief Reproducible random stream keyed by (seed, streamId).
 *
 * Identical keys give bit-identical draws; distinct stream ids give
 * decorrelated mt19937_64 states.
 */
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t streamId)
        : seed_(seed), id_(streamId), eng_(detail::splitmix64(seed ^ detail::splitmix64(streamId + 0x632be59bd9b4e019ULL))) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return id_; }
    std::mt19937_64& engine() { return eng_; }

    /// Uniform on the open interval (0,1).
    double uniform() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }
    double exponential() { return -std::log(uniform()); }
    double normal() { return normal_(eng_); }

    long poisson(double mean) {
        if (mean <= 0.0) return 0;
        std::poisson_distribution<long> d(mean);
        return d(eng_);
    }
    double gamma(double shape, double scale) {
        std::gamma_distribution<double> d(shape, scale);
        return d(eng_);
    }

    /// Independent substream derived from this key; does not advance this stream.
    RngStream child(std::uint64_t tag) const {
        return RngStream(detail::splitmix64(seed_ + 0x3c6ef372fe94f82bULL * (tag + 1)), id_);
    }

private:
    std::uint64_t seed_;
    std::uint64_t id_;
    std::mt19937_64 eng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace subfpt
