#pragma once

#include <cmath>
#include <cstdint>

namespace hbstat {

// SplitMix64 (Steele, Lea, Flood 2014). State advances by a fixed odd
// increment and the output is a bijective finalizer of the counter, so
// independent substreams can be derived by re-keying the state. All
// randomness in this project flows through this generator to keep results
// bit-reproducible across platforms and thread counts.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). Lemire's multiply-and-reject method.
    std::uint64_t next_bounded(std::uint64_t bound) {
        unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>(next_u64()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Standard normal deviate, Box-Muller. No rejection loop, so the
    /// number of consumed uniforms per call is fixed.
    double next_normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = next_double();
        double u2 = next_double();
        // guard against log(0)
        while (u1 <= 0.0) u1 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        cached_ = r * std::sin(theta);
        have_cached_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

/// Mixes (seed, stream index) into a fresh SplitMix64 key, giving
/// order-independent per-trial substreams for parallel resampling.
inline std::uint64_t substream_key(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed ^ (0xA0761D6478BD642FULL + stream * 0xE7037ED1A0B428DBULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
    return SplitMix64(substream_key(seed, stream));
}

} // namespace hbstat
