#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace dirtymac {

// Role-indexed substreams: one master seed, every signal role draws from its
// own deterministic stream, so a negative control can re-randomize one role in
// isolation and any single array is reproducible without generating the rest.
enum class Role : std::uint32_t {
    Message1 = 0,
    Message2,
    Dither1,
    Dither2,
    Interference1,
    Interference2,
    EstimationError1,
    EstimationError2,
    ChannelNoise,
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class Substream {
public:
    Substream(std::uint64_t master_seed, Role role)
            : gen_(stream_seed(master_seed, static_cast<std::uint32_t>(role))) {}

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform on [-width/2, width/2).
    double uniform_symmetric(double width) {
        return width * (uniform01() - 0.5);
    }

    // N(0, sigma^2) via Box-Muller; implementation-independent and
    // bit-reproducible for a fixed seed.
    double gaussian(double sigma) {
        if (has_spare_) {
            has_spare_ = false;
            return sigma * spare_;
        }
        // u1 in (0, 1] keeps the log finite
        double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
        double u2 = uniform01();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return sigma * r * std::cos(theta);
    }

private:
    static std::uint64_t stream_seed(std::uint64_t master, std::uint32_t role) {
        std::uint64_t s = master ^ (0xA5A5A5A500000000ULL + role);
        // two rounds to decorrelate adjacent roles
        splitmix64(s);
        return splitmix64(s);
    }

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace dirtymac
