#ifndef IBCRB_RNG_HPP
#define IBCRB_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

#include "ibcrb/errors.hpp"

namespace ibcrb {

// Counter-style seeded generator for reproducible Monte Carlo.
//
// A stream is fully determined by (seed, stream_id); trial t of a sweep owns
// stream (seed, t), so results do not depend on how trials are scheduled
// across workers. The engine is xoshiro256++ keyed through splitmix64, chosen
// over <random> distributions because their output is implementation-defined
// and output files must be bit-reproducible for a given binary.
//
// The draw order of every sampler built on top of this class is part of the
// reproducibility contract and must not be reordered.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_id_(stream_id) {
        std::uint64_t key = seed;
        const std::uint64_t mixed = splitmix64_next(key);
        key = mixed ^ (0xD1B54A32D192ED03ULL * (stream_id + 1));
        for (auto& word : state_) {
            word = splitmix64_next(key);
        }
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    static constexpr const char* algorithm() { return "xoshiro256++"; }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on the open interval (0, 1); never returns an endpoint, so it
    // is safe inside logs.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard real normal, Box-Muller. The two uniforms are drawn in a fixed
    // sequence on purpose.
    double normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(k_two_pi * u2);
    }

    // Circular complex normal with E[|z|^2] = 1, i.e. real and imaginary
    // parts are independent N(0, 1/2).
    std::complex<double> complex_normal() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));
        const double phi = k_two_pi * u2;
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    // Gamma(shape, scale 1), Marsaglia-Tsang squeeze with the usual
    // power-of-uniform boost for shape < 1.
    double gamma(double shape) {
        if (!(shape > 0.0)) {
            throw InvalidDegreesOfFreedom("gamma shape must be positive, got " +
                                          std::to_string(shape));
        }
        if (shape < 1.0) {
            const double g = gamma(shape + 1.0);
            const double u = uniform();
            return g * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / (3.0 * std::sqrt(d));
        for (;;) {
            double x = 0.0;
            double v = 0.0;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) {
                return d * v;
            }
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
                return d * v;
            }
        }
    }

private:
    static constexpr double k_two_pi = 6.283185307179586476925286766559;

    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64_next(std::uint64_t& state) {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_[4] = {};
    std::uint64_t seed_ = 0;
    std::uint64_t stream_id_ = 0;
};

} // namespace ibcrb

#endif
