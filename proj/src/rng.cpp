#include "rng.hpp"

#include <cmath>
#include <stdexcept>

namespace lgp {

namespace {

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream RngStream::derive(uint64_t master_seed, uint64_t index) {
    // Scramble (master, index) through splitmix64 so neighbouring indices
    // land in unrelated regions of the state space.
    uint64_t st = master_seed ^ rotl(index * 0xD1B54A32D192ED03ULL + 0x632BE59BD9B4E019ULL, 23);
    RngStream r;
    for (auto& w : r.s_) w = splitmix64(st);
    if ((r.s_[0] | r.s_[1] | r.s_[2] | r.s_[3]) == 0) r.s_[0] = 1;
    return r;
}

uint64_t RngStream::next_u64() {
    // xoshiro256++
    uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::uniform01() {
    double u = (next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
}

double RngStream::normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double RngStream::gamma(double shape) {
    if (!(shape > 0.0))
        throw std::domain_error("RngStream::gamma: shape must be positive");
    if (shape < 1.0) {
        // Boost a sub-unit shape: G(a) = G(a+1) U^{1/a}.
        double g = gamma(shape + 1.0);
        double u = uniform01();
        return g * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = uniform01();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double RngStream::log_inverse_gamma(double shape) {
    return -std::log(gamma(shape));
}

}  // namespace lgp
