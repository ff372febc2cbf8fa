#pragma once

#include <cstdint>

namespace lgp {

// Keyed, reproducible random stream.  A stream is fully determined by
// (master seed, replica index); replicas can therefore be evaluated in any
// order or on any number of workers without changing the results.
class RngStream {
  public:
    static RngStream derive(uint64_t master_seed, uint64_t index);

    uint64_t next_u64();

    // Uniform on (0, 1), never returns 0 or 1.
    double uniform01();

    // Standard normal via Box-Muller (one variate per call).
    double normal();

    // Gamma(shape, 1) draw, Marsaglia-Tsang; shape > 0.
    double gamma(double shape);

    // log of an inverse-gamma(shape) variate, i.e. -log Gamma(shape) draw.
    double log_inverse_gamma(double shape);

  private:
    uint64_t s_[4] = {};
};

}  // namespace lgp
