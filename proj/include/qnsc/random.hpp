#pragma once

#include <cstdint>
#include <random>

namespace qnsc {

// Addressable RNG state: identical (seed, stream_id) pairs reproduce
// identical draw sequences. derive() gives statistically independent
// sub-streams so parallel trials stay reproducible and order-free.
struct RngHandle {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;

    RngHandle derive(std::uint64_t sub_stream) const;
};

// Uniform, Gaussian and Poisson sampling on top of mt19937_64.
//
// The samplers are implemented here instead of using std:: distributions:
// the standard specifies the engine but not the distributions, and byte
// identical output for identical RngHandles is part of the contract.
class RandomStream {
  public:
    explicit RandomStream(RngHandle handle);

    std::uint64_t raw();      // next engine word
    double u01();             // uniform on [0, 1)
    double u01_open();        // uniform on (0, 1), safe under log()
    double gaussian();        // standard normal, Box-Muller
    std::int64_t poisson(double mean);
    int coin();               // fair bit
    double uniform_angle();   // uniform on [0, pi)

  private:
    std::int64_t poisson_knuth(double mean);
    std::int64_t poisson_ptrs(double mean);

    std::mt19937_64 engine_;
};

} // namespace qnsc
