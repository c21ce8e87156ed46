#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qnsc {

// Fibonacci LFSR tap set. Cells are numbered 1 (newest) .. degree (oldest);
// the output bit of a clock is the XOR of the tapped cells and is fed back
// into cell 1. The oldest cell is always tapped, so the state map is a
// bijection and nonzero states stay nonzero.
struct TapSet {
    unsigned degree = 0;    // register length k, 2..64
    std::uint64_t mask = 0; // bit i-1 set  <=>  cell i tapped

    // Builds from 1-based positions; the register degree is the largest
    // position. Throws std::invalid_argument on duplicates or degree < 2.
    static TapSet from_positions(const std::vector<unsigned>& positions);
    // Parses a comma separated list, e.g. "16,15,13,4".
    static TapSet parse(const std::string& csv);

    std::vector<unsigned> positions() const; // descending
    std::uint64_t state_mask() const;
    bool operator==(const TapSet&) const = default;
};

// Degree-16 tap set {16,15,13,4}. Its maximal period 2^16 - 1 is not taken
// on trust: the test suite verifies it by direct simulation.
TapSet default_taps();

// The shared seed: the initial register fill plus the tap set.
struct SeedKey {
    std::uint64_t bits = 0; // bit i-1 = cell i; nonzero, < 2^degree
    TapSet taps;

    SeedKey(std::uint64_t bits, TapSet taps);
    static SeedKey from_hex(const std::string& hex, TapSet taps);
    std::string to_hex() const;
    unsigned degree() const { return taps.degree; }
};

// One LFSR clock: (next state, output bit). The output bit is the XOR of
// the tapped cells. Throws std::domain_error on the all-zero fixed point.
std::pair<std::uint64_t, int> lfsr_step(std::uint64_t state, const TapSet& taps);

// Lazily produced running key; a deterministic, GF(2)-linear function of
// the seed. Not shared across threads.
class Keystream {
  public:
    explicit Keystream(const SeedKey& seed);

    int next_bit();
    std::uint64_t consumed() const { return consumed_; }
    const SeedKey& seed() const { return seed_; }

  private:
    SeedKey seed_;
    std::uint64_t state_;
    std::uint64_t consumed_ = 0;
};

// First n output bits of the seed's keystream.
std::vector<std::uint8_t> expand_key(const SeedKey& seed, std::size_t n);

// Basis index for one symbol plus the keystream bits that produced it.
struct BasisIndex {
    std::uint32_t l = 0;
    std::vector<std::uint8_t> source_bits; // MSB first, log2(M/2) bits
};

// log2(M/2); throws std::invalid_argument unless M is a power of two >= 4.
unsigned bits_per_symbol(unsigned M);

// Consumes exactly log2(M/2) bits, MSB first, giving l in [0, M/2).
BasisIndex next_basis_index(Keystream& stream, unsigned M);

} // namespace qnsc
