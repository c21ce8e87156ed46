#pragma once

#include "qnsc/keystream.hpp"
#include "qnsc/receivers.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qnsc {

// One recovered keystream bit: value and its position in the running key.
struct Observation {
    std::uint64_t position = 0;
    std::uint8_t bit = 0;
};

// Known-plaintext extraction: for each known symbol, D xor E yields the
// parity bit L of that symbol's key chunk, which sits at the chunk's last
// (least significant) keystream position i*log2(M/2) + log2(M/2) - 1.
std::vector<Observation> observed_keystream_bits(const Transcript& transcript,
                                                 const std::vector<std::uint8_t>& known_plaintext,
                                                 std::size_t offset, unsigned M);

// GF(2) system over the seed bits: one word-packed row per observation,
// row r dotted with the seed giving keystream bit at positions[r].
struct LinearSystem {
    TapSet taps;
    std::vector<std::uint64_t> rows;      // bit j set <=> seed cell j+1 enters
    std::vector<std::uint8_t> rhs;        // observed bit per row
    std::vector<std::uint64_t> positions; // keystream position per row

    std::size_t size() const { return rows.size(); }
};

// Linear functional f_p with keystream-bit(p) = f_p . seed for every seed,
// obtained by stepping the register symbolically over the seed basis.
std::uint64_t seed_functional(std::uint64_t position, const TapSet& taps);

// Assembles the system. With majority_vote, observations mapping to the
// same functional are merged by majority; exact ties are dropped. Without
// it, every observation keeps its own row and conflicts surface in
// solve_seed as an inconsistency.
LinearSystem build_system(const std::vector<Observation>& observations, const TapSet& taps,
                          bool majority_vote = false);

struct RecoveredKey {
    unsigned rank = 0;
    bool unique = false;          // rank == degree
    std::uint64_t seed_bits = 0;  // valid only when unique
    TapSet taps;

    SeedKey seed() const; // throws unless unique
};

// A row that eliminates to 0 = 1; only possible with noisy observations.
class InconsistentSystemError : public std::runtime_error {
  public:
    InconsistentSystemError(std::size_t row_index, std::uint64_t position);
    std::size_t row_index() const { return row_index_; }
    std::uint64_t position() const { return position_; }

  private:
    std::size_t row_index_;
    std::uint64_t position_;
};

// Gauss-Jordan elimination over GF(2) with word-wide row operations.
RecoveredKey solve_seed(const LinearSystem& system);

// Decryption of a transcript given a recovered seed. Confidence is the
// angle-estimate margin to the nearer threshold boundary, scaled to [0, 1];
// vacuum symbols get 0.
struct Decryption {
    std::vector<std::uint8_t> bits;
    std::vector<double> confidence;
};

Decryption decrypt_with_seed(const Transcript& transcript, const RecoveredKey& recovered,
                             unsigned M);

} // namespace qnsc
