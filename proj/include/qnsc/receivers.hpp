#pragma once

#include "qnsc/channel.hpp"
#include "qnsc/encoding.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace qnsc {

// Aligned per-symbol sequences of one protocol run. The measure-then-decode
// column is produced once from the shared measurement record: an
// eavesdropper holding the key would run the identical computation on the
// identical record, so it is Bob's and Eve's keyed output at the same time.
struct Transcript {
    std::vector<std::uint8_t> data;          // D, Alice's bits
    std::vector<std::uint8_t> parity;        // L = l mod 2
    std::vector<std::uint8_t> eve;           // E, unkeyed threshold bits
    std::vector<std::uint8_t> bob_parity;    // Bob, direct parity measurement
    std::vector<std::uint8_t> bob_mtd;       // keyed measure-then-decode bits
    std::vector<double> angle;               // transmitted angle
    std::vector<double> angle_est;           // shared angle estimate
    std::vector<std::uint8_t> uninformative; // vacuum flags
    std::uint64_t key_bits_consumed = 0;

    std::size_t size() const { return data.size(); }
};

// Unkeyed threshold rule: 0 on [0, pi/2), 1 on [pi/2, pi).
int eve_threshold_decode(double theta_hat);

// Keyed decoding of an angle estimate: pick the bit whose encoding for
// basis l is nearer to theta_hat; exact ties fall to a fair coin.
int bob_measure_then_decode(double theta_hat, std::uint32_t l, unsigned M,
                            RandomStream& rng);

// Bob's direct receiver: analyzer rotated to pi*l/M, bit read off the
// parity of the winning arm. Ties, including vacuum pulses, fall to a fair
// coin so they carry no information.
int bob_parity_decode(double pulse_angle, std::uint32_t l, const ProtocolParams& params,
                      RandomStream& rng);

// Full run: encode every data bit, push it through the selected channel
// model, and decode with all three receivers. The dual-basis record (and
// its angle estimate) is shared wiretap-style between Bob's
// measure-then-decode path and Eve; Bob's parity path measures separately.
Transcript run_protocol(const std::vector<std::uint8_t>& data, const SeedKey& seed,
                        const ProtocolParams& params, RandomStream& rng);

// CSV with columns index,D,L,E,B_parity,B_mtd,theta,theta_hat,uninformative_flag.
void write_transcript_csv(const Transcript& transcript, std::ostream& out);

} // namespace qnsc
