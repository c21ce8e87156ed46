#pragma once

#include "qnsc/receivers.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

namespace qnsc {

// 2x2 co-occurrence table of (Alice bit, receiver bit).
struct JointCounts {
    std::array<std::array<std::uint64_t, 2>, 2> n{};

    void add(int x, int y) { ++n[x & 1][y & 1]; }
    std::uint64_t total() const;
    static JointCounts from_sequences(const std::vector<std::uint8_t>& x,
                                      const std::vector<std::uint8_t>& y);
};

// Plug-in mutual information estimate in bits, clamped to [0, 1].
double mutual_information(const JointCounts& counts);

// Receiver pairing for the information comparison.
//  - identical_record: both parties decode the one shared measurement
//    record with the key; their outputs coincide bit for bit, so the
//    difference is structurally zero.
//  - parity_vs_threshold: Bob's parity receiver against Eve's unkeyed
//    threshold bits, both scored against D.
enum class Pairing { identical_record, parity_vs_threshold };

struct DeltaIResult {
    double i_ab = 0.0;
    double i_ae = 0.0;
    double delta = 0.0;
};

DeltaIResult delta_I(const Transcript& transcript, Pairing pairing);

// Key bits consumed for a message: data_len * log2(M/2).
std::uint64_t key_consumption(std::uint64_t data_len, unsigned M);

struct SweepRow {
    double mean_photons = 0.0;
    unsigned M = 0;
    std::uint64_t pulses = 0;
    double bob_err = 0.0, bob_err_se = 0.0;
    double eve_err = 0.0, eve_err_se = 0.0; // E scored against D xor L
    double i_ab = 0.0, i_ae = 0.0, delta_i = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

// Monte Carlo over an (N, M) grid under the photon-counting channel.
// Each grid point runs on its own derived RNG stream, so points are
// independent jobs. seed_key fixes the key for every point; without it a
// fresh random seed key is drawn per point. The information columns use
// the identical-record pairing: i_ab == i_ae by construction while the
// error columns carry the intensity dependence.
SweepResult intensity_sweep(const std::vector<std::pair<double, unsigned>>& grid,
                            std::uint64_t pulses_per_point,
                            const std::optional<SeedKey>& seed_key, RngHandle rng);

// Fixed header: N,M,pulses,bob_err,bob_err_se,eve_err,eve_err_se,I_AB,I_AE,delta_I
void write_sweep_csv(const SweepResult& result, std::ostream& out);
SweepResult parse_sweep_csv(std::istream& in);

std::vector<std::pair<double, unsigned>> default_sweep_grid();

} // namespace qnsc
