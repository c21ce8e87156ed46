#pragma once

#include "qnsc/keystream.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qnsc {

enum class ChannelModel { photon_counting, gaussian_angle, noiseless };

ChannelModel parse_channel_model(const std::string& name); // counting|gaussian|noiseless
std::string to_string(ChannelModel model);

// Global scheme parameters.
struct ProtocolParams {
    unsigned M = 32;              // number of distinct signal angles, power of two >= 4
    double mean_photons = 1e4;    // mean photon number per pulse
    ChannelModel channel = ChannelModel::photon_counting;

    void validate() const;
};

// One transmitted symbol.
struct PulseRecord {
    std::uint8_t bit = 0;   // data bit (element of D)
    std::uint32_t l = 0;    // basis index
    std::uint8_t parity = 0;
    double angle = 0.0;     // radians in [0, pi)
};

int basis_parity(std::uint32_t l);

// Transmitted polarization angle for (bit, l): pi*l/M plus a quarter turn
// when bit differs from the basis parity. Injective over (bit, l); the M
// images are uniformly spaced by pi/M over [0, pi).
double encode_angle(int bit, std::uint32_t l, unsigned M);

// One PulseRecord per data bit, drawing log2(M/2) key bits per symbol.
std::vector<PulseRecord> encode_stream(const std::vector<std::uint8_t>& data,
                                       Keystream& stream,
                                       const ProtocolParams& params);

} // namespace qnsc
