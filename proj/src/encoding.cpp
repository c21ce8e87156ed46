#include "qnsc/encoding.hpp"

#include <cmath>
#include <stdexcept>

namespace qnsc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ChannelModel parse_channel_model(const std::string& name) {
    if (name == "counting") return ChannelModel::photon_counting;
    if (name == "gaussian") return ChannelModel::gaussian_angle;
    if (name == "noiseless") return ChannelModel::noiseless;
    throw std::invalid_argument("channel must be one of: counting, gaussian, noiseless");
}

std::string to_string(ChannelModel model) {
    switch (model) {
        case ChannelModel::photon_counting: return "counting";
        case ChannelModel::gaussian_angle: return "gaussian";
        case ChannelModel::noiseless: return "noiseless";
    }
    return "?";
}

void ProtocolParams::validate() const {
    bits_per_symbol(M);
    if (mean_photons < 0.0 || !std::isfinite(mean_photons)) {
        throw std::domain_error("mean photon number must be finite and >= 0");
    }
}

int basis_parity(std::uint32_t l) { return static_cast<int>(l & 1u); }

double encode_angle(int bit, std::uint32_t l, unsigned M) {
    bits_per_symbol(M);
    if (bit != 0 && bit != 1) {
        throw std::invalid_argument("data bit must be 0 or 1");
    }
    if (l >= M / 2) {
        throw std::domain_error("basis index out of range [0, M/2)");
    }
    const double base = kPi * static_cast<double>(l) / static_cast<double>(M);
    return (bit ^ basis_parity(l)) ? base + kPi / 2 : base;
}

std::vector<PulseRecord> encode_stream(const std::vector<std::uint8_t>& data,
                                       Keystream& stream,
                                       const ProtocolParams& params) {
    params.validate();
    std::vector<PulseRecord> out;
    out.reserve(data.size());
    for (std::uint8_t d : data) {
        const BasisIndex bi = next_basis_index(stream, params.M);
        PulseRecord rec;
        rec.bit = d;
        rec.l = bi.l;
        rec.parity = static_cast<std::uint8_t>(basis_parity(bi.l));
        rec.angle = encode_angle(d, bi.l, params.M);
        out.push_back(rec);
    }
    return out;
}

} // namespace qnsc
