#include "qnsc/receivers.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace qnsc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

int eve_threshold_decode(double theta_hat) {
    return theta_hat < kPi / 2 ? 0 : 1;
}

int bob_measure_then_decode(double theta_hat, std::uint32_t l, unsigned M,
                            RandomStream& rng) {
    const double d0 = angular_distance(theta_hat, encode_angle(0, l, M));
    const double d1 = angular_distance(theta_hat, encode_angle(1, l, M));
    if (d0 < d1) return 0;
    if (d0 > d1) return 1;
    return rng.coin();
}

int bob_parity_decode(double pulse_angle, std::uint32_t l, const ProtocolParams& params,
                      RandomStream& rng) {
    const unsigned M = params.M;
    if (l >= M / 2) {
        throw std::domain_error("basis index out of range [0, M/2)");
    }
    const int parity = basis_parity(l);
    const double analyzer = kPi * static_cast<double>(l) / static_cast<double>(M);
    switch (params.channel) {
        case ChannelModel::photon_counting: {
            auto [aligned, orthogonal] =
                count_single_basis(pulse_angle, analyzer, params.mean_photons, rng);
            if (aligned > orthogonal) return parity;
            if (aligned < orthogonal) return 1 ^ parity;
            return rng.coin();
        }
        case ChannelModel::noiseless: {
            const double d = pulse_angle - analyzer;
            const double ca = std::cos(d) * std::cos(d);
            const double sa = std::sin(d) * std::sin(d);
            if (ca > sa) return parity;
            if (ca < sa) return 1 ^ parity;
            return rng.coin();
        }
        case ChannelModel::gaussian_angle: {
            const double noisy =
                gaussian_angle_channel(pulse_angle, params.mean_photons, rng);
            const double d = angular_distance(noisy, analyzer);
            if (d < kPi / 4) return parity;
            if (d > kPi / 4) return 1 ^ parity;
            return rng.coin();
        }
    }
    throw std::logic_error("unreachable channel model");
}

Transcript run_protocol(const std::vector<std::uint8_t>& data, const SeedKey& seed,
                        const ProtocolParams& params, RandomStream& rng) {
    params.validate();
    Keystream stream(seed);

    Transcript t;
    const std::size_t n = data.size();
    t.data.reserve(n);
    t.parity.reserve(n);
    t.eve.reserve(n);
    t.bob_parity.reserve(n);
    t.bob_mtd.reserve(n);
    t.angle.reserve(n);
    t.angle_est.reserve(n);
    t.uninformative.reserve(n);

    for (std::uint8_t d : data) {
        const BasisIndex bi = next_basis_index(stream, params.M);
        const double theta = encode_angle(d, bi.l, params.M);

        double theta_hat = theta;
        bool uninformative = false;
        switch (params.channel) {
            case ChannelModel::photon_counting: {
                const MeasurementRecord rec =
                    count_dual_basis(theta, params.mean_photons, rng);
                const AngleEstimate est = estimate_angle(rec, rng);
                theta_hat = est.angle;
                uninformative = est.uninformative;
                break;
            }
            case ChannelModel::gaussian_angle:
                theta_hat = gaussian_angle_channel(theta, params.mean_photons, rng);
                break;
            case ChannelModel::noiseless:
                break;
        }

        t.data.push_back(d);
        t.parity.push_back(static_cast<std::uint8_t>(basis_parity(bi.l)));
        t.angle.push_back(theta);
        t.angle_est.push_back(theta_hat);
        t.uninformative.push_back(uninformative ? 1 : 0);
        t.eve.push_back(static_cast<std::uint8_t>(eve_threshold_decode(theta_hat)));
        t.bob_mtd.push_back(
            static_cast<std::uint8_t>(bob_measure_then_decode(theta_hat, bi.l, params.M, rng)));
        t.bob_parity.push_back(
            static_cast<std::uint8_t>(bob_parity_decode(theta, bi.l, params, rng)));
    }
    t.key_bits_consumed = stream.consumed();
    return t;
}

void write_transcript_csv(const Transcript& transcript, std::ostream& out) {
    out << "index,D,L,E,B_parity,B_mtd,theta,theta_hat,uninformative_flag\n";
    char line[160];
    for (std::size_t i = 0; i < transcript.size(); ++i) {
        std::snprintf(line, sizeof(line), "%zu,%d,%d,%d,%d,%d,%.9f,%.9f,%d\n", i,
                      transcript.data[i], transcript.parity[i], transcript.eve[i],
                      transcript.bob_parity[i], transcript.bob_mtd[i], transcript.angle[i],
                      transcript.angle_est[i], transcript.uninformative[i]);
        out << line;
    }
}

} // namespace qnsc
