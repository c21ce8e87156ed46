#include "qnsc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qnsc {

std::uint64_t JointCounts::total() const {
    return n[0][0] + n[0][1] + n[1][0] + n[1][1];
}

JointCounts JointCounts::from_sequences(const std::vector<std::uint8_t>& x,
                                        const std::vector<std::uint8_t>& y) {
    if (x.size() != y.size()) {
        throw std::invalid_argument("joint counts need equal-length sequences");
    }
    JointCounts jc;
    for (std::size_t i = 0; i < x.size(); ++i) jc.add(x[i], y[i]);
    return jc;
}

double mutual_information(const JointCounts& counts) {
    const double total = static_cast<double>(counts.total());
    if (total <= 0.0) {
        throw std::domain_error("mutual information of an empty table");
    }
    double px[2] = {0, 0}, py[2] = {0, 0};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            px[x] += static_cast<double>(counts.n[x][y]) / total;
            py[y] += static_cast<double>(counts.n[x][y]) / total;
        }
    }
    double info = 0.0;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const double pxy = static_cast<double>(counts.n[x][y]) / total;
            if (pxy > 0.0) {
                info += pxy * std::log2(pxy / (px[x] * py[y]));
            }
        }
    }
    return std::clamp(info, 0.0, 1.0);
}

DeltaIResult delta_I(const Transcript& transcript, Pairing pairing) {
    if (transcript.size() == 0) {
        throw std::domain_error("delta_I of an empty transcript");
    }
    DeltaIResult r;
    switch (pairing) {
        case Pairing::identical_record: {
            // one shared record, one keyed decoding: Bob's and Eve's bit
            // sequences are the same object
            const JointCounts jc =
                JointCounts::from_sequences(transcript.data, transcript.bob_mtd);
            r.i_ab = mutual_information(jc);
            r.i_ae = mutual_information(jc);
            break;
        }
        case Pairing::parity_vs_threshold: {
            r.i_ab = mutual_information(
                JointCounts::from_sequences(transcript.data, transcript.bob_parity));
            r.i_ae = mutual_information(
                JointCounts::from_sequences(transcript.data, transcript.eve));
            break;
        }
    }
    r.delta = r.i_ab - r.i_ae;
    return r;
}

std::uint64_t key_consumption(std::uint64_t data_len, unsigned M) {
    return data_len * bits_per_symbol(M);
}

namespace {

double binomial_se(double p, std::uint64_t n) {
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

SeedKey random_seed_key(RandomStream& rng, const TapSet& taps) {
    const std::uint64_t mask = taps.state_mask();
    std::uint64_t bits = 0;
    while (bits == 0) bits = rng.raw() & mask;
    return SeedKey(bits, taps);
}

} // namespace

SweepResult intensity_sweep(const std::vector<std::pair<double, unsigned>>& grid,
                            std::uint64_t pulses_per_point,
                            const std::optional<SeedKey>& seed_key, RngHandle rng) {
    if (pulses_per_point < 1000) {
        throw std::domain_error("sweep needs >= 1000 pulses per grid point");
    }
    SweepResult result;
    result.rows.reserve(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto [mean_photons, M] = grid[g];
        RandomStream stream(rng.derive(g));
        const SeedKey seed =
            seed_key ? *seed_key : random_seed_key(stream, default_taps());

        std::vector<std::uint8_t> data(pulses_per_point);
        for (auto& d : data) d = static_cast<std::uint8_t>(stream.coin());

        ProtocolParams params;
        params.M = M;
        params.mean_photons = mean_photons;
        params.channel = ChannelModel::photon_counting;
        const Transcript t = run_protocol(data, seed, params, stream);

        std::uint64_t bob_wrong = 0, eve_wrong = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            bob_wrong += (t.bob_parity[i] != t.data[i]);
            eve_wrong += (t.eve[i] != (t.data[i] ^ t.parity[i]));
        }
        const DeltaIResult di = delta_I(t, Pairing::identical_record);

        SweepRow row;
        row.mean_photons = mean_photons;
        row.M = M;
        row.pulses = pulses_per_point;
        row.bob_err = static_cast<double>(bob_wrong) / static_cast<double>(t.size());
        row.bob_err_se = binomial_se(row.bob_err, t.size());
        row.eve_err = static_cast<double>(eve_wrong) / static_cast<double>(t.size());
        row.eve_err_se = binomial_se(row.eve_err, t.size());
        row.i_ab = di.i_ab;
        row.i_ae = di.i_ae;
        row.delta_i = di.delta;
        result.rows.push_back(row);
    }
    return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << "N,M,pulses,bob_err,bob_err_se,eve_err,eve_err_se,I_AB,I_AE,delta_I\n";
    char line[256];
    for (const SweepRow& r : result.rows) {
        std::snprintf(line, sizeof(line),
                      "%.10g,%u,%llu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n", r.mean_photons,
                      r.M, static_cast<unsigned long long>(r.pulses), r.bob_err, r.bob_err_se,
                      r.eve_err, r.eve_err_se, r.i_ab, r.i_ae, r.delta_i);
        out << line;
    }
}

SweepResult parse_sweep_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) ||
        line != "N,M,pulses,bob_err,bob_err_se,eve_err,eve_err_se,I_AB,I_AE,delta_I") {
        throw std::runtime_error("sweep CSV: bad or missing header");
    }
    SweepResult result;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 10) {
            throw std::runtime_error("sweep CSV: line " + std::to_string(lineno) +
                                     " has " + std::to_string(fields.size()) + " fields");
        }
        try {
            SweepRow r;
            r.mean_photons = std::stod(fields[0]);
            r.M = static_cast<unsigned>(std::stoul(fields[1]));
            r.pulses = std::stoull(fields[2]);
            r.bob_err = std::stod(fields[3]);
            r.bob_err_se = std::stod(fields[4]);
            r.eve_err = std::stod(fields[5]);
            r.eve_err_se = std::stod(fields[6]);
            r.i_ab = std::stod(fields[7]);
            r.i_ae = std::stod(fields[8]);
            r.delta_i = std::stod(fields[9]);
            result.rows.push_back(r);
        } catch (const std::exception&) {
            throw std::runtime_error("sweep CSV: unparseable value on line " +
                                     std::to_string(lineno));
        }
    }
    return result;
}

std::vector<std::pair<double, unsigned>> default_sweep_grid() {
    std::vector<std::pair<double, unsigned>> grid;
    for (unsigned M : {4u, 32u, 128u}) {
        for (double n : {0.0, 1.0, 10.0, 100.0, 1000.0, 10000.0}) {
            grid.emplace_back(n, M);
        }
    }
    return grid;
}

} // namespace qnsc
