#include "qnsc/receivers.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace qnsc;

namespace {
constexpr double kPi = 3.14159265358979323846;

std::vector<std::uint8_t> random_bits(std::size_t n, RandomStream& rng) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.coin());
    return bits;
}

} // namespace

TEST_CASE("eve_threshold_decode splits [0, pi) at pi/2") {
    CHECK(eve_threshold_decode(0.3) == 0);
    CHECK(eve_threshold_decode(2.0) == 1);
    CHECK(eve_threshold_decode(kPi / 2) == 1); // half-open interval
    CHECK(eve_threshold_decode(0.0) == 0);
}

TEST_CASE("threshold decoding inverts the encoding exactly: E = D xor L") {
    for (unsigned M : {4u, 32u, 128u, 1024u}) {
        for (std::uint32_t l = 0; l < M / 2; ++l) {
            for (int b = 0; b < 2; ++b) {
                CHECK(eve_threshold_decode(encode_angle(b, l, M)) == (b ^ basis_parity(l)));
            }
        }
    }
}

TEST_CASE("bob_measure_then_decode picks the nearer candidate") {
    RandomStream rng(RngHandle{30, 0});
    CHECK(bob_measure_then_decode(0.1, 0, 32, rng) == 0);
    CHECK(bob_measure_then_decode(kPi / 2 - 0.01, 0, 32, rng) == 1);
    for (std::uint32_t l = 0; l < 16; ++l) {
        for (int b = 0; b < 2; ++b) {
            CHECK(bob_measure_then_decode(encode_angle(b, l, 32), l, 32, rng) == b);
        }
    }
}

TEST_CASE("exact ties fall to a fair coin") {
    // pi/4 is equidistant from the two l=0 candidates 0 and pi/2
    RandomStream rng(RngHandle{31, 0});
    int ones = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) ones += bob_measure_then_decode(kPi / 4, 0, 32, rng);
    CHECK(std::fabs(ones / static_cast<double>(n) - 0.5) < 0.02);
}

TEST_CASE("bob_parity_decode in noiseless mode reads the encoded bit") {
    RandomStream rng(RngHandle{32, 0});
    ProtocolParams params{32, 0.0, ChannelModel::noiseless};
    CHECK(bob_parity_decode(encode_angle(0, 4, 32), 4, params, rng) == 0);
    CHECK(bob_parity_decode(encode_angle(1, 5, 32), 5, params, rng) == 1);
    for (std::uint32_t l = 0; l < 16; ++l) {
        for (int b = 0; b < 2; ++b) {
            CHECK(bob_parity_decode(encode_angle(b, l, 32), l, params, rng) == b);
        }
    }
}

TEST_CASE("vacuum pulses decode as a fair coin in parity mode") {
    RandomStream rng(RngHandle{33, 0});
    ProtocolParams params{32, 0.0, ChannelModel::photon_counting};
    int wrong = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        wrong += (bob_parity_decode(encode_angle(0, 4, 32), 4, params, rng) != 0);
    }
    CHECK(std::fabs(wrong / static_cast<double>(n) - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("run_protocol: noiseless one-time-pad identity and bookkeeping") {
    RandomStream rng(RngHandle{34, 0});
    const SeedKey seed = SeedKey::from_hex("ace1", default_taps());
    ProtocolParams params{32, 0.0, ChannelModel::noiseless};

    SUBCASE("empty data gives an empty transcript") {
        const Transcript t = run_protocol({}, seed, params, rng);
        CHECK(t.size() == 0);
        CHECK(t.key_bits_consumed == 0);
    }
    SUBCASE("E xor L = D on every symbol") {
        const auto data = random_bits(10000, rng);
        const Transcript t = run_protocol(data, seed, params, rng);
        REQUIRE(t.size() == data.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            CHECK((t.eve[i] ^ t.parity[i]) == t.data[i]);
            CHECK(t.bob_parity[i] == t.data[i]);
            CHECK(t.bob_mtd[i] == t.data[i]);
            CHECK_FALSE(t.uninformative[i]);
        }
        CHECK(t.key_bits_consumed == data.size() * bits_per_symbol(32));
    }
}

TEST_CASE("decoding one angle-estimate sequence twice with one key is bit-identical") {
    // two parties with the same record, key, and decoding procedure
    RandomStream rng(RngHandle{35, 0});
    const SeedKey seed = SeedKey::from_hex("1f2b", default_taps());
    ProtocolParams params{32, 1.0, ChannelModel::photon_counting};
    const auto data = random_bits(20000, rng);
    const Transcript t = run_protocol(data, seed, params, rng);

    Keystream ks_bob(seed), ks_eve(seed);
    RandomStream tie_bob(RngHandle{900, 1}), tie_eve(RngHandle{900, 1});
    for (std::size_t i = 0; i < t.size(); ++i) {
        const std::uint32_t l_bob = next_basis_index(ks_bob, 32).l;
        const std::uint32_t l_eve = next_basis_index(ks_eve, 32).l;
        const int bob = bob_measure_then_decode(t.angle_est[i], l_bob, 32, tie_bob);
        const int eve = bob_measure_then_decode(t.angle_est[i], l_eve, 32, tie_eve);
        CHECK(bob == eve);
    }
}

TEST_CASE("parity-mode error at perfect alignment is vacuum limited") {
    // orthogonal arm stays dark, so only the n=0 tie can err: p = exp(-N)/2
    const double n_mean = 1.0;
    RandomStream rng(RngHandle{36, 0});
    const SeedKey seed = SeedKey::from_hex("ace1", default_taps());
    ProtocolParams params{32, n_mean, ChannelModel::photon_counting};
    const std::size_t pulses = 100000;
    const auto data = random_bits(pulses, rng);
    const Transcript t = run_protocol(data, seed, params, rng);
    std::uint64_t wrong = 0;
    for (std::size_t i = 0; i < t.size(); ++i) wrong += (t.bob_parity[i] != t.data[i]);
    const double expected = 0.5 * std::exp(-n_mean);
    const double se = std::sqrt(expected * (1 - expected) / pulses);
    CHECK(std::fabs(wrong / static_cast<double>(pulses) - expected) < 3.0 * se);
}

TEST_CASE("gaussian mode: errors live within 4 sigma of the thresholds") {
    RandomStream rng(RngHandle{37, 0});
    const SeedKey seed = SeedKey::from_hex("b33f", default_taps());
    const double n_mean = 1e4;
    ProtocolParams params{128, n_mean, ChannelModel::gaussian_angle};
    const std::size_t pulses = 100000;
    const auto data = random_bits(pulses, rng);
    const Transcript t = run_protocol(data, seed, params, rng);

    const double guard = 4.0 * gaussian_angle_sigma(n_mean);
    std::uint64_t interior = 0, interior_wrong = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double margin = std::min(angular_distance(t.angle[i], 0.0),
                                       angular_distance(t.angle[i], kPi / 2));
        if (margin > guard) {
            ++interior;
            interior_wrong += (t.eve[i] != (t.data[i] ^ t.parity[i]));
        }
    }
    REQUIRE(interior > pulses / 2);
    CHECK(static_cast<double>(interior_wrong) / static_cast<double>(interior) < 1e-3);
}

TEST_CASE("transcript CSV serialization") {
    RandomStream rng(RngHandle{38, 0});
    const SeedKey seed = SeedKey::from_hex("ace1", default_taps());
    ProtocolParams params{32, 100.0, ChannelModel::photon_counting};
    const auto data = random_bits(50, rng);
    const Transcript t = run_protocol(data, seed, params, rng);

    std::ostringstream out;
    write_transcript_csv(t, out);
    std::istringstream in(out.str());
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "index,D,L,E,B_parity,B_mtd,theta,theta_hat,uninformative_flag");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 8);
    }
    CHECK(rows == t.size());
}
