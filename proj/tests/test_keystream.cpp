#include "qnsc/keystream.hpp"

#include "oracles.hpp"
#include "qnsc/random.hpp"

#include <doctest.h>

#include <set>

using namespace qnsc;
using qnsc::testing::ref_lfsr_bits;

namespace {

// Hand-stepped 4-bit register, taps {4,3}, seed 0001: the full period-15
// m-sequence. Cells are numbered 1 (newest, bit 0) to 4 (oldest).
const std::vector<std::uint8_t> kMSeq4 = {0, 0, 1, 1, 0, 1, 0, 1, 1, 1, 1, 0, 0, 0, 1};

std::uint64_t first_return_steps(std::uint64_t seed, const TapSet& taps) {
    std::uint64_t state = seed;
    std::uint64_t steps = 0;
    do {
        state = lfsr_step(state, taps).first;
        ++steps;
    } while (state != seed);
    return steps;
}

} // namespace

TEST_CASE("lfsr_step matches the hand-stepped 4-bit register") {
    const TapSet taps = TapSet::from_positions({4, 3});
    std::uint64_t state = 0b0001;
    for (std::size_t i = 0; i < kMSeq4.size(); ++i) {
        auto [next, bit] = lfsr_step(state, taps);
        CHECK(bit == kMSeq4[i]);
        state = next;
    }
    CHECK(state == 0b0001); // full orbit, period 15
}

TEST_CASE("lfsr_step agrees with the reference stepper") {
    const std::vector<unsigned> taps_list{4, 3};
    const TapSet taps = TapSet::from_positions(taps_list);
    for (std::uint64_t seed = 1; seed < 16; ++seed) {
        const std::vector<int> expected = ref_lfsr_bits(seed, taps_list, 64);
        std::uint64_t state = seed;
        for (int want : expected) {
            auto [next, bit] = lfsr_step(state, taps);
            CHECK(bit == want);
            state = next;
        }
    }
}

TEST_CASE("single 1 in the untapped newest cell outputs 0") {
    const TapSet taps = TapSet::from_positions({4, 3});
    auto [next, bit] = lfsr_step(0b0001, taps);
    CHECK(bit == 0);
    CHECK(next == 0b0010);
}

TEST_CASE("all-zero states are rejected") {
    const TapSet taps = default_taps();
    CHECK_THROWS_AS(lfsr_step(0, taps), std::domain_error);
    CHECK_THROWS_AS(SeedKey(0, taps), std::invalid_argument);
}

TEST_CASE("nonzero states stay nonzero") {
    const TapSet taps = TapSet::from_positions({5, 3});
    for (std::uint64_t s = 1; s < 32; ++s) {
        CHECK(lfsr_step(s, taps).first != 0);
    }
}

TEST_CASE("maximal tap sets have period 2^k - 1 for every seed, k <= 8") {
    const std::vector<std::vector<unsigned>> maximal = {
        {2, 1}, {3, 2}, {4, 3}, {5, 3}, {6, 5}, {7, 6}, {8, 6, 5, 4}};
    for (const auto& taps_list : maximal) {
        const TapSet taps = TapSet::from_positions(taps_list);
        const unsigned k = taps.degree;
        const std::uint64_t period = (1ull << k) - 1;
        for (std::uint64_t seed = 1; seed <= period; ++seed) {
            CHECK(first_return_steps(seed, taps) == period);
        }
    }
}

TEST_CASE("default 16-bit tap set is verified maximal by simulation") {
    const TapSet taps = default_taps();
    CHECK(taps.degree == 16);
    CHECK(first_return_steps(1, taps) == 65535);
}

TEST_CASE("expand_key basics") {
    const SeedKey seed(0b0001, TapSet::from_positions({4, 3}));
    CHECK(expand_key(seed, 0).empty());
    const auto bits = expand_key(seed, 15);
    CHECK(bits == kMSeq4);
}

TEST_CASE("keystreams from equal seeds agree on every prefix") {
    const SeedKey seed = SeedKey::from_hex("ace1", default_taps());
    Keystream a(seed), b(seed);
    for (int i = 0; i < 2000; ++i) {
        CHECK(a.next_bit() == b.next_bit());
    }
    CHECK(a.consumed() == 2000);
}

TEST_CASE("expand_key is GF(2)-linear in the seed") {
    RandomStream rng(RngHandle{71, 0});
    const TapSet taps = default_taps();
    const std::uint64_t mask = taps.state_mask();
    for (int trial = 0; trial < 200; ++trial) {
        std::uint64_t a = 0, b = 0;
        while (a == 0) a = rng.raw() & mask;
        while (b == 0 || b == a) b = rng.raw() & mask;
        const std::size_t n = 100;
        const auto ka = expand_key(SeedKey(a, taps), n);
        const auto kb = expand_key(SeedKey(b, taps), n);
        const auto kab = expand_key(SeedKey(a ^ b, taps), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(kab[i] == (ka[i] ^ kb[i]));
        }
    }
}

TEST_CASE("next_basis_index consumes MSB-first chunks") {
    SUBCASE("M=4 uses single-bit chunks equal to the stream") {
        const SeedKey seed(0b0001, TapSet::from_positions({4, 3}));
        Keystream ks(seed);
        for (std::size_t i = 0; i < kMSeq4.size(); ++i) {
            const BasisIndex bi = next_basis_index(ks, 4);
            CHECK(bi.l == kMSeq4[i]);
            CHECK(bi.source_bits.size() == 1);
        }
    }
    SUBCASE("M=32 reads 4 bits per symbol") {
        const SeedKey seed(0b0001, TapSet::from_positions({4, 3}));
        Keystream ks(seed);
        // m-sequence chunks: 0011, 0101, 1110 -> 3, 5, 14
        CHECK(next_basis_index(ks, 32).l == 3);
        CHECK(next_basis_index(ks, 32).l == 5);
        CHECK(next_basis_index(ks, 32).l == 14);
        CHECK(ks.consumed() == 12);
    }
    SUBCASE("chunk 1111 gives the maximum index 15") {
        // state 1010 emits 1,1,1,1 (window at phase 7 of the m-sequence)
        const SeedKey seed(0b1010, TapSet::from_positions({4, 3}));
        Keystream ks(seed);
        CHECK(next_basis_index(ks, 32).l == 15);
    }
}

TEST_CASE("chunking reproduces the keystream prefix and the parity bit") {
    const SeedKey seed = SeedKey::from_hex("0x2f9e", default_taps());
    const unsigned M = 128;
    const std::size_t symbols = 300;
    const auto prefix = expand_key(seed, symbols * bits_per_symbol(M));

    Keystream ks(seed);
    std::vector<std::uint8_t> rebuilt;
    for (std::size_t i = 0; i < symbols; ++i) {
        const BasisIndex bi = next_basis_index(ks, M);
        rebuilt.insert(rebuilt.end(), bi.source_bits.begin(), bi.source_bits.end());
        CHECK(static_cast<int>(bi.l & 1) == static_cast<int>(bi.source_bits.back()));
        CHECK(bi.l < M / 2);
    }
    CHECK(rebuilt == prefix);
}

TEST_CASE("bits_per_symbol validates M") {
    CHECK(bits_per_symbol(4) == 1);
    CHECK(bits_per_symbol(32) == 4);
    CHECK(bits_per_symbol(1024) == 9);
    CHECK_THROWS_AS(bits_per_symbol(12), std::invalid_argument);
    CHECK_THROWS_AS(bits_per_symbol(2), std::invalid_argument);
    CHECK_THROWS_AS(bits_per_symbol(0), std::invalid_argument);
}

TEST_CASE("tap set and seed parsing") {
    const TapSet taps = TapSet::parse("16,15,13,4");
    CHECK(taps.degree == 16);
    CHECK(taps == default_taps());
    CHECK_THROWS_AS(TapSet::parse("16,16"), std::invalid_argument);
    CHECK_THROWS_AS(TapSet::parse("1"), std::invalid_argument);
    CHECK_THROWS_AS(TapSet::parse("abc"), std::invalid_argument);

    const SeedKey seed = SeedKey::from_hex("ACE1", default_taps());
    CHECK(seed.bits == 0xACE1);
    CHECK(seed.to_hex() == "ace1");
    CHECK_THROWS_AS(SeedKey::from_hex("0", default_taps()), std::invalid_argument);
    CHECK_THROWS_AS(SeedKey::from_hex("12345", default_taps()), std::invalid_argument);
    CHECK_THROWS_AS(SeedKey::from_hex("zz", default_taps()), std::invalid_argument);
}
