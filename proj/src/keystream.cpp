#include "qnsc/keystream.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace qnsc {

TapSet TapSet::from_positions(const std::vector<unsigned>& positions) {
    if (positions.empty()) {
        throw std::invalid_argument("tap set must not be empty");
    }
    TapSet t;
    for (unsigned p : positions) {
        if (p < 1 || p > 64) {
            throw std::invalid_argument("tap positions must lie in 1..64");
        }
        const std::uint64_t bit = 1ull << (p - 1);
        if (t.mask & bit) {
            throw std::invalid_argument("duplicate tap position");
        }
        t.mask |= bit;
        t.degree = std::max(t.degree, p);
    }
    if (t.degree < 2) {
        throw std::invalid_argument("register degree must be >= 2");
    }
    return t;
}

TapSet TapSet::parse(const std::string& csv) {
    std::vector<unsigned> positions;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("tap list must be comma-separated integers");
        }
        while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
        if (pos != item.size()) {
            throw std::invalid_argument("tap list must be comma-separated integers");
        }
        positions.push_back(static_cast<unsigned>(v));
    }
    return from_positions(positions);
}

std::vector<unsigned> TapSet::positions() const {
    std::vector<unsigned> out;
    for (unsigned p = degree; p >= 1; --p) {
        if (mask & (1ull << (p - 1))) out.push_back(p);
        if (p == 1) break;
    }
    return out;
}

std::uint64_t TapSet::state_mask() const {
    return degree == 64 ? ~0ull : (1ull << degree) - 1;
}

TapSet default_taps() {
    return TapSet::from_positions({16, 15, 13, 4});
}

SeedKey::SeedKey(std::uint64_t bits_in, TapSet taps_in) : bits(bits_in), taps(taps_in) {
    if (taps.degree < 2) {
        throw std::invalid_argument("seed key: register degree must be >= 2");
    }
    if (bits == 0) {
        throw std::invalid_argument("seed key must not be all-zero");
    }
    if (bits & ~taps.state_mask()) {
        throw std::invalid_argument("seed key does not fit the register degree");
    }
}

SeedKey SeedKey::from_hex(const std::string& hex, TapSet taps) {
    std::string s = hex;
    if (s.rfind("0x", 0) == 0 || s.rfind("0X", 0) == 0) s = s.substr(2);
    if (s.empty() || s.size() > 16) {
        throw std::invalid_argument("seed key hex must be 1..16 hex digits");
    }
    std::uint64_t v = 0;
    for (char c : s) {
        v <<= 4;
        if (c >= '0' && c <= '9') v |= static_cast<std::uint64_t>(c - '0');
        else if (c >= 'a' && c <= 'f') v |= static_cast<std::uint64_t>(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F') v |= static_cast<std::uint64_t>(c - 'A' + 10);
        else throw std::invalid_argument("seed key is not valid hex");
    }
    return SeedKey(v, taps);
}

std::string SeedKey::to_hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out;
    const unsigned nibbles = (taps.degree + 3) / 4;
    for (unsigned i = nibbles; i-- > 0;) {
        out.push_back(digits[(bits >> (4 * i)) & 0xF]);
    }
    return out;
}

std::pair<std::uint64_t, int> lfsr_step(std::uint64_t state, const TapSet& taps) {
    if (state == 0) {
        throw std::domain_error("lfsr_step: all-zero register state");
    }
    const int out = std::popcount(state & taps.mask) & 1;
    const std::uint64_t next =
        ((state << 1) | static_cast<std::uint64_t>(out)) & taps.state_mask();
    return {next, out};
}

Keystream::Keystream(const SeedKey& seed) : seed_(seed), state_(seed.bits) {}

int Keystream::next_bit() {
    auto [next, out] = lfsr_step(state_, seed_.taps);
    state_ = next;
    ++consumed_;
    return out;
}

std::vector<std::uint8_t> expand_key(const SeedKey& seed, std::size_t n) {
    Keystream ks(seed);
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) {
        bits[i] = static_cast<std::uint8_t>(ks.next_bit());
    }
    return bits;
}

unsigned bits_per_symbol(unsigned M) {
    if (M < 4 || (M & (M - 1)) != 0) {
        throw std::invalid_argument("M must be a power of two >= 4");
    }
    return static_cast<unsigned>(std::countr_zero(M)) - 1;
}

BasisIndex next_basis_index(Keystream& stream, unsigned M) {
    const unsigned n = bits_per_symbol(M);
    BasisIndex bi;
    bi.source_bits.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
        const int bit = stream.next_bit();
        bi.l = (bi.l << 1) | static_cast<std::uint32_t>(bit);
        bi.source_bits.push_back(static_cast<std::uint8_t>(bit));
    }
    return bi;
}

} // namespace qnsc
