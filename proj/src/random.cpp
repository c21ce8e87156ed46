#include "qnsc/random.hpp"

#include <cmath>
#include <stdexcept>

namespace qnsc {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

} // namespace

RngHandle RngHandle::derive(std::uint64_t sub_stream) const {
    return RngHandle{seed, splitmix64(splitmix64(stream_id) + sub_stream)};
}

RandomStream::RandomStream(RngHandle handle) {
    const std::uint64_t a = splitmix64(handle.seed);
    const std::uint64_t b = splitmix64(a ^ handle.stream_id);
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    engine_.seed(seq);
}

std::uint64_t RandomStream::raw() { return engine_(); }

double RandomStream::u01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::u01_open() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::gaussian() {
    const double u1 = u01_open();
    const double u2 = u01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

int RandomStream::coin() { return static_cast<int>(engine_() >> 63); }

double RandomStream::uniform_angle() {
    return u01() * 3.14159265358979323846;
}

std::int64_t RandomStream::poisson(double mean) {
    if (mean < 0.0 || !std::isfinite(mean)) {
        throw std::domain_error("poisson: mean must be finite and >= 0");
    }
    if (mean == 0.0) return 0;
    if (mean < 30.0) return poisson_knuth(mean);
    return poisson_ptrs(mean);
}

// Knuth's product-of-uniforms method; exact, O(mean) draws.
std::int64_t RandomStream::poisson_knuth(double mean) {
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= u01_open();
    } while (p > limit);
    return k - 1;
}

// Hoermann's transformed rejection with squeeze (PTRS, 1993); exact for
// mean >= 10, ~1.1 uniforms per sample.
std::int64_t RandomStream::poisson_ptrs(double mean) {
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = u01_open() - 0.5;
        const double v = u01_open();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= v_r) {
            return static_cast<std::int64_t>(k);
        }
        if (k < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
            k * loglam - mean - std::lgamma(k + 1.0)) {
            return static_cast<std::int64_t>(k);
        }
    }
}

} // namespace qnsc
