#include "qnsc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace qnsc {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::pair<std::int64_t, std::int64_t> count_single_basis(double angle, double analyzer,
                                                         double mean_photons,
                                                         RandomStream& rng) {
    if (mean_photons < 0.0 || !std::isfinite(mean_photons)) {
        throw std::domain_error("mean photon number must be finite and >= 0");
    }
    const double d = angle - analyzer;
    const double c = std::cos(d);
    const double s = std::sin(d);
    const std::int64_t aligned = rng.poisson(mean_photons * c * c);
    const std::int64_t orthogonal = rng.poisson(mean_photons * s * s);
    return {aligned, orthogonal};
}

MeasurementRecord count_dual_basis(double angle, double mean_photons, RandomStream& rng) {
    if (mean_photons < 0.0 || !std::isfinite(mean_photons)) {
        throw std::domain_error("mean photon number must be finite and >= 0");
    }
    MeasurementRecord rec;
    rec.mean_photons_used = mean_photons;
    const double half = 0.5 * mean_photons;
    const double c0 = std::cos(angle), s0 = std::sin(angle);
    const double c1 = std::cos(angle - kPi / 4), s1 = std::sin(angle - kPi / 4);
    rec.counts[0] = rng.poisson(half * c0 * c0);
    rec.counts[1] = rng.poisson(half * s0 * s0);
    rec.counts[2] = rng.poisson(half * c1 * c1);
    rec.counts[3] = rng.poisson(half * s1 * s1);
    return rec;
}

AngleEstimate estimate_angle(const MeasurementRecord& record, RandomStream& rng) {
    const auto& n = record.counts;
    if (n[0] == 0 && n[1] == 0 && n[2] == 0 && n[3] == 0) {
        return {rng.uniform_angle(), true};
    }
    const double s1 = static_cast<double>(n[0] - n[1]);
    const double s2 = static_cast<double>(n[2] - n[3]);
    double phi = 0.5 * std::atan2(s2, s1);
    if (phi < 0.0) phi += kPi;
    return {phi, false};
}

double gaussian_angle_sigma(double mean_photons) {
    return 0.5 / std::sqrt(mean_photons);
}

double gaussian_angle_channel(double angle, double mean_photons, RandomStream& rng) {
    if (mean_photons <= 0.0 || !std::isfinite(mean_photons)) {
        throw std::domain_error("gaussian angle channel requires mean photon number > 0");
    }
    const double noisy = angle + gaussian_angle_sigma(mean_photons) * rng.gaussian();
    return wrap_angle_pi(noisy);
}

double angular_distance(double a, double b) {
    const double d = std::fabs(a - b);
    return std::min(d, kPi - d);
}

double wrap_angle_pi(double angle) {
    double r = std::fmod(angle, kPi);
    if (r < 0.0) r += kPi;
    if (r >= kPi) r -= kPi; // rounding of r += pi can land exactly on pi
    return r;
}

} // namespace qnsc
