#pragma once

#include "qnsc/random.hpp"

#include <array>
#include <cstdint>
#include <utility>

namespace qnsc {

// One dual-basis observation: photon counts behind analyzers at
// 0, pi/2, pi/4 and 3pi/4.
struct MeasurementRecord {
    std::array<std::int64_t, 4> counts{};
    double mean_photons_used = 0.0;
};

struct AngleEstimate {
    double angle = 0.0;        // radians in [0, pi)
    bool uninformative = false; // vacuum record, angle drawn uniformly
};

// Semiclassical shot noise: a linearly polarized coherent pulse of mean
// photon number N behind a polarizing analyzer gives independent Poisson
// counts with means N cos^2 and N sin^2 of the angle difference.
std::pair<std::int64_t, std::int64_t> count_single_basis(double angle, double analyzer,
                                                         double mean_photons,
                                                         RandomStream& rng);

// Full-angle measurement: 50/50 split onto the {0, pi/2} and {pi/4, 3pi/4}
// analyzer pairs, so each arm mean carries N/2 in place of N.
MeasurementRecord count_dual_basis(double angle, double mean_photons, RandomStream& rng);

// Stokes-parameter estimator: with S1 = n1 - n2 and S2 = n3 - n4, the
// angle is atan2(S2, S1)/2 folded into [0, pi). A vacuum record carries no
// information; it yields a uniform angle and sets the uninformative flag.
AngleEstimate estimate_angle(const MeasurementRecord& record, RandomStream& rng);

// Width of the calibrated Gaussian shortcut, 1/(2 sqrt(N)).
double gaussian_angle_sigma(double mean_photons);

// Gaussian shortcut for the angle channel: input plus zero-mean Gaussian
// noise of width gaussian_angle_sigma(N), reduced mod pi. Requires N > 0.
double gaussian_angle_channel(double angle, double mean_photons, RandomStream& rng);

// Metric on the polarization half-circle: min(|a-b|, pi-|a-b|), in [0, pi/2].
double angular_distance(double a, double b);

// Reduce an angle to [0, pi).
double wrap_angle_pi(double angle);

} // namespace qnsc
