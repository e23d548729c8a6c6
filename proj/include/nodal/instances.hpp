#pragma once

#include <cstdint>

#include "nodal/matrix_space.hpp"
#include "nodal/nodal_count.hpp"

namespace nodal {

// Splitmix-style 64-bit generator. Fixed and documented so that any
// reimplementation reproduces identical streams: state advances by
// 0x9E3779B97F4A7C15 and the output is the two-round mix of the new state
// (shifts 30/27/31, multipliers 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB).
// Doubles take the top 53 bits into [0, 1).
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    double next_double();                    // [0, 1)
    double uniform(double lo, double hi);    // [lo, hi)
    int next_sign();                         // +1 or -1

private:
    std::uint64_t state_;
};

struct GeneratorConfig {
    std::uint64_t seed = 1;
    double offdiag_low = 0.5;
    double offdiag_high = 1.5;
    double diag_jitter = 0.25;
    int max_retries = 100;
};

struct FlatBandInstance {
    SupportedMatrix h;
    double lambda = 0.0;
    int cycle = 0;  // flux coordinate whose scans stay flat at this eigenvalue
};

// Draws diagonal entries r + U(-jitter, jitter) in vertex order, then signed
// magnitudes U(low, high) per edge in sorted edge order, and resamples from
// the continuing stream until check_gsc and check_distinct_signings pass for
// every k. Deterministic per seed. Throws RetriesExhausted.
SupportedMatrix random_gsc_instance(const Graph& g, const CycleStructure& cs,
                                    const GeneratorConfig& cfg,
                                    const Tolerances& tol = default_tolerances());

// diag(1..n) plus a strictly supported perturbation with entries of magnitude
// in [xi_scale/2, xi_scale] and random sign. Not post-validated.
SupportedMatrix canonical_instance(const Graph& g, double xi_scale, std::uint64_t seed);

// Triangle {0,1,2} with pendant vertex 3 on vertex 0; the eigenvector for
// lambda = 1 vanishes at the degree-3 vertex, so lambda persists in the
// spectrum for every flux on the triangle. Fails the generic condition by
// construction.
FlatBandInstance flat_band_instance();

}  // namespace nodal
