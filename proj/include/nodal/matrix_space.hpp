#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nodal/graph.hpp"
#include "nodal/linalg.hpp"
#include "nodal/tolerances.hpp"

namespace nodal {

// Real symmetric matrix supported on a graph: diagonal plus one value per
// edge, aligned with Graph::edges. Support is always a subset of the graph;
// strict support (all edge values nonzero) is tested separately.
struct SupportedMatrix {
    Graph graph;
    std::vector<double> diagonal;      // n
    std::vector<double> off_diagonal;  // one per edge

    int n() const { return graph.n; }
    Mat to_dense() const;
    double frobenius() const;
};

SupportedMatrix make_supported(const Graph& g, std::vector<double> diagonal,
                               std::vector<double> off_diagonal);

bool is_strictly_supported(const SupportedMatrix& h,
                           const Tolerances& tol = default_tolerances());

// Point of the flux torus T^beta, coordinates in [0, 2pi) indexed by the
// representative-edge order of a CycleStructure.
struct FluxPoint {
    std::vector<double> angles;

    int beta() const { return static_cast<int>(angles.size()); }
    static FluxPoint zero(int beta) { return FluxPoint{std::vector<double>(beta, 0.0)}; }
    // Coordinates pi exactly on the set bits of eps.
    static FluxPoint symmetry_point(int beta, std::uint32_t eps);
};

// Full antisymmetric edge-phase pattern: value for the r < s orientation,
// one per edge of the graph.
struct EdgePhases {
    std::vector<double> phases;

    static EdgePhases zero(const Graph& g) {
        return EdgePhases{std::vector<double>(g.edges.size(), 0.0)};
    }
};

struct GaugeVector {
    std::vector<double> theta;  // n phases, mod 2pi
};

// +/-1 per edge, aligned with Graph::edges.
struct EdgeSigns {
    std::vector<int> signs;
};

// Complex Hermitian matrix obtained from the torus action; entries keep the
// magnitudes of the base matrix.
struct MagneticMatrix {
    CMat mat;

    int n() const { return mat.rows(); }
};

double reduce_angle(double a);  // representative in [0, 2pi)

// (alpha*h)_rs = e^{i alpha_rs} h_rs for r < s, conjugate below, diagonal
// unchanged.
MagneticMatrix torus_action(const SupportedMatrix& h, const EdgePhases& alpha);
// FluxPoint form places angle j on representative edge j and 0 elsewhere.
MagneticMatrix torus_action(const SupportedMatrix& h, const CycleStructure& cs,
                            const FluxPoint& alpha);

EdgePhases to_edge_phases(const Graph& g, const CycleStructure& cs, const FluxPoint& alpha);

// Conjugation by diag(e^{i theta_r}); preserves spectra.
MagneticMatrix gauge_transform(const MagneticMatrix& h, const GaugeVector& theta);
// The edge-phase pattern with torus_action(h, gauge_phases(theta)) equal to
// gauge_transform(torus_action(h, 0), theta); flux 0 around every cycle.
EdgePhases gauge_phases(const Graph& g, const GaugeVector& theta);

// Oriented sum of alpha over the cycle's edges (+ when traversed low -> high
// vertex). The vertex sequence is implicitly closed; an explicit closing
// vertex is tolerated. Throws InputError if the walk uses a non-edge.
double flux(const Graph& g, const EdgePhases& alpha, const std::vector<int>& cycle);

// Peels phases along the spanning tree: alpha = gauge_phases(theta) + flux
// point on representative edges. The flux coordinates equal the fluxes of
// alpha around the fundamental cycles.
struct FluxReduction {
    FluxPoint flux_point;
    GaugeVector theta;
};
FluxReduction reduce_to_flux(const Graph& g, const CycleStructure& cs, const EdgePhases& alpha);

// Real signings: sign flips on edges.
SupportedMatrix apply_signs(const SupportedMatrix& h, const EdgeSigns& signs);
SupportedMatrix apply_symmetry_point(const SupportedMatrix& h, const CycleStructure& cs,
                                     std::uint32_t eps);
// Gauge class of a sign pattern: bit j set iff the pattern's sign product
// around fundamental cycle j is -1.
std::uint32_t symmetry_point_of(const Graph& g, const CycleStructure& cs, const EdgeSigns& signs);

// Classifies a flux point whose coordinates all sit within snap_tol of
// {0, pi}; empty when any coordinate is genuinely interior.
std::optional<std::uint32_t> snap_to_symmetry_point(const FluxPoint& alpha,
                                                    double snap_tol = 1e-9);

EdgeSigns signs_from_mask(const Graph& g, std::uint64_t mask);  // bit e set -> sign -1

// Partition of all 2^|E| sign patterns under the gauge subgroup {0,pi}^n.
struct SigningOrbits {
    std::uint64_t orbit_count = 0;
    std::uint64_t orbit_size = 0;                  // common size (verified equal)
    std::vector<std::uint32_t> representatives;    // symmetry point per orbit, ascending
    std::vector<std::uint64_t> canonical_patterns; // lexicographically smallest member
};

// Enumerates all sign patterns (|E| <= 20). Throws NumericalError if orbits
// come out with unequal sizes (impossible for a connected graph).
SigningOrbits signing_orbits(const Graph& g, const CycleStructure& cs);

}  // namespace nodal
