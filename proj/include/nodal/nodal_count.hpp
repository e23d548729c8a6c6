#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nodal/matrix_space.hpp"
#include "nodal/spectra.hpp"

namespace nodal {

// Histogram of the nodal surplus over the 2^beta symmetry points.
struct SurplusDistribution {
    int k = 0;     // eigenvalue index, 1-based
    int beta = 0;
    std::vector<std::uint64_t> counts;             // beta+1 entries, sum 2^beta
    std::vector<std::uint64_t> per_signing_counts; // counts x orbit size
};

struct GscReport {
    bool pass = false;
    bool strict_support_ok = false;
    double min_gap = 0.0;    // worst simplicity gap over all signings
    double min_entry = 0.0;  // worst relative eigenvector entry
    std::optional<std::uint64_t> failing_signing;  // sign-pattern mask attaining the worst margin
    std::uint64_t signings_checked = 0;
    bool full_enumeration = false;  // all 2^|E| patterns vs 2^beta symmetry points
};

struct DistinctReport {
    bool pass = false;
    double min_separation = 0.0;   // min pairwise |lambda_k| difference over symmetry points
    std::uint32_t worst_pair_a = 0, worst_pair_b = 0;
};

// Number of edges with phi_r h_rs phi_s > 0 for the k-th eigenvector (k is
// 1-based). Requires a simple eigenvalue and a nowhere-vanishing eigenvector
// with margin; throws NonSimpleEigenvalue / VanishingEigenvector otherwise.
int nodal_count(const SupportedMatrix& h, int k, const Tolerances& tol = default_tolerances());

// nodal_count minus (k-1); lies in [0, beta] under the generic condition.
int nodal_surplus(const SupportedMatrix& h, int k, const Tolerances& tol = default_tolerances());

// Generic spectral condition: strict support, and every signing has a simple
// spectrum with nowhere-vanishing eigenvectors (with margin). Enumerates all
// 2^|E| sign patterns when |E| <= 20, otherwise the 2^beta symmetry points
// (equivalent by gauge invariance). Failure is a report, not an error.
GscReport check_gsc(const SupportedMatrix& h, const CycleStructure& cs,
                    const Tolerances& tol = default_tolerances());

// Distinctness condition: lambda_k takes pairwise distinct values (with
// margin) on the 2^beta gauge-class representatives.
DistinctReport check_distinct_signings(const SupportedMatrix& h, const CycleStructure& cs, int k,
                                       const Tolerances& tol = default_tolerances());

// Exact integer histogram of the surplus over all symmetry points; margin
// violations propagate as exceptions naming the offending point.
SurplusDistribution surplus_distribution(const SupportedMatrix& h, const CycleStructure& cs,
                                         int k, const Tolerances& tol = default_tolerances());

}  // namespace nodal
