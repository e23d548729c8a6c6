#pragma once

#include <cstdint>
#include <vector>

#include "nodal/magnetic.hpp"
#include "nodal/nodal_count.hpp"

namespace nodal {

// One row per symmetry point: its J_- image, eigenvalue, Morse index and
// surplus. Combinatorics are exact bitmask arithmetic (beta <= 20).
struct LatticeEntry {
    std::uint32_t eps = 0;
    std::uint32_t jminus = 0;
    double lambda = 0.0;
    int index = 0;    // |J_-(eps)|
    int surplus = 0;  // sigma(eps*h, k)
};

struct LatticeReport {
    int k = 0;
    int beta = 0;
    std::vector<LatticeEntry> entries;  // ascending eps
    bool bijective = false;             // eps -> J_-(eps) has image cardinality 2^beta
    bool binomial = false;              // #{|J_-| = j} equals C(beta, j) for all j
    bool indeterminate = false;         // some comparison fell below the margin
};

struct MorseEntry {
    std::uint32_t eps = 0;
    int fd_index = 0;        // negative diagonal entries of the FD Hessian
    int jminus_size = 0;
    int surplus = 0;
    double max_offdiag = 0.0;        // worst off-diagonal Hessian entry
    double min_abs_diagonal = 0.0;   // smallest |diagonal| entry
    bool offdiag_ok = false;         // off-diagonals within the diagonality margin
    bool entries_resolved = false;   // every |diagonal| clears the resolution margin
    bool consistent = false;         // offdiag_ok and fd_index == |J_-| == surplus
};

struct MorseReport {
    int k = 0;
    std::vector<MorseEntry> entries;
    bool all_consistent = false;
    bool indeterminate = false;
};

// C(n, r) in exact 64-bit arithmetic.
std::uint64_t binomial_coefficient(int n, int r);

// Full map eps -> (J_-, Lambda_k, Morse index, surplus) over the 2^beta
// symmetry points. Preconditions (generic + distinctness) are the caller's;
// margin violations surface as indeterminate.
LatticeReport lattice_map(const SupportedMatrix& h, const CycleStructure& cs, int k,
                          const Tolerances& tol = default_tolerances());

// counts[j] == C(beta, j) for all j, exactly.
bool binomial_verdict(const std::vector<std::uint64_t>& counts, int beta);
bool binomial_verdict(const SurplusDistribution& d);
bool binomial_verdict(const LatticeReport& r);

// Per-symmetry-point comparison of the FD Morse index with |J_-| and the
// surplus; Hessian diagonality is enforced first and violations are reported,
// never silently ignored.
MorseReport morse_report(const SupportedMatrix& h, const CycleStructure& cs, int k,
                         const Tolerances& tol = default_tolerances());

}  // namespace nodal
