#pragma once

#include <vector>

#include "nodal/linalg.hpp"
#include "nodal/tolerances.hpp"

namespace nodal {

// Full ordered spectrum with orthonormal, phase-normalized eigenvectors.
// Vectors are stored as columns; for eig_sym they are real up to the stored
// type. Degenerate clusters are orthonormalized but otherwise arbitrary.
struct EigenSystem {
    std::vector<double> values;               // ascending
    CMat vectors;                             // column k <-> values[k]
    std::vector<double> gaps;                 // values[k+1] - values[k]
    std::vector<double> min_entry_magnitude;  // per vector: min|phi_r| / max|phi_r|
    bool real_vectors = false;

    int n() const { return static_cast<int>(values.size()); }
    std::vector<cplx> vector(int k) const;
    // Real part of column k; throws NumericalError if the imaginary part is
    // not negligible.
    std::vector<double> real_vector(int k) const;
};

struct SpectralMargins {
    double min_gap;           // min consecutive eigenvalue difference (inf for n < 2)
    double min_vector_entry;  // min over vectors of min|phi_r|/max|phi_r|
};

// Cyclic Jacobi solve of a real symmetric matrix. Throws InputError if H is
// not square/symmetric/finite.
EigenSystem eig_sym(const Mat& H, const Tolerances& tol = default_tolerances());

// Hermitian solve through the real 2n-embedding [[Re,-Im],[Im,Re]]. The 2n
// real eigenvalues come in coincident pairs; each pair collapses to one
// eigenvalue with one reconstructed complex eigenvector. Throws
// PairMatchingError when the pairing breaks down.
EigenSystem eig_herm(const CMat& H, const Tolerances& tol = default_tolerances());

SpectralMargins spectral_margins(const EigenSystem& es);

}  // namespace nodal
