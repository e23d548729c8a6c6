#pragma once

#include <cstdint>
#include <vector>

#include "nodal/magnetic.hpp"
#include "nodal/matrix_space.hpp"
#include "nodal/spectra.hpp"

namespace nodal {

struct InertiaRecord {
    int ind_m = 0;             // negatives of the block matrix M
    int ind_h_lambda = 0;      // negatives of h - lambda
    int ind_omega = 0;         // negatives of Omega
    int ind_schur_h = 0;       // negatives of M/(h-lambda)
    int ind_schur_omega = 0;   // negatives of M/Omega = S - lambda
    bool ambiguous = false;    // an eigenvalue sat too close to the zero threshold
};

// Rank-one decomposition data for the restriction of Lambda_k to a subtorus:
// h_alpha = S + sum_j R_j(alpha_j) over the chosen cycle coordinates J.
struct LocalGlobalCertificate {
    std::uint32_t J = 0;          // subset of cycle coordinates (bitmask)
    std::vector<int> j_list;      // ascending members of J
    int k = 0;                    // 1-based eigenvalue index
    double lambda = 0.0;          // lambda_k(h), simple
    std::vector<double> phi;      // unit real nowhere-vanishing eigenvector

    std::vector<double> omega;    // |J| diagonal entries: -h_{rs} phi_r phi_s
    Mat b_matrix;                 // n x |J|
    Mat s_matrix;                 // n x n, S = h - sum R_j(0)
    Mat m_matrix;                 // (n+|J|) x (n+|J|) block matrix
    Mat schur_h;                  // |J| x |J|: Omega - B^T (h-lambda)^+ B
    Mat schur_omega;              // n x n: (h-lambda) - B Omega^-1 B^T
    int m_count = 0;              // ind(Omega)
    InertiaRecord inertias;

    // Construction-time validation margins.
    double s_phi_residual = 0.0;        // ||S phi - lambda phi||
    double sum_rj_vs_bob = 0.0;         // max |sum R_j(0) - B Omega^-1 B^T|
    double rj_det_max = 0.0;            // max |det R_j(t)| over sampled t
    bool rj_sign_constant = true;       // semidefinite sign independent of t
};

struct SchurCheckReport {
    double schur_vs_half_hessian = 0.0;  // max |M/(h-lambda) - Hess/2| over J coords
    double schur_omega_vs_s = 0.0;       // max |M/Omega - (S - lambda)|
    double tolerance_hessian = 0.0;
    bool pass = false;
};

struct HaynsworthReport {
    InertiaRecord inertias;
    bool additivity_h = false;      // ind(M) == ind(M/(h-l)) + ind(h-l)
    bool additivity_omega = false;  // ind(M) == ind(M/Omega) + ind(Omega)
    bool derived_identity = false;  // ind(S-l) == ind(M/(h-l)) + k - 1 - m
    bool indeterminate = false;
    bool pass = false;
};

struct WeylGridReport {
    std::uint64_t grid_points = 0;
    double max_rank_eigenvalue = 0.0;   // max |lambda_{m+1}(sum R_j)| over the grid
    double min_weyl_margin = 0.0;       // min of Lambda_k(alpha) - lambda_{k-m}(S)
    bool weyl_applicable = true;        // false when k <= m
    double minmax_margin = 0.0;      // signed margin of the min/max inequality
    bool minmax_applicable = false;  // J matched J_-(eps) or J_+(eps)
    bool minmax_is_upper = false;    // true: Lambda_k <= Lambda_k(eps) expected
    // Flux angles attaining the worst Weyl margin / min-max margin; the
    // offending point when the corresponding inequality fails.
    std::vector<double> worst_weyl_point;
    std::vector<double> worst_minmax_point;
    bool pass = false;
};

// Builds the full certificate at a symmetry point taken as origin (pass
// eps*h as h). Throws NonSimpleEigenvalue / VanishingEigenvector, and
// NumericalError if the kernel of h - lambda is not one-dimensional.
LocalGlobalCertificate build_certificate(const SupportedMatrix& h, const CycleStructure& cs,
                                         int k, std::uint32_t J,
                                         const Tolerances& tol = default_tolerances());

// R_j(t) as a dense Hermitian matrix (real at t = 0 and t = pi).
CMat r_matrix(const SupportedMatrix& h, const CycleStructure& cs,
              const LocalGlobalCertificate& cert, int j, double t);

// Moore-Penrose pseudo-inverse of h - lambda with the single near-null
// direction zeroed; asserts the kernel is one-dimensional.
Mat pseudo_inverse_h_lambda(const SupportedMatrix& h, double lambda,
                            const Tolerances& tol = default_tolerances());

// Compares M/(h-lambda) against half the FD Hessian of Lambda_k restricted
// to the J coordinates, and M/Omega against S - lambda.
SchurCheckReport schur_check(const LocalGlobalCertificate& cert, const SupportedMatrix& h,
                             const CycleStructure& cs,
                             const Tolerances& tol = default_tolerances());

// Integer inertia identities via eigenvalue counting.
HaynsworthReport haynsworth_check(const LocalGlobalCertificate& cert);

// Grid verification over the subtorus T_J: rank structure of sum R_j(alpha),
// the Weyl bound lambda_{k-m}(S) <= Lambda_k(alpha), and (when J equals
// J_-(eps) or J_+(eps)) the min/max inequality on the matched subtorus.
WeylGridReport weyl_localglobal_check(const SupportedMatrix& h, const CycleStructure& cs,
                                      std::uint32_t eps, int k, std::uint32_t J,
                                      int grid_per_dim,
                                      const Tolerances& tol = default_tolerances());

}  // namespace nodal
