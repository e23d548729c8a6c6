#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nodal/matrix_space.hpp"
#include "nodal/nodal_count.hpp"
#include "nodal/spectra.hpp"

namespace nodal {

// Antisymmetric edge field J_rs = Im((h_alpha)_rs conj(phi_r) phi_s), stored
// for the r < s orientation. Structural diagnostics (divergence, bridge
// values, per-cycle spread) are computed at construction.
struct ProbabilityCurrent {
    std::vector<double> values;       // per edge of the graph
    double max_divergence = 0.0;      // max over vertices of |sum_s J_rs|
    double max_bridge_abs = 0.0;      // max |J| over bridges
    double max_cycle_spread = 0.0;    // max oriented spread along disjoint simple cycles
};

enum class ScanVerdict { StrictlyIncreasing, StrictlyDecreasing, FlatBand, NonMonotone };

const char* to_string(ScanVerdict v);

// Lambda_k sampled along one hypercube edge of the flux torus.
struct EdgeScan {
    int cycle = 0;            // coordinate j
    int k = 0;                // eigenvalue index, 1-based
    std::uint32_t eps = 0;    // base symmetry point
    std::vector<double> t;            // uniform grid on [0, pi]
    std::vector<double> lambda;       // Lambda_k(eps + t e_j)
    std::vector<double> derivative;   // -2 J at every sample (endpoints are critical, ~0)
    ScanVerdict verdict = ScanVerdict::NonMonotone;
};

struct FdDerivatives {
    std::vector<double> gradient;  // beta entries
    Mat hessian;                   // beta x beta, symmetric by construction
};

// J_-(eps): cycle coordinates along which lambda_k strictly decreases at the
// neighboring symmetry point. indeterminate is set when any comparison falls
// below the distinctness margin.
struct JMinusResult {
    std::uint32_t mask = 0;
    double min_margin = 0.0;  // smallest |Lambda_k(eps + pi e_j) - Lambda_k(eps)|
    bool indeterminate = false;
};

struct PartialCriticalityReport {
    bool pass = false;
    double max_far_current = 0.0;  // max |J| over edges on the far side of the bridge
    double threshold = 0.0;
};

struct BzReport {
    int multiplicity = 1;
    CMat form;                     // m x m Hermitian directional-derivative form
    std::vector<double> form_eigenvalues;
    bool definite = false;
};

// k-th ascending eigenvalue of torus_action(h, alpha); k is 1-based.
double lambda_k(const SupportedMatrix& h, const CycleStructure& cs, const FluxPoint& alpha,
                int k, const Tolerances& tol = default_tolerances());

EigenSystem eigensystem_at(const SupportedMatrix& h, const CycleStructure& cs,
                           const FluxPoint& alpha, const Tolerances& tol = default_tolerances());

// Requires phi unit-norm (1e-12) and an eigenvector of h_alpha (residual
// below 1e-8 x (1 + ||h||_F)); throws NumericalError otherwise.
ProbabilityCurrent probability_current(const Graph& g, const CycleStructure& cs,
                                       const MagneticMatrix& h_alpha,
                                       const std::vector<cplx>& phi,
                                       const Tolerances& tol = default_tolerances());

// Analytic gradient of Lambda_k at alpha: component j is -2 J on the j-th
// representative edge, with the unit eigenvector. Requires lambda_k simple
// with margin.
std::vector<double> eigenvalue_gradient(const SupportedMatrix& h, const CycleStructure& cs,
                                        const FluxPoint& alpha, int k,
                                        const Tolerances& tol = default_tolerances());

// Central finite differences of an arbitrary function on flux coordinates;
// used both for Lambda_k and for synthetic test functions.
std::vector<double> fd_gradient_of(const std::function<double(const std::vector<double>&)>& f,
                                   const std::vector<double>& x, double step);
Mat fd_hessian_of(const std::function<double(const std::vector<double>&)>& f,
                  const std::vector<double>& x, double step);

// Central FD gradient and Hessian of Lambda_k; throws NonSimpleEigenvalue if
// the eigenvalue loses simplicity anywhere on the stencil.
FdDerivatives fd_derivatives(const SupportedMatrix& h, const CycleStructure& cs,
                             const FluxPoint& alpha, int k, double step_grad, double step_hess,
                             const Tolerances& tol = default_tolerances());
FdDerivatives fd_derivatives(const SupportedMatrix& h, const CycleStructure& cs,
                             const FluxPoint& alpha, int k,
                             const Tolerances& tol = default_tolerances());

JMinusResult j_minus(const SupportedMatrix& h, const CycleStructure& cs, std::uint32_t eps,
                     int k, const Tolerances& tol = default_tolerances());

// samples >= 8 points of Lambda_k along eps -> eps + pi e_j.
EdgeScan edge_scan(const SupportedMatrix& h, const CycleStructure& cs, std::uint32_t eps,
                   int cycle, int k, int samples, const Tolerances& tol = default_tolerances());

// With alpha supported strictly on one side of the bridge, the current of any
// simple eigenvector vanishes on the other side.
PartialCriticalityReport partial_criticality_check(const SupportedMatrix& h,
                                                   const EdgePhases& alpha, const Edge& bridge,
                                                   int k,
                                                   const Tolerances& tol = default_tolerances());

// Restriction of the directional derivative matrix to the eigenspace of the
// (possibly multiple) eigenvalue at level k; definite iff all form eigenvalues
// share one sign with margin.
BzReport bz_definiteness(const SupportedMatrix& h, const CycleStructure& cs,
                         const FluxPoint& alpha, int k, const std::vector<double>& direction,
                         const Tolerances& tol = default_tolerances());

}  // namespace nodal
