#pragma once

namespace nodal {

// Numerical margins used by the verification layer. Gap-like thresholds are
// scaled by (1 + ||h||_F) at the point of use; entry thresholds are relative
// to the vector's sup-norm. Checks never report PASS below margin.
struct Tolerances {
    double symmetry_check = 1e-12;     // relative Hermiticity/symmetry test on inputs
    double simplicity = 1e-8;          // eigenvalue gap margin, x(1+||h||_F)
    double vanishing = 1e-8;           // min |phi_r| / max |phi_r|
    double distinctness = 1e-8;        // lambda_k separation between signings, x(1+||h||_F)
    double pair_match = 1e-8;          // 2n-embedding pair tolerance, x(1+||H||_F)
    double current_structure = 1e-10;  // divergence/bridge/cycle spread, x||h||_F
    double flux_snap = 1e-9;           // pi-snapping when classifying sign patterns
    double strict_support = 1e-12;     // zero-entry test, x max|entry|
    double cluster = 1e-8;             // eigenvalue clustering for multiplicity, x(1+||h||_F)
    double inertia_zero = 1e-9;        // |eigenvalue| below this x scale counts as zero
    double hessian_diag_rel = 1e-4;    // allowed off-diagonal Hessian leakage
    double hessian_entry = 1e-7;       // diagonal entries below this x scale are unresolved
    double fd_step_gradient = 1e-5;
    double fd_step_hessian = 1e-3;
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

}  // namespace nodal
