#include "nodal/local_global.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nodal/errors.hpp"
#include "nodal/parallel.hpp"

namespace nodal {

namespace {

struct Inertia {
    int negatives = 0;
    bool ambiguous = false;
};

// Count negative eigenvalues; values within the zero band count as zero, and
// values loitering near the band edge mark the result ambiguous.
Inertia inertia_of(const Mat& a, double zero_tol) {
    Inertia res;
    if (a.rows() == 0) return res;
    EigenSystem es = eig_sym(a);
    double threshold = zero_tol * (1.0 + a.frobenius());
    for (double v : es.values) {
        if (v < -threshold) ++res.negatives;
        double m = std::abs(v);
        if (m > 0.1 * threshold && m < 10.0 * threshold) res.ambiguous = true;
    }
    return res;
}

std::vector<int> mask_bits(std::uint32_t mask, int beta) {
    std::vector<int> bits;
    for (int j = 0; j < beta; ++j)
        if (mask >> j & 1u) bits.push_back(j);
    return bits;
}

Mat diag_matrix(const std::vector<double>& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

}  // namespace

CMat r_matrix(const SupportedMatrix& h, const CycleStructure& cs,
              const LocalGlobalCertificate& cert, int j, double t) {
    auto [r, s] = cs.representative_edges[j];
    double hrs = h.off_diagonal[h.graph.edge_index(r, s)];
    double pr = cert.phi[r], ps = cert.phi[s];
    CMat m(h.n(), h.n());
    m(r, r) = -hrs * ps / pr;
    m(s, s) = -hrs * pr / ps;
    m(r, s) = hrs * std::polar(1.0, t);
    m(s, r) = std::conj(m(r, s));
    return m;
}

Mat pseudo_inverse_h_lambda(const SupportedMatrix& h, double lambda, const Tolerances& tol) {
    EigenSystem es = eig_sym(h.to_dense(), tol);
    double threshold = 1e-8 * (1.0 + h.frobenius());
    const int n = h.n();
    int kernel_dim = 0;
    Mat pinv(n, n);
    for (int i = 0; i < n; ++i) {
        double d = es.values[i] - lambda;
        if (std::abs(d) <= threshold) {
            ++kernel_dim;
            continue;
        }
        std::vector<double> v = es.real_vector(i);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) pinv(a, b) += v[a] * v[b] / d;
    }
    if (kernel_dim != 1)
        throw NumericalError("pseudo-inverse of h-lambda: kernel dimension " +
                             std::to_string(kernel_dim) + " (expected 1)");
    return pinv;
}

LocalGlobalCertificate build_certificate(const SupportedMatrix& h, const CycleStructure& cs,
                                         int k, std::uint32_t J, const Tolerances& tol) {
    const int n = h.n();
    if (k < 1 || k > n) throw InputError("build_certificate: k out of range");
    if (cs.beta > 0 && (J >> cs.beta) != 0)
        throw InputError("build_certificate: J outside [beta]");
    if (cs.beta >= n) throw InputError("build_certificate: requires beta < n");

    LocalGlobalCertificate cert;
    cert.J = J;
    cert.j_list = mask_bits(J, cs.beta);
    cert.k = k;

    EigenSystem es = eig_sym(h.to_dense(), tol);
    cert.lambda = es.values[k - 1];
    double gap = std::numeric_limits<double>::infinity();
    if (k - 2 >= 0) gap = std::min(gap, es.values[k - 1] - es.values[k - 2]);
    if (k < n) gap = std::min(gap, es.values[k] - es.values[k - 1]);
    double gap_threshold = tol.simplicity * (1.0 + h.frobenius());
    if (gap < gap_threshold) throw NonSimpleEigenvalue(k, gap, gap_threshold);
    if (es.min_entry_magnitude[k - 1] < tol.vanishing)
        throw VanishingEigenvector(k, es.min_entry_magnitude[k - 1], tol.vanishing);
    cert.phi = es.real_vector(k - 1);

    const int nj = static_cast<int>(cert.j_list.size());
    cert.omega.resize(nj);
    cert.b_matrix = Mat(n, nj);
    Mat sum_rj0(n, n);
    for (int idx = 0; idx < nj; ++idx) {
        int j = cert.j_list[idx];
        auto [r, s] = cs.representative_edges[j];
        double hrs = h.off_diagonal[h.graph.edge_index(r, s)];
        cert.omega[idx] = -hrs * cert.phi[r] * cert.phi[s];
        if (cert.omega[idx] < 0.0) ++cert.m_count;
        cert.b_matrix(r, idx) = hrs * cert.phi[s];
        cert.b_matrix(s, idx) = -hrs * cert.phi[r];

        CMat rj0 = r_matrix(h, cs, cert, j, 0.0);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) sum_rj0(a, b) += rj0(a, b).real();
    }

    cert.s_matrix = h.to_dense() - sum_rj0;

    Mat h_lambda = h.to_dense();
    for (int i = 0; i < n; ++i) h_lambda(i, i) -= cert.lambda;
    cert.m_matrix = Mat(n + nj, n + nj);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) cert.m_matrix(a, b) = h_lambda(a, b);
    for (int a = 0; a < n; ++a)
        for (int idx = 0; idx < nj; ++idx) {
            cert.m_matrix(a, n + idx) = cert.b_matrix(a, idx);
            cert.m_matrix(n + idx, a) = cert.b_matrix(a, idx);
        }
    for (int idx = 0; idx < nj; ++idx) cert.m_matrix(n + idx, n + idx) = cert.omega[idx];

    Mat pinv = pseudo_inverse_h_lambda(h, cert.lambda, tol);
    cert.schur_h = diag_matrix(cert.omega) -
                   cert.b_matrix.transposed() * pinv * cert.b_matrix;

    Mat omega_inv(nj, nj);
    for (int idx = 0; idx < nj; ++idx) omega_inv(idx, idx) = 1.0 / cert.omega[idx];
    Mat bob = cert.b_matrix * omega_inv * cert.b_matrix.transposed();
    cert.schur_omega = h_lambda - bob;
    cert.sum_rj_vs_bob = (sum_rj0 - bob).max_abs();

    std::vector<double> s_phi = cert.s_matrix.apply(cert.phi);
    for (int i = 0; i < n; ++i) s_phi[i] -= cert.lambda * cert.phi[i];
    cert.s_phi_residual = norm2(s_phi);

    // det R_j(t) = 0 and a t-independent semidefinite sign matching sign(Omega_jj).
    for (int idx = 0; idx < nj; ++idx) {
        int j = cert.j_list[idx];
        auto [r, s] = cs.representative_edges[j];
        for (int step = 0; step < 16; ++step) {
            double t = 2.0 * std::numbers::pi * step / 16.0;
            CMat rj = r_matrix(h, cs, cert, j, t);
            cplx det2 = rj(r, r) * rj(s, s) - rj(r, s) * rj(s, r);
            cert.rj_det_max = std::max(cert.rj_det_max, std::abs(det2));
            double trace = (rj(r, r) + rj(s, s)).real();
            if (trace * cert.omega[idx] <= 0.0) cert.rj_sign_constant = false;
        }
    }

    Inertia im = inertia_of(cert.m_matrix, tol.inertia_zero);
    Inertia ihl = inertia_of(h_lambda, tol.inertia_zero);
    Inertia ish = inertia_of(cert.schur_h, tol.inertia_zero);
    Inertia iso = inertia_of(cert.schur_omega, tol.inertia_zero);
    cert.inertias.ind_m = im.negatives;
    cert.inertias.ind_h_lambda = ihl.negatives;
    cert.inertias.ind_omega = cert.m_count;
    cert.inertias.ind_schur_h = ish.negatives;
    cert.inertias.ind_schur_omega = iso.negatives;
    cert.inertias.ambiguous = im.ambiguous || ihl.ambiguous || ish.ambiguous || iso.ambiguous;
    return cert;
}

SchurCheckReport schur_check(const LocalGlobalCertificate& cert, const SupportedMatrix& h,
                             const CycleStructure& cs, const Tolerances& tol) {
    SchurCheckReport report;
    const int nj = static_cast<int>(cert.j_list.size());

    // FD Hessian of Lambda_k restricted to the J coordinates, at the origin.
    auto restricted = [&](const std::vector<double>& x) {
        FluxPoint a = FluxPoint::zero(cs.beta);
        for (int idx = 0; idx < nj; ++idx) a.angles[cert.j_list[idx]] = x[idx];
        return lambda_k(h, cs, a, cert.k, tol);
    };
    Mat hess = fd_hessian_of(restricted, std::vector<double>(nj, 0.0), tol.fd_step_hessian);

    double omega_sup = 0.0;
    for (double w : cert.omega) omega_sup = std::max(omega_sup, std::abs(w));
    report.tolerance_hessian = 1e-4 * (1.0 + omega_sup);
    for (int a = 0; a < nj; ++a)
        for (int b = 0; b < nj; ++b)
            report.schur_vs_half_hessian = std::max(
                report.schur_vs_half_hessian, std::abs(cert.schur_h(a, b) - 0.5 * hess(a, b)));

    Mat s_lambda = cert.s_matrix;
    for (int i = 0; i < s_lambda.rows(); ++i) s_lambda(i, i) -= cert.lambda;
    report.schur_omega_vs_s = (cert.schur_omega - s_lambda).max_abs();

    report.pass = report.schur_vs_half_hessian <= report.tolerance_hessian &&
                  report.schur_omega_vs_s <= 1e-10;
    return report;
}

HaynsworthReport haynsworth_check(const LocalGlobalCertificate& cert) {
    HaynsworthReport report;
    report.inertias = cert.inertias;
    const InertiaRecord& in = cert.inertias;
    report.additivity_h = in.ind_m == in.ind_schur_h + in.ind_h_lambda;
    report.additivity_omega = in.ind_m == in.ind_schur_omega + in.ind_omega;
    report.derived_identity =
        in.ind_schur_omega == in.ind_schur_h + (cert.k - 1) - cert.m_count;
    report.indeterminate = in.ambiguous;
    report.pass = report.additivity_h && report.additivity_omega && report.derived_identity &&
                  !report.indeterminate;
    return report;
}

WeylGridReport weyl_localglobal_check(const SupportedMatrix& h, const CycleStructure& cs,
                                      std::uint32_t eps, int k, std::uint32_t J,
                                      int grid_per_dim, const Tolerances& tol) {
    if (grid_per_dim < 1) throw InputError("weyl_localglobal_check: grid_per_dim must be >= 1");
    SupportedMatrix h_eps = apply_symmetry_point(h, cs, eps);
    LocalGlobalCertificate cert = build_certificate(h_eps, cs, k, J, tol);
    const int nj = static_cast<int>(cert.j_list.size());
    if (nj > 3) throw InputError("weyl_localglobal_check: |J| capped at 3 for grid checks");

    WeylGridReport report;
    JMinusResult jm = j_minus(h, cs, eps, k, tol);
    std::uint32_t full = cs.beta == 0 ? 0u : ((1u << cs.beta) - 1u);
    if (!jm.indeterminate && (J == jm.mask || J == (full ^ jm.mask))) {
        report.minmax_applicable = true;
        report.minmax_is_upper = J == jm.mask;  // all-decreasing directions: local max
    }

    const int m = cert.m_count;
    report.weyl_applicable = k - m >= 1;
    double s_bound = 0.0;
    if (report.weyl_applicable) {
        EigenSystem s_eig = eig_sym(cert.s_matrix, tol);
        s_bound = s_eig.values[k - m - 1];
    }

    std::uint64_t points = 1;
    for (int i = 0; i < nj; ++i) points *= static_cast<std::uint64_t>(grid_per_dim);
    report.grid_points = points;

    auto grid_angles = [&](std::uint64_t p) {
        std::vector<double> angles(nj);
        for (int idx = 0; idx < nj; ++idx) {
            angles[idx] = 2.0 * std::numbers::pi * (p % grid_per_dim) / grid_per_dim;
            p /= grid_per_dim;
        }
        return angles;
    };

    struct GridResult {
        double lambda_min = std::numeric_limits<double>::infinity();
        double lambda_max = -std::numeric_limits<double>::infinity();
        std::uint64_t argmin = 0, argmax = 0;
        double rank_eig_max = 0.0;
    };
    std::vector<GridResult> partial = parallel_map<GridResult>(
        points, [&](std::uint64_t begin, std::uint64_t end) {
            GridResult res;
            for (std::uint64_t p = begin; p < end; ++p) {
                std::vector<double> angles = grid_angles(p);
                FluxPoint a = FluxPoint::zero(cs.beta);
                CMat sum_rj(h.n(), h.n());
                for (int idx = 0; idx < nj; ++idx) {
                    a.angles[cert.j_list[idx]] = angles[idx];
                    sum_rj += r_matrix(h_eps, cs, cert, cert.j_list[idx], angles[idx]);
                }
                double lam = lambda_k(h_eps, cs, a, k, tol);
                if (lam < res.lambda_min) {
                    res.lambda_min = lam;
                    res.argmin = p;
                }
                if (lam > res.lambda_max) {
                    res.lambda_max = lam;
                    res.argmax = p;
                }
                if (nj > 0) {
                    EigenSystem rj_eig = eig_herm(sum_rj, tol);
                    res.rank_eig_max =
                        std::max(res.rank_eig_max, std::abs(rj_eig.values[m]));
                }
            }
            return res;
        });

    double lam_min = std::numeric_limits<double>::infinity();
    double lam_max = -std::numeric_limits<double>::infinity();
    std::uint64_t argmin = 0, argmax = 0;
    for (const GridResult& r : partial) {
        if (r.lambda_min < lam_min) {
            lam_min = r.lambda_min;
            argmin = r.argmin;
        }
        if (r.lambda_max > lam_max) {
            lam_max = r.lambda_max;
            argmax = r.argmax;
        }
        report.max_rank_eigenvalue = std::max(report.max_rank_eigenvalue, r.rank_eig_max);
    }

    report.min_weyl_margin = report.weyl_applicable ? lam_min - s_bound : 0.0;
    report.worst_weyl_point = grid_angles(argmin);
    bool weyl_ok = !report.weyl_applicable || report.min_weyl_margin >= -1e-9;
    bool rank_ok = report.max_rank_eigenvalue <= 1e-9;

    bool minmax_ok = true;
    if (report.minmax_applicable) {
        if (report.minmax_is_upper) {
            report.minmax_margin = cert.lambda - lam_max;  // want >= -1e-9
            report.worst_minmax_point = grid_angles(argmax);
        } else {
            report.minmax_margin = lam_min - cert.lambda;
            report.worst_minmax_point = grid_angles(argmin);
        }
        minmax_ok = report.minmax_margin >= -1e-9;
    }
    report.pass = weyl_ok && rank_ok && minmax_ok;
    return report;
}

}  // namespace nodal
