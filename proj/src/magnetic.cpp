#include "nodal/magnetic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nodal/errors.hpp"
#include "nodal/parallel.hpp"

namespace nodal {

namespace {

void require_k_range(int k, int n) {
    if (k < 1 || k > n)
        throw InputError("eigenvalue index k=" + std::to_string(k) + " outside [1," +
                         std::to_string(n) + "]");
}

double neighbor_gap(const EigenSystem& es, int k) {
    double gap = std::numeric_limits<double>::infinity();
    if (k - 2 >= 0) gap = std::min(gap, es.values[k - 1] - es.values[k - 2]);
    if (k < es.n()) gap = std::min(gap, es.values[k] - es.values[k - 1]);
    return gap;
}

void require_simple(const EigenSystem& es, int k, double threshold) {
    double gap = neighbor_gap(es, k);
    if (gap < threshold) throw NonSimpleEigenvalue(k, gap, threshold);
}

std::vector<cplx> unit_vector(const EigenSystem& es, int k) {
    std::vector<cplx> phi = es.vector(k - 1);
    double n = norm2(phi);
    for (cplx& z : phi) z /= n;
    return phi;
}

double current_on_edge(const MagneticMatrix& h_alpha, const std::vector<cplx>& phi, int r,
                       int s) {
    return std::imag(h_alpha.mat(r, s) * std::conj(phi[r]) * phi[s]);
}

// Hermitian derivative of the torus action along a flux direction: entry
// (r_j, s_j) is i v_j (h_alpha)_{r_j s_j}.
CMat direction_derivative_matrix(const SupportedMatrix& h, const CycleStructure& cs,
                                 const MagneticMatrix& h_alpha,
                                 const std::vector<double>& direction) {
    CMat d(h.n(), h.n());
    for (int j = 0; j < cs.beta; ++j) {
        auto [r, s] = cs.representative_edges[j];
        cplx v = cplx(0.0, direction[j]) * h_alpha.mat(r, s);
        d(r, s) = v;
        d(s, r) = std::conj(v);
    }
    return d;
}

}  // namespace

const char* to_string(ScanVerdict v) {
    switch (v) {
        case ScanVerdict::StrictlyIncreasing: return "STRICTLY_INCREASING";
        case ScanVerdict::StrictlyDecreasing: return "STRICTLY_DECREASING";
        case ScanVerdict::FlatBand: return "FLAT_BAND";
        case ScanVerdict::NonMonotone: return "NON_MONOTONE";
    }
    return "UNKNOWN";
}

double lambda_k(const SupportedMatrix& h, const CycleStructure& cs, const FluxPoint& alpha,
                int k, const Tolerances& tol) {
    require_k_range(k, h.n());
    return eigensystem_at(h, cs, alpha, tol).values[k - 1];
}

EigenSystem eigensystem_at(const SupportedMatrix& h, const CycleStructure& cs,
                           const FluxPoint& alpha, const Tolerances& tol) {
    return eig_herm(torus_action(h, cs, alpha).mat, tol);
}

ProbabilityCurrent probability_current(const Graph& g, const CycleStructure& cs,
                                       const MagneticMatrix& h_alpha,
                                       const std::vector<cplx>& phi, const Tolerances& tol) {
    if (static_cast<int>(phi.size()) != g.n)
        throw InputError("probability_current: vector size does not match the graph");
    if (std::abs(norm2(phi) - 1.0) > 1e-12)
        throw NumericalError("probability_current: eigenvector is not unit norm");
    cplx rayleigh = inner(phi, h_alpha.mat.apply(phi));
    std::vector<cplx> residual = h_alpha.mat.apply(phi);
    for (size_t i = 0; i < residual.size(); ++i) residual[i] -= rayleigh * phi[i];
    double scale = 1.0 + h_alpha.mat.frobenius();
    if (norm2(residual) > 1e-8 * scale)
        throw NumericalError("probability_current: input is not an eigenvector (residual " +
                             std::to_string(norm2(residual)) + ")");

    ProbabilityCurrent out;
    out.values.resize(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e) {
        auto [r, s] = g.edges[e];
        out.values[e] = current_on_edge(h_alpha, phi, r, s);
    }

    for (int r = 0; r < g.n; ++r) {
        double div = 0.0;
        for (int s : g.adjacency[r]) {
            int e = g.edge_index(std::min(r, s), std::max(r, s));
            div += (r < s) ? out.values[e] : -out.values[e];
        }
        out.max_divergence = std::max(out.max_divergence, std::abs(div));
    }
    for (const Edge& b : bridges(g)) {
        int e = g.edge_index(b.first, b.second);
        out.max_bridge_abs = std::max(out.max_bridge_abs, std::abs(out.values[e]));
    }
    if (cs.disjoint) {
        for (const auto& cycle : cs.fundamental_cycles) {
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (size_t i = 0; i < cycle.size(); ++i) {
                int u = cycle[i], v = cycle[(i + 1) % cycle.size()];
                int e = g.edge_index(std::min(u, v), std::max(u, v));
                double oriented = (u < v) ? out.values[e] : -out.values[e];
                lo = std::min(lo, oriented);
                hi = std::max(hi, oriented);
            }
            out.max_cycle_spread = std::max(out.max_cycle_spread, hi - lo);
        }
    }
    (void)tol;
    return out;
}

std::vector<double> eigenvalue_gradient(const SupportedMatrix& h, const CycleStructure& cs,
                                        const FluxPoint& alpha, int k, const Tolerances& tol) {
    require_k_range(k, h.n());
    MagneticMatrix m = torus_action(h, cs, alpha);
    EigenSystem es = eig_herm(m.mat, tol);
    require_simple(es, k, tol.simplicity * (1.0 + h.frobenius()));
    std::vector<cplx> phi = unit_vector(es, k);

    std::vector<double> grad(cs.beta);
    for (int j = 0; j < cs.beta; ++j) {
        auto [r, s] = cs.representative_edges[j];
        grad[j] = -2.0 * current_on_edge(m, phi, r, s);
    }
    return grad;
}

std::vector<double> fd_gradient_of(const std::function<double(const std::vector<double>&)>& f,
                                   const std::vector<double>& x, double step) {
    std::vector<double> grad(x.size());
    for (size_t j = 0; j < x.size(); ++j) {
        std::vector<double> hi = x, lo = x;
        hi[j] += step;
        lo[j] -= step;
        grad[j] = (f(hi) - f(lo)) / (2.0 * step);
    }
    return grad;
}

Mat fd_hessian_of(const std::function<double(const std::vector<double>&)>& f,
                  const std::vector<double>& x, double step) {
    const int d = static_cast<int>(x.size());
    Mat hess(d, d);
    double f0 = f(x);
    for (int j = 0; j < d; ++j) {
        std::vector<double> hi = x, lo = x;
        hi[j] += step;
        lo[j] -= step;
        hess(j, j) = (f(hi) - 2.0 * f0 + f(lo)) / (step * step);
    }
    for (int j = 0; j < d; ++j)
        for (int l = j + 1; l < d; ++l) {
            std::vector<double> pp = x, pm = x, mp = x, mm = x;
            pp[j] += step; pp[l] += step;
            pm[j] += step; pm[l] -= step;
            mp[j] -= step; mp[l] += step;
            mm[j] -= step; mm[l] -= step;
            double v = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * step * step);
            hess(j, l) = hess(l, j) = v;
        }
    return hess;
}

FdDerivatives fd_derivatives(const SupportedMatrix& h, const CycleStructure& cs,
                             const FluxPoint& alpha, int k, double step_grad, double step_hess,
                             const Tolerances& tol) {
    require_k_range(k, h.n());
    double gap_threshold = tol.simplicity * (1.0 + h.frobenius());
    auto lambda_at = [&](const std::vector<double>& angles) {
        EigenSystem es = eigensystem_at(h, cs, FluxPoint{angles}, tol);
        require_simple(es, k, gap_threshold);
        return es.values[k - 1];
    };
    FdDerivatives out;
    out.gradient = fd_gradient_of(lambda_at, alpha.angles, step_grad);
    out.hessian = fd_hessian_of(lambda_at, alpha.angles, step_hess);
    // Averaging is a no-op here (the stencil is symmetric); kept as the
    // documented contract that the Hessian is exactly symmetric.
    for (int i = 0; i < out.hessian.rows(); ++i)
        for (int j = i + 1; j < out.hessian.cols(); ++j) {
            double v = 0.5 * (out.hessian(i, j) + out.hessian(j, i));
            out.hessian(i, j) = out.hessian(j, i) = v;
        }
    return out;
}

FdDerivatives fd_derivatives(const SupportedMatrix& h, const CycleStructure& cs,
                             const FluxPoint& alpha, int k, const Tolerances& tol) {
    return fd_derivatives(h, cs, alpha, k, tol.fd_step_gradient, tol.fd_step_hessian, tol);
}

JMinusResult j_minus(const SupportedMatrix& h, const CycleStructure& cs, std::uint32_t eps,
                     int k, const Tolerances& tol) {
    require_k_range(k, h.n());
    auto lambda_at_eps = [&](std::uint32_t e) {
        return eig_sym(apply_symmetry_point(h, cs, e).to_dense(), tol).values[k - 1];
    };
    double base = lambda_at_eps(eps);

    JMinusResult out;
    out.min_margin = std::numeric_limits<double>::infinity();
    double threshold = tol.distinctness * (1.0 + h.frobenius());
    for (int j = 0; j < cs.beta; ++j) {
        double neighbor = lambda_at_eps(eps ^ (1u << j));
        double diff = neighbor - base;
        out.min_margin = std::min(out.min_margin, std::abs(diff));
        if (std::abs(diff) < threshold) out.indeterminate = true;
        if (diff < 0.0) out.mask |= 1u << j;
    }
    if (cs.beta == 0) out.min_margin = std::numeric_limits<double>::infinity();
    return out;
}

EdgeScan edge_scan(const SupportedMatrix& h, const CycleStructure& cs, std::uint32_t eps,
                   int cycle, int k, int samples, const Tolerances& tol) {
    require_k_range(k, h.n());
    if (cycle < 0 || cycle >= cs.beta) throw InputError("edge_scan: cycle index out of range");
    if (samples < 8) throw InputError("edge_scan: need at least 8 samples");

    EdgeScan scan;
    scan.cycle = cycle;
    scan.k = k;
    scan.eps = eps;
    scan.t.resize(samples);
    scan.lambda.resize(samples);
    scan.derivative.resize(samples);

    auto [r, s] = cs.representative_edges[cycle];
    struct Sample { double lambda, deriv; };
    std::vector<Sample> rows = parallel_map_indexed<Sample>(samples, [&](std::uint64_t i) {
        double t = std::numbers::pi * static_cast<double>(i) / (samples - 1);
        FluxPoint a = FluxPoint::symmetry_point(cs.beta, eps);
        a.angles[cycle] = reduce_angle(a.angles[cycle] + t);
        MagneticMatrix m = torus_action(h, cs, a);
        EigenSystem es = eig_herm(m.mat, tol);
        std::vector<cplx> phi = unit_vector(es, k);
        return Sample{es.values[k - 1], -2.0 * current_on_edge(m, phi, r, s)};
    });
    for (int i = 0; i < samples; ++i) {
        scan.t[i] = std::numbers::pi * static_cast<double>(i) / (samples - 1);
        scan.lambda[i] = rows[i].lambda;
        scan.derivative[i] = rows[i].deriv;
    }

    double lo = *std::min_element(scan.lambda.begin(), scan.lambda.end());
    double hi = *std::max_element(scan.lambda.begin(), scan.lambda.end());
    if (hi - lo <= 1e-10 * (1.0 + h.frobenius())) {
        scan.verdict = ScanVerdict::FlatBand;
        return scan;
    }
    bool increasing = true, decreasing = true;
    double min_step = std::numeric_limits<double>::infinity();
    for (int i = 0; i + 1 < samples; ++i) {
        double d = scan.lambda[i + 1] - scan.lambda[i];
        min_step = std::min(min_step, std::abs(d));
        if (d <= 0.0) increasing = false;
        if (d >= 0.0) decreasing = false;
    }
    if (min_step > 1e-12 && increasing)
        scan.verdict = ScanVerdict::StrictlyIncreasing;
    else if (min_step > 1e-12 && decreasing)
        scan.verdict = ScanVerdict::StrictlyDecreasing;
    else
        scan.verdict = ScanVerdict::NonMonotone;
    return scan;
}

PartialCriticalityReport partial_criticality_check(const SupportedMatrix& h,
                                                   const EdgePhases& alpha, const Edge& bridge,
                                                   int k, const Tolerances& tol) {
    require_k_range(k, h.n());
    auto [side_a, side_b] = bridge_split(h.graph, bridge);
    std::vector<char> in_a(h.graph.n, 0);
    for (int v : side_a) in_a[v] = 1;

    int bridge_edge = h.graph.edge_index(bridge.first, bridge.second);
    bool support_in_a = false, support_in_b = false;
    for (size_t e = 0; e < alpha.phases.size(); ++e) {
        if (reduce_angle(alpha.phases[e]) == 0.0) continue;
        if (static_cast<int>(e) == bridge_edge)
            throw InputError("partial_criticality_check: alpha must vanish on the bridge");
        auto [r, s] = h.graph.edges[e];
        (in_a[r] ? support_in_a : support_in_b) = true;
    }
    if (support_in_a && support_in_b)
        throw InputError("partial_criticality_check: alpha touches both sides of the bridge");

    // Far side: where alpha vanishes (side A when the support sits in B).
    const bool far_is_a = support_in_b;
    MagneticMatrix m = torus_action(h, alpha);
    EigenSystem es = eig_herm(m.mat, tol);
    require_simple(es, k, tol.simplicity * (1.0 + h.frobenius()));
    std::vector<cplx> phi = unit_vector(es, k);

    PartialCriticalityReport report;
    report.threshold = tol.current_structure * h.frobenius();
    for (size_t e = 0; e < h.graph.edges.size(); ++e) {
        auto [r, s] = h.graph.edges[e];
        if (static_cast<int>(e) == bridge_edge) continue;
        if (in_a[r] != (far_is_a ? 1 : 0)) continue;
        report.max_far_current =
            std::max(report.max_far_current, std::abs(current_on_edge(m, phi, r, s)));
    }
    report.pass = report.max_far_current <= report.threshold;
    return report;
}

BzReport bz_definiteness(const SupportedMatrix& h, const CycleStructure& cs,
                         const FluxPoint& alpha, int k, const std::vector<double>& direction,
                         const Tolerances& tol) {
    require_k_range(k, h.n());
    if (static_cast<int>(direction.size()) != cs.beta)
        throw InputError("bz_definiteness: direction dimension does not match beta");

    MagneticMatrix m = torus_action(h, cs, alpha);
    EigenSystem es = eig_herm(m.mat, tol);

    // Coarsest clustering at level k: extend while consecutive gaps stay
    // below the threshold.
    double cluster_tol = tol.cluster * (1.0 + h.frobenius());
    int lo = k - 1, hi = k - 1;
    while (lo > 0 && es.values[lo] - es.values[lo - 1] <= cluster_tol) --lo;
    while (hi + 1 < es.n() && es.values[hi + 1] - es.values[hi] <= cluster_tol) ++hi;

    BzReport report;
    report.multiplicity = hi - lo + 1;
    CMat d = direction_derivative_matrix(h, cs, m, direction);

    report.form = CMat(report.multiplicity, report.multiplicity);
    std::vector<std::vector<cplx>> basis;
    for (int i = lo; i <= hi; ++i) basis.push_back(unit_vector(es, i + 1));
    for (int a = 0; a < report.multiplicity; ++a)
        for (int b = 0; b < report.multiplicity; ++b)
            report.form(a, b) = inner(basis[a], d.apply(basis[b]));
    // Exact Hermitization to absorb roundoff before the small solve.
    for (int a = 0; a < report.multiplicity; ++a)
        for (int b = a; b < report.multiplicity; ++b) {
            cplx v = 0.5 * (report.form(a, b) + std::conj(report.form(b, a)));
            report.form(a, b) = v;
            report.form(b, a) = std::conj(v);
        }

    EigenSystem fes = eig_herm(report.form, tol);
    report.form_eigenvalues = fes.values;
    double margin = 1e-9 * (1.0 + h.frobenius());
    bool all_pos = true, all_neg = true;
    for (double v : report.form_eigenvalues) {
        if (v < margin) all_pos = false;
        if (v > -margin) all_neg = false;
    }
    report.definite = all_pos || all_neg;
    return report;
}

}  // namespace nodal
