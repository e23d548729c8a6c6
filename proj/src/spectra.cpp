#include "nodal/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "nodal/errors.hpp"

namespace nodal {

namespace {

constexpr int kMaxSweeps = 60;
constexpr double kOffDiagTarget = 1e-14;  // x ||H||_F

double offdiag_norm(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

// One cyclic Jacobi pass; A keeps the working matrix, V accumulates rotations.
void jacobi_sweep(Mat& a, Mat& v) {
    const int n = a.rows();
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            double apq = a(p, q);
            if (apq == 0.0) continue;
            double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
            double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            double c = 1.0 / std::sqrt(1.0 + t * t);
            double s = t * c;

            double app = a(p, p), aqq = a(q, q);
            a(p, p) = app - t * apq;
            a(q, q) = aqq + t * apq;
            a(p, q) = a(q, p) = 0.0;
            for (int i = 0; i < n; ++i) {
                if (i == p || i == q) continue;
                double aip = a(i, p), aiq = a(i, q);
                a(i, p) = a(p, i) = c * aip - s * aiq;
                a(i, q) = a(q, i) = s * aip + c * aiq;
            }
            for (int i = 0; i < n; ++i) {
                double vip = v(i, p), viq = v(i, q);
                v(i, p) = c * vip - s * viq;
                v(i, q) = s * vip + c * viq;
            }
        }
    }
}

// Rotate each column so its largest-magnitude entry (ties -> lowest index) is
// real and positive; makes eigenvectors deterministic up to solver tolerance.
void phase_normalize(CMat& vectors) {
    const int n = vectors.rows();
    for (int k = 0; k < vectors.cols(); ++k) {
        int imax = 0;
        double best = -1.0;
        for (int i = 0; i < n; ++i) {
            double m = std::abs(vectors(i, k));
            if (m > best) {  // strict: ties resolve to the lowest index
                best = m;
                imax = i;
            }
        }
        if (best <= 0.0) continue;
        cplx z = vectors(imax, k);
        cplx rot = std::conj(z) / std::abs(z);
        for (int i = 0; i < n; ++i) vectors(i, k) *= rot;
        vectors(imax, k) = cplx(std::abs(vectors(imax, k)), 0.0);
    }
}

std::vector<double> entry_magnitudes(const CMat& vectors) {
    std::vector<double> out(vectors.cols());
    for (int k = 0; k < vectors.cols(); ++k) {
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int i = 0; i < vectors.rows(); ++i) {
            double m = std::abs(vectors(i, k));
            lo = std::min(lo, m);
            hi = std::max(hi, m);
        }
        out[k] = hi > 0.0 ? lo / hi : 0.0;
    }
    return out;
}

std::vector<double> consecutive_gaps(const std::vector<double>& values) {
    std::vector<double> gaps;
    for (size_t i = 0; i + 1 < values.size(); ++i) gaps.push_back(values[i + 1] - values[i]);
    return gaps;
}

void check_finite(const Mat& h) {
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j)
            if (!std::isfinite(h(i, j))) throw InputError("matrix has non-finite entries");
}

// Core symmetric solve without the symmetry validation (the embedding is
// symmetric by construction).
void jacobi_solve(const Mat& h, std::vector<double>& values, Mat& vectors) {
    const int n = h.rows();
    Mat a = h;
    vectors = Mat::identity(n);
    const double target = kOffDiagTarget * std::max(h.frobenius(), 1e-300);
    int sweep = 0;
    while (offdiag_norm(a) > target) {
        if (++sweep > kMaxSweeps)
            throw NumericalError("Jacobi failed to converge in " + std::to_string(kMaxSweeps) +
                                 " sweeps");
        jacobi_sweep(a, vectors);
    }

    values.resize(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return diag[x] < diag[y]; });

    Mat sorted(n, n);
    for (int k = 0; k < n; ++k) {
        values[k] = diag[order[k]];
        for (int i = 0; i < n; ++i) sorted(i, k) = vectors(i, order[k]);
    }
    vectors = std::move(sorted);
}

}  // namespace

std::vector<cplx> EigenSystem::vector(int k) const {
    std::vector<cplx> v(vectors.rows());
    for (int i = 0; i < vectors.rows(); ++i) v[i] = vectors(i, k);
    return v;
}

std::vector<double> EigenSystem::real_vector(int k) const {
    std::vector<double> v(vectors.rows());
    double scale = 0.0;
    for (int i = 0; i < vectors.rows(); ++i) scale = std::max(scale, std::abs(vectors(i, k)));
    for (int i = 0; i < vectors.rows(); ++i) {
        cplx z = vectors(i, k);
        if (std::abs(z.imag()) > 1e-8 * std::max(scale, 1e-300))
            throw NumericalError("eigenvector " + std::to_string(k) + " is not real");
        v[i] = z.real();
    }
    return v;
}

EigenSystem eig_sym(const Mat& h, const Tolerances& tol) {
    if (h.rows() != h.cols()) throw InputError("eig_sym: matrix not square");
    check_finite(h);
    double scale = std::max(h.max_abs(), 1.0);
    for (int i = 0; i < h.rows(); ++i)
        for (int j = i + 1; j < h.cols(); ++j)
            if (std::abs(h(i, j) - h(j, i)) > tol.symmetry_check * scale)
                throw InputError("eig_sym: matrix not symmetric");

    Mat sym = h;
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j) sym(i, j) = 0.5 * (h(i, j) + h(j, i));

    EigenSystem es;
    Mat vec;
    jacobi_solve(sym, es.values, vec);
    es.vectors = CMat::from_real(vec);
    phase_normalize(es.vectors);
    es.gaps = consecutive_gaps(es.values);
    es.min_entry_magnitude = entry_magnitudes(es.vectors);
    es.real_vectors = true;
    return es;
}

EigenSystem eig_herm(const CMat& h, const Tolerances& tol) {
    if (h.rows() != h.cols()) throw InputError("eig_herm: matrix not square");
    const int n = h.rows();
    double scale = std::max(h.max_abs(), 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!std::isfinite(h(i, j).real()) || !std::isfinite(h(i, j).imag()))
                throw InputError("eig_herm: matrix has non-finite entries");
            if (std::abs(h(i, j) - std::conj(h(j, i))) > tol.symmetry_check * scale)
                throw InputError("eig_herm: matrix not Hermitian");
        }

    // [[Re, -Im], [Im, Re]]: every eigenvalue of h shows up twice.
    Mat m(2 * n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx z = 0.5 * (h(i, j) + std::conj(h(j, i)));
            m(i, j) = z.real();
            m(i, j + n) = -z.imag();
            m(i + n, j) = z.imag();
            m(i + n, j + n) = z.real();
        }

    std::vector<double> evals;
    Mat evecs;
    jacobi_solve(m, evals, evecs);

    const double pair_tol = tol.pair_match * (1.0 + h.frobenius());
    EigenSystem es;
    es.vectors = CMat(n, n);

    // Cluster coincident embedded eigenvalues; each cluster must have even
    // size 2m and yields m complex eigenpairs.
    std::vector<std::vector<cplx>> accepted;
    int pos = 0;
    while (pos < 2 * n) {
        int end = pos + 1;
        while (end < 2 * n && evals[end] - evals[end - 1] <= pair_tol) ++end;
        int cluster = end - pos;
        if (cluster % 2 != 0)
            throw PairMatchingError("embedding eigenvalues failed to pair near " +
                                    std::to_string(evals[pos]));
        int m = cluster / 2;
        for (int p = 0; p < m; ++p)
            es.values.push_back(0.5 * (evals[pos + 2 * p] + evals[pos + 2 * p + 1]));

        // The 2m embedded vectors map onto the m-dimensional complex
        // eigenspace via [x; y] -> x + iy; pivoted Gram-Schmidt over all of
        // them extracts an orthonormal basis.
        std::vector<std::vector<cplx>> candidates(cluster, std::vector<cplx>(n));
        for (int c = 0; c < cluster; ++c)
            for (int i = 0; i < n; ++i)
                candidates[c][i] = cplx(evecs(i, pos + c), evecs(i + n, pos + c));
        for (int picked = 0; picked < m; ++picked) {
            int best = -1;
            double best_norm = 1e-6;
            for (int c = 0; c < cluster; ++c) {
                double nz = norm2(candidates[c]);
                if (nz > best_norm) {
                    best_norm = nz;
                    best = c;
                }
            }
            if (best < 0)
                throw PairMatchingError(
                    "failed to reconstruct a complex eigenvector near lambda=" +
                    std::to_string(evals[pos]));
            std::vector<cplx> v = candidates[best];
            for (cplx& z : v) z /= best_norm;
            for (int c = 0; c < cluster; ++c) {
                cplx proj = inner(v, candidates[c]);
                for (int i = 0; i < n; ++i) candidates[c][i] -= proj * v[i];
            }
            accepted.push_back(std::move(v));
        }
        pos = end;
    }

    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) es.vectors(i, k) = accepted[k][i];
    phase_normalize(es.vectors);
    es.gaps = consecutive_gaps(es.values);
    es.min_entry_magnitude = entry_magnitudes(es.vectors);
    es.real_vectors = false;
    return es;
}

SpectralMargins spectral_margins(const EigenSystem& es) {
    SpectralMargins m;
    m.min_gap = std::numeric_limits<double>::infinity();
    for (double g : es.gaps) m.min_gap = std::min(m.min_gap, g);
    m.min_vector_entry = std::numeric_limits<double>::infinity();
    for (double e : es.min_entry_magnitude) m.min_vector_entry = std::min(m.min_vector_entry, e);
    if (es.min_entry_magnitude.empty()) m.min_vector_entry = 0.0;
    return m;
}

}  // namespace nodal
