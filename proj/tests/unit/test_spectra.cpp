#include <doctest.h>

#include <cmath>
#include <limits>

#include "nodal/errors.hpp"
#include "nodal/instances.hpp"
#include "nodal/spectra.hpp"

using namespace nodal;

namespace {

Mat random_symmetric(int n, SplitMix64& rng) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
    return m;
}

CMat random_hermitian(int n, SplitMix64& rng) {
    CMat m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = rng.uniform(-1.0, 1.0);
        for (int j = i + 1; j < n; ++j) {
            m(i, j) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

void check_residuals_sym(const Mat& h, const EigenSystem& es) {
    double bound = 1e-10 * (1.0 + h.frobenius());
    for (int k = 0; k < es.n(); ++k) {
        std::vector<cplx> v = es.vector(k);
        std::vector<cplx> r = CMat::from_real(h).apply(v);
        for (int i = 0; i < es.n(); ++i) r[i] -= es.values[k] * v[i];
        CHECK(norm2(r) <= bound);
    }
}

void check_orthonormal(const EigenSystem& es) {
    for (int a = 0; a < es.n(); ++a)
        for (int b = 0; b < es.n(); ++b) {
            cplx ip = inner(es.vector(a), es.vector(b));
            CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) <= 1e-10);
        }
}

}  // namespace

TEST_CASE("eig_sym on diagonal input") {
    Mat h(3, 3);
    h(0, 0) = 1.0;
    h(1, 1) = 2.0;
    h(2, 2) = 3.0;
    EigenSystem es = eig_sym(h);
    CHECK(es.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(es.values[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(es.values[2] == doctest::Approx(3.0).epsilon(1e-12));
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(es.vectors(i, k) - (i == k ? 1.0 : 0.0)) <= 1e-12);
    CHECK(spectral_margins(es).min_gap == doctest::Approx(1.0));
}

TEST_CASE("eig_sym on the triangle adjacency: cycle spectrum 2cos(2 pi j / 3)") {
    Mat h(3, 3);
    h(0, 1) = h(1, 0) = h(0, 2) = h(2, 0) = h(1, 2) = h(2, 1) = 1.0;
    EigenSystem es = eig_sym(h);
    CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(es.values[1] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(es.values[2] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(spectral_margins(es).min_gap == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("eig_sym residual and orthonormality on random symmetric matrices") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        Mat h = random_symmetric(8, rng);
        EigenSystem es = eig_sym(h);
        check_residuals_sym(h, es);
        check_orthonormal(es);
        for (size_t i = 0; i + 1 < es.values.size(); ++i) CHECK(es.values[i] <= es.values[i + 1]);

        double trace = 0.0, sum = 0.0;
        for (int i = 0; i < 8; ++i) trace += h(i, i);
        for (double v : es.values) sum += v;
        CHECK(std::abs(trace - sum) <= 1e-10 * (1.0 + h.frobenius()));
    }
}

TEST_CASE("eig_sym rejects bad input") {
    Mat h(2, 3);
    CHECK_THROWS_AS(eig_sym(h), InputError);
    Mat asym(2, 2);
    asym(0, 1) = 1.0;
    asym(1, 0) = 0.5;
    CHECK_THROWS_AS(eig_sym(asym), InputError);
    Mat nan(2, 2);
    nan(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(eig_sym(nan), InputError);
}

TEST_CASE("eig_herm 2x2 closed form [[0, i], [-i, 0]]") {
    CMat h(2, 2);
    h(0, 1) = cplx(0.0, 1.0);
    h(1, 0) = cplx(0.0, -1.0);
    EigenSystem es = eig_herm(h);
    CHECK(es.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(es.values[1] == doctest::Approx(1.0).epsilon(1e-12));
    check_orthonormal(es);
}

TEST_CASE("eig_herm agrees with eig_sym on real input") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        Mat h = random_symmetric(6, rng);
        EigenSystem real = eig_sym(h);
        EigenSystem herm = eig_herm(CMat::from_real(h));
        for (int k = 0; k < 6; ++k)
            CHECK(std::abs(real.values[k] - herm.values[k]) <=
                  1e-10 + 1e-10 * h.frobenius());
    }
}

TEST_CASE("eig_herm residuals, orthonormality and embedding pairing on random input") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 8; ++trial) {
        CMat h = random_hermitian(6, rng);
        EigenSystem es = eig_herm(h);
        check_orthonormal(es);
        double bound = 1e-10 * (1.0 + h.frobenius());
        for (int k = 0; k < 6; ++k) {
            std::vector<cplx> v = es.vector(k);
            std::vector<cplx> r = h.apply(v);
            for (int i = 0; i < 6; ++i) r[i] -= es.values[k] * v[i];
            CHECK(norm2(r) <= bound);
        }

        // Embedding oracle: the 2n real matrix has exactly the paired spectrum.
        Mat m(12, 12);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
                m(i, j) = h(i, j).real();
                m(i, j + 6) = -h(i, j).imag();
                m(i + 6, j) = h(i, j).imag();
                m(i + 6, j + 6) = h(i, j).real();
            }
        EigenSystem embedded = eig_sym(m);
        double pair_tol = 1e-8 * (1.0 + h.frobenius());
        for (int p = 0; p < 6; ++p) {
            CHECK(std::abs(embedded.values[2 * p + 1] - embedded.values[2 * p]) <= pair_tol);
            CHECK(std::abs(0.5 * (embedded.values[2 * p] + embedded.values[2 * p + 1]) -
                           es.values[p]) <= pair_tol);
        }
    }
}

TEST_CASE("eig_herm handles genuinely degenerate complex spectra") {
    // diag blocks [[0,i],[-i,0]] twice: eigenvalues -1,-1,1,1.
    CMat h(4, 4);
    h(0, 1) = cplx(0.0, 1.0);
    h(1, 0) = cplx(0.0, -1.0);
    h(2, 3) = cplx(0.0, 1.0);
    h(3, 2) = cplx(0.0, -1.0);
    EigenSystem es = eig_herm(h);
    CHECK(es.values[0] == doctest::Approx(-1.0));
    CHECK(es.values[1] == doctest::Approx(-1.0));
    CHECK(es.values[2] == doctest::Approx(1.0));
    CHECK(es.values[3] == doctest::Approx(1.0));
    check_orthonormal(es);
}

TEST_CASE("eig_herm rejects non-Hermitian input") {
    CMat h(2, 2);
    h(0, 1) = cplx(1.0, 0.0);
    h(1, 0) = cplx(2.0, 0.0);
    CHECK_THROWS_AS(eig_herm(h), InputError);
    CMat complex_diag(2, 2);
    complex_diag(0, 0) = cplx(0.0, 1.0);
    CHECK_THROWS_AS(eig_herm(complex_diag), InputError);
}

TEST_CASE("spectrum is invariant under simultaneous permutation") {
    SplitMix64 rng(17);
    Mat h = random_symmetric(5, rng);
    std::vector<int> perm{3, 1, 4, 0, 2};
    Mat p(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) p(i, j) = h(perm[i], perm[j]);
    EigenSystem a = eig_sym(h), b = eig_sym(p);
    for (int k = 0; k < 5; ++k)
        CHECK(a.values[k] == doctest::Approx(b.values[k]).epsilon(1e-12));
}

TEST_CASE("phase normalization is deterministic and flags vanishing entries") {
    Mat h(3, 3);
    h(0, 0) = 2.0;
    h(1, 1) = 2.0;
    h(2, 2) = 5.0;
    h(0, 1) = h(1, 0) = 1.0;
    EigenSystem es = eig_sym(h);
    // Eigenvector (1,-1)/sqrt 2 on the first two coordinates: the largest
    // entry is made positive, and the zero third coordinate is reported.
    CHECK(es.vectors(0, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(es.min_entry_magnitude[0] == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(spectral_margins(es).min_vector_entry == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}
