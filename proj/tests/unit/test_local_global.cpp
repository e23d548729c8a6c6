#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "nodal/errors.hpp"
#include "nodal/instances.hpp"
#include "nodal/local_global.hpp"

using namespace nodal;

namespace {

constexpr double kPi = std::numbers::pi;

struct Fixture {
    Graph g;
    CycleStructure cs;
    SupportedMatrix h;
};

Fixture gsc_fixture(const Graph& g, std::uint64_t seed) {
    Fixture f;
    f.g = g;
    f.cs = analyze_cycles(g);
    GeneratorConfig cfg;
    cfg.seed = seed;
    f.h = random_gsc_instance(f.g, f.cs, cfg);
    return f;
}

Graph two_triangles_bridge() {
    return build_graph(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
}

double max_abs(const Mat& m) { return m.max_abs(); }

int count_negatives(const Mat& m) {
    EigenSystem es = eig_sym(m);
    int neg = 0;
    double thresh = 1e-9 * (1.0 + m.frobenius());
    for (double v : es.values)
        if (v < -thresh) ++neg;
    return neg;
}

}  // namespace

TEST_CASE("certificate with empty J is the trivial one") {
    Fixture f = gsc_fixture(two_triangles_bridge(), 61);
    LocalGlobalCertificate cert = build_certificate(f.h, f.cs, 3, 0u);
    CHECK(cert.j_list.empty());
    CHECK(cert.m_count == 0);
    CHECK(max_abs(cert.s_matrix - f.h.to_dense()) == 0.0);
    CHECK(cert.m_matrix.rows() == 6);
    CHECK(cert.s_phi_residual <= 1e-9);
    HaynsworthReport hr = haynsworth_check(cert);
    CHECK(hr.pass);
    SchurCheckReport sc = schur_check(cert, f.h, f.cs);
    CHECK(sc.pass);
}

TEST_CASE("certificate construction identities") {
    Fixture f = gsc_fixture(two_triangles_bridge(), 62);
    for (std::uint32_t J : {1u, 2u, 3u}) {
        for (int k = 1; k <= 6; ++k) {
            LocalGlobalCertificate cert = build_certificate(f.h, f.cs, k, J);

            SUBCASE("") {}  // keep doctest happy about empty bodies
            // R_j(0) phi = 0 for every j in J, hence S phi = lambda phi.
            for (int j : cert.j_list) {
                CMat rj = r_matrix(f.h, f.cs, cert, j, 0.0);
                std::vector<cplx> phi_c(cert.phi.begin(), cert.phi.end());
                std::vector<cplx> out = rj.apply(phi_c);
                CHECK(norm2(out) <= 1e-12 * (1.0 + f.h.frobenius()));
            }
            CHECK(cert.s_phi_residual <= 1e-9);
            CHECK(cert.sum_rj_vs_bob <= 1e-9);
            CHECK(cert.rj_det_max <= 1e-10);
            CHECK(cert.rj_sign_constant);

            // Omega entries match -h_rs phi_r phi_s and are nonzero.
            for (size_t idx = 0; idx < cert.j_list.size(); ++idx) {
                auto [r, s] = f.cs.representative_edges[cert.j_list[idx]];
                double expected =
                    -f.h.off_diagonal[f.g.edge_index(r, s)] * cert.phi[r] * cert.phi[s];
                CHECK(cert.omega[idx] == doctest::Approx(expected).epsilon(1e-12));
                CHECK(std::abs(cert.omega[idx]) > 1e-12);
            }
        }
    }
}

TEST_CASE("R matrices commute for different cycles") {
    Fixture f = gsc_fixture(two_triangles_bridge(), 63);
    LocalGlobalCertificate cert = build_certificate(f.h, f.cs, 2, 3u);
    for (double t : {0.0, 0.7, 2.9}) {
        for (double tp : {0.3, 1.9}) {
            CMat a = r_matrix(f.h, f.cs, cert, 0, t);
            CMat b = r_matrix(f.h, f.cs, cert, 1, tp);
            CMat ab = a * b, ba = b * a;
            double diff = 0.0;
            for (int i = 0; i < 6; ++i)
                for (int j = 0; j < 6; ++j) diff = std::max(diff, std::abs(ab(i, j) - ba(i, j)));
            CHECK(diff <= 1e-14);
        }
    }
}

TEST_CASE("decomposition alpha*h = S + sum R_j(alpha_j) on the subtorus") {
    Fixture f = gsc_fixture(two_triangles_bridge(), 64);
    SplitMix64 rng(91);
    LocalGlobalCertificate cert = build_certificate(f.h, f.cs, 4, 3u);
    for (int trial = 0; trial < 10; ++trial) {
        FluxPoint a{{rng.uniform(0.0, 2 * kPi), rng.uniform(0.0, 2 * kPi)}};
        CMat lhs = torus_action(f.h, f.cs, a).mat;
        CMat rhs = CMat::from_real(cert.s_matrix);
        rhs += r_matrix(f.h, f.cs, cert, 0, a.angles[0]);
        rhs += r_matrix(f.h, f.cs, cert, 1, a.angles[1]);
        double diff = 0.0;
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) diff = std::max(diff, std::abs(lhs(i, j) - rhs(i, j)));
        CHECK(diff <= 1e-10);
    }
}

TEST_CASE("rank-one structure: m negatives, rest zeros and positives") {
    Fixture f = gsc_fixture(two_triangles_bridge(), 65);
    SplitMix64 rng(92);
    LocalGlobalCertificate cert = build_certificate(f.h, f.cs, 3, 3u);
    for (int trial = 0; trial < 8; ++trial) {
        CMat sum(6, 6);
        sum += r_matrix(f.h, f.cs, cert, 0, rng.uniform(0.0, 2 * kPi));
        sum += r_matrix(f.h, f.cs, cert, 1, rng.uniform(0.0, 2 * kPi));
        EigenSystem es = eig_herm(sum);
        // lambda_{m+1} = 0 (ascending, 1-based).
        CHECK(std::abs(es.values[cert.m_count]) <= 1e-9);
    }
}

TEST_CASE("pseudo-inverse demands a one-dimensional kernel") {
    Fixture f = gsc_fixture(two_triangles_bridge(), 66);
    EigenSystem es = eig_sym(f.h.to_dense());
    CHECK_NOTHROW(pseudo_inverse_h_lambda(f.h, es.values[2]));
    // lambda far from the spectrum: kernel dimension 0.
    CHECK_THROWS_AS(pseudo_inverse_h_lambda(f.h, 1e6), NumericalError);
}

TEST_CASE("schur_check: complement equals half the Hessian and S - lambda") {
    Fixture f = gsc_fixture(two_triangles_bridge(), 67);
    for (std::uint32_t eps = 0; eps < 4; ++eps) {
        SupportedMatrix h_eps = apply_symmetry_point(f.h, f.cs, eps);
        for (int k = 1; k <= 6; ++k) {
            JMinusResult jm = j_minus(f.h, f.cs, eps, k);
            for (std::uint32_t J : {jm.mask, 3u ^ jm.mask}) {
                LocalGlobalCertificate cert = build_certificate(h_eps, f.cs, k, J);
                SchurCheckReport sc = schur_check(cert, h_eps, f.cs);
                CHECK(sc.pass);
                CHECK(sc.schur_vs_half_hessian <= sc.tolerance_hessian);
                CHECK(sc.schur_omega_vs_s <= 1e-10);
                if (jm.mask == (3u ^ jm.mask)) break;
            }
        }
    }
}

TEST_CASE("haynsworth additivity on certificates") {
    Fixture f = gsc_fixture(two_triangles_bridge(), 68);
    for (std::uint32_t eps = 0; eps < 4; ++eps) {
        SupportedMatrix h_eps = apply_symmetry_point(f.h, f.cs, eps);
        for (int k = 1; k <= 6; ++k) {
            JMinusResult jm = j_minus(f.h, f.cs, eps, k);
            for (std::uint32_t J : {jm.mask, 3u ^ jm.mask}) {
                LocalGlobalCertificate cert = build_certificate(h_eps, f.cs, k, J);
                HaynsworthReport hr = haynsworth_check(cert);
                CHECK(hr.additivity_h);
                CHECK(hr.additivity_omega);
                CHECK(hr.derived_identity);
                CHECK_FALSE(hr.indeterminate);
                // ind(h - lambda_k) is k-1 for a simple eigenvalue.
                CHECK(cert.inertias.ind_h_lambda == k - 1);
                if (jm.mask == (3u ^ jm.mask)) break;
            }
        }
    }
}

TEST_CASE("haynsworth oracle: random block matrices with invertible lower block") {
    SplitMix64 rng(93);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4, p = 2;
        Mat m(n + p, n + p);
        for (int i = 0; i < n + p; ++i)
            for (int j = i; j < n + p; ++j) m(i, j) = m(j, i) = rng.uniform(-1.0, 1.0);
        // Make the lower-right block solidly invertible.
        for (int i = n; i < n + p; ++i) m(i, i) += (rng.next_sign() > 0 ? 3.0 : -3.0);

        Mat omega(p, p), b(n, p), a(n, n);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) omega(i, j) = m(n + i, n + j);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < p; ++j) b(i, j) = m(i, n + j);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = m(i, j);

        // Invert omega through its eigendecomposition.
        EigenSystem oe = eig_sym(omega);
        Mat omega_inv(p, p);
        for (int t = 0; t < p; ++t) {
            std::vector<double> v = oe.real_vector(t);
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < p; ++j) omega_inv(i, j) += v[i] * v[j] / oe.values[t];
        }
        Mat schur = a - b * omega_inv * b.transposed();
        CHECK(count_negatives(m) == count_negatives(schur) + count_negatives(omega));
    }
}

TEST_CASE("local minimum restriction: ind(M/(h-lambda)) = 0 and lambda_{k-m}(S) = lambda") {
    Fixture f = gsc_fixture(two_triangles_bridge(), 69);
    for (std::uint32_t eps = 0; eps < 4; ++eps) {
        SupportedMatrix h_eps = apply_symmetry_point(f.h, f.cs, eps);
        for (int k = 1; k <= 6; ++k) {
            JMinusResult jm = j_minus(f.h, f.cs, eps, k);
            std::uint32_t j_plus = 3u ^ jm.mask;  // ascending directions
            LocalGlobalCertificate cert = build_certificate(h_eps, f.cs, k, j_plus);
            CHECK(cert.inertias.ind_schur_h == 0);
            REQUIRE(k - cert.m_count >= 1);
            EigenSystem se = eig_sym(cert.s_matrix);
            CHECK(std::abs(se.values[k - cert.m_count - 1] - cert.lambda) <= 1e-9);
        }
    }
}

TEST_CASE("weyl_localglobal_check on a generic instance") {
    Fixture f = gsc_fixture(two_triangles_bridge(), 70);
    SUBCASE("min/max inequalities hold on the descending and ascending subtori") {
        for (std::uint32_t eps = 0; eps < 4; ++eps) {
            for (int k = 1; k <= 6; ++k) {
                JMinusResult jm = j_minus(f.h, f.cs, eps, k);
                for (std::uint32_t J : {jm.mask, 3u ^ jm.mask}) {
                    WeylGridReport r = weyl_localglobal_check(f.h, f.cs, eps, k, J, 12);
                    CHECK(r.pass);
                    CHECK(r.minmax_applicable);
                    CHECK(r.max_rank_eigenvalue <= 1e-9);
                    CHECK(r.worst_weyl_point.size() == static_cast<size_t>(std::popcount(J)));
                    for (double t : r.worst_minmax_point) {
                        CHECK(t >= 0.0);
                        CHECK(t < 2 * kPi);
                    }
                    if (jm.mask == (3u ^ jm.mask)) break;
                }
            }
        }
    }
    SUBCASE("empty J is a vacuous pass") {
        WeylGridReport r = weyl_localglobal_check(f.h, f.cs, 0, 2, 0u, 12);
        CHECK(r.pass);
        CHECK(r.grid_points == 1);
    }
    SUBCASE("grid cap") {
        CHECK_THROWS_AS(weyl_localglobal_check(f.h, f.cs, 0, 1, 3u, 0), InputError);
    }
}

TEST_CASE("certificate rejects non-simple eigenvalues") {
    Graph g = build_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    CycleStructure cs = analyze_cycles(g);
    SupportedMatrix h = make_supported(g, {0, 0, 0}, {1, 1, 1});
    CHECK_THROWS_AS(build_certificate(h, cs, 1, 1u), NonSimpleEigenvalue);
}
