#include <doctest.h>

#include <cmath>
#include <limits>

#include "nodal/errors.hpp"
#include "nodal/instances.hpp"
#include "nodal/lattice.hpp"
#include "nodal/nodal_count.hpp"
#include "nodal/spectra.hpp"

using namespace nodal;

namespace {

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

Graph path_graph(int n) {
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
    return build_graph(n, edges);
}

Graph triangle_pendant() { return build_graph(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}}); }

Graph two_triangles_bridge() {
    return build_graph(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
}

}  // namespace

TEST_CASE("nodal count on trees is exactly k-1") {
    Fixture f = gsc_fixture(path_graph(5), 1);
    for (int k = 1; k <= 5; ++k) {
        CHECK(nodal_count(f.h, k) == k - 1);
        CHECK(nodal_surplus(f.h, k) == 0);
    }
}

TEST_CASE("nodal count matches a direct per-edge sign scan") {
    Fixture f = gsc_fixture(triangle_pendant(), 2);
    EigenSystem es = eig_sym(f.h.to_dense());
    for (int k = 1; k <= 4; ++k) {
        std::vector<double> phi = es.real_vector(k - 1);
        int direct = 0;
        for (size_t e = 0; e < f.g.edges.size(); ++e) {
            auto [r, s] = f.g.edges[e];
            if (phi[r] * f.h.off_diagonal[e] * phi[s] > 0.0) ++direct;
        }
        CHECK(nodal_count(f.h, k) == direct);
    }
}

TEST_CASE("surplus stays within [0, beta] over all signings") {
    Fixture f = gsc_fixture(two_triangles_bridge(), 3);
    for (std::uint32_t eps = 0; eps < 4; ++eps) {
        SupportedMatrix hs = apply_symmetry_point(f.h, f.cs, eps);
        for (int k = 1; k <= 6; ++k) {
            int sigma = nodal_surplus(hs, k);
            CHECK(sigma >= 0);
            CHECK(sigma <= f.cs.beta);
        }
    }
}

TEST_CASE("nodal count is invariant under global eigenvector sign flip") {
    Fixture f = gsc_fixture(triangle_pendant(), 4);
    EigenSystem es = eig_sym(f.h.to_dense());
    for (int k = 1; k <= 4; ++k) {
        std::vector<double> phi = es.real_vector(k - 1);
        int direct_plus = 0, direct_minus = 0;
        for (size_t e = 0; e < f.g.edges.size(); ++e) {
            auto [r, s] = f.g.edges[e];
            if (phi[r] * f.h.off_diagonal[e] * phi[s] > 0.0) ++direct_plus;
            if ((-phi[r]) * f.h.off_diagonal[e] * (-phi[s]) > 0.0) ++direct_minus;
        }
        CHECK(direct_plus == direct_minus);
        CHECK(nodal_count(f.h, k) == direct_plus);
    }
}

TEST_CASE("surplus is gauge invariant across a full orbit") {
    Fixture f = gsc_fixture(triangle_pendant(), 5);
    SigningOrbits orbits = signing_orbits(f.g, f.cs);
    for (size_t o = 0; o < orbits.canonical_patterns.size(); ++o) {
        SupportedMatrix canon =
            apply_signs(f.h, signs_from_mask(f.g, orbits.canonical_patterns[o]));
        for (int k = 1; k <= 4; ++k) {
            int expected = nodal_surplus(canon, k);
            for (std::uint64_t mask = 0; mask < 16; ++mask) {
                EdgeSigns signs = signs_from_mask(f.g, mask);
                if (symmetry_point_of(f.g, f.cs, signs) != orbits.representatives[o]) continue;
                CHECK(nodal_surplus(apply_signs(f.h, signs), k) == expected);
            }
        }
    }
}

TEST_CASE("margin errors carry diagnostics") {
    // Degenerate spectrum: triangle adjacency has eigenvalues (-1,-1,2).
    Graph g = build_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    SupportedMatrix h = make_supported(g, {0, 0, 0}, {1, 1, 1});
    CHECK_THROWS_AS(nodal_count(h, 1), NonSimpleEigenvalue);

    // Vanishing eigenvector: path 0-1-2 with equal couplings, k=2 vector
    // vanishes at the middle vertex.
    Graph p = path_graph(3);
    SupportedMatrix hp = make_supported(p, {0, 0, 0}, {1, 1});
    CHECK_THROWS_AS(nodal_count(hp, 2), VanishingEigenvector);
    CHECK_THROWS_AS(nodal_count(hp, 5), InputError);  // k out of range
}

TEST_CASE("check_gsc") {
    SUBCASE("fails on the degenerate triangle") {
        Graph g = build_graph(3, {{0, 1}, {0, 2}, {1, 2}});
        SupportedMatrix h = make_supported(g, {0, 0, 0}, {-1, -1, -1});
        CycleStructure cs = analyze_cycles(g);
        GscReport r = check_gsc(h, cs);
        CHECK_FALSE(r.pass);
        CHECK(r.min_gap <= 1e-10);
        CHECK(r.full_enumeration);
        CHECK(r.signings_checked == 8);
        CHECK(r.failing_signing.has_value());
    }
    SUBCASE("fails strict support when an edge value is zero") {
        Graph g = triangle_pendant();
        SupportedMatrix h = make_supported(g, {1, 2, 3, 4}, {1.0, 1.0, 0.0, 1.0});
        GscReport r = check_gsc(h, analyze_cycles(g));
        CHECK_FALSE(r.pass);
        CHECK_FALSE(r.strict_support_ok);
    }
    SUBCASE("passes on the canonical diag(1..n)+xi family") {
        Graph g = two_triangles_bridge();
        SupportedMatrix h = canonical_instance(g, 0.01, 9);
        GscReport r = check_gsc(h, analyze_cycles(g));
        CHECK(r.pass);
        CHECK(r.min_gap > 0.1);  // eigenvalues near distinct integers
    }
    SUBCASE("full enumeration margins equal the symmetry-point margins") {
        Fixture f = gsc_fixture(triangle_pendant(), 6);
        GscReport full = check_gsc(f.h, f.cs);
        REQUIRE(full.full_enumeration);
        double gap = std::numeric_limits<double>::infinity();
        double entry = gap;
        for (std::uint32_t eps = 0; eps < 2; ++eps) {
            SpectralMargins m =
                spectral_margins(eig_sym(apply_symmetry_point(f.h, f.cs, eps).to_dense()));
            gap = std::min(gap, m.min_gap);
            entry = std::min(entry, m.min_vector_entry);
        }
        CHECK(full.min_gap == doctest::Approx(gap).epsilon(1e-9));
        CHECK(full.min_entry == doctest::Approx(entry).epsilon(1e-9));
    }
}

TEST_CASE("check_distinct_signings") {
    SUBCASE("trees pass trivially") {
        Fixture f = gsc_fixture(path_graph(4), 7);
        for (int k = 1; k <= 4; ++k) {
            DistinctReport r = check_distinct_signings(f.h, f.cs, k);
            CHECK(r.pass);
            CHECK(std::isinf(r.min_separation));
        }
    }
    SUBCASE("canonical family passes at a resolvable perturbation scale") {
        // Separations across signings decay like xi^L with the closed-walk
        // length L through a cycle, so a certifiable margin needs short walks
        // and a not-too-small xi: triangle+pendant at xi = 0.2 gives
        // separations ~1e-5 while the eigenvalues stay near 1..n.
        Graph g = triangle_pendant();
        CycleStructure cs = analyze_cycles(g);
        SupportedMatrix h = canonical_instance(g, 0.2, 10);
        REQUIRE(check_gsc(h, cs).pass);
        for (int k = 1; k <= 4; ++k) {
            DistinctReport r = check_distinct_signings(h, cs, k);
            CHECK(r.pass);
            CHECK(r.min_separation > 1e-6);
        }
    }
    SUBCASE("direct comparison of the four lambda values") {
        Fixture f = gsc_fixture(two_triangles_bridge(), 8);
        int k = 3;
        std::vector<double> lams;
        for (std::uint32_t eps = 0; eps < 4; ++eps)
            lams.push_back(
                eig_sym(apply_symmetry_point(f.h, f.cs, eps).to_dense()).values[k - 1]);
        double min_sep = std::numeric_limits<double>::infinity();
        for (size_t a = 0; a < 4; ++a)
            for (size_t b = a + 1; b < 4; ++b)
                min_sep = std::min(min_sep, std::abs(lams[a] - lams[b]));
        DistinctReport r = check_distinct_signings(f.h, f.cs, k);
        CHECK(r.min_separation == doctest::Approx(min_sep).epsilon(1e-9));
        CHECK(r.pass);
    }
}

TEST_CASE("surplus_distribution") {
    SUBCASE("tree: a single count at surplus zero") {
        Fixture f = gsc_fixture(path_graph(4), 11);
        for (int k = 1; k <= 4; ++k) {
            SurplusDistribution d = surplus_distribution(f.h, f.cs, k);
            CHECK(d.counts == std::vector<std::uint64_t>{1});
            CHECK(d.per_signing_counts == std::vector<std::uint64_t>{8});
            CHECK(binomial_verdict(d));
        }
    }
    SUBCASE("triangle+pendant: counts (1,1) for every k") {
        Fixture f = gsc_fixture(triangle_pendant(), 12);
        for (int k = 1; k <= 4; ++k) {
            SurplusDistribution d = surplus_distribution(f.h, f.cs, k);
            CHECK(d.counts == std::vector<std::uint64_t>{1, 1});
            CHECK(binomial_verdict(d));
        }
    }
    SUBCASE("two triangles + bridge: counts (1,2,1) for every k") {
        Fixture f = gsc_fixture(two_triangles_bridge(), 13);
        SigningOrbits orbits = signing_orbits(f.g, f.cs);
        for (int k = 1; k <= 6; ++k) {
            SurplusDistribution d = surplus_distribution(f.h, f.cs, k);
            CHECK(d.counts == std::vector<std::uint64_t>{1, 2, 1});
            for (size_t j = 0; j < d.counts.size(); ++j)
                CHECK(d.per_signing_counts[j] == d.counts[j] * orbits.orbit_size);
            CHECK(binomial_verdict(d));
        }
    }
    SUBCASE("total mass is 2^beta") {
        Fixture f = gsc_fixture(two_triangles_bridge(), 14);
        SurplusDistribution d = surplus_distribution(f.h, f.cs, 2);
        std::uint64_t total = 0;
        for (std::uint64_t c : d.counts) total += c;
        CHECK(total == 4);
    }
}
