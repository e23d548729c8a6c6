#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nodal/errors.hpp"
#include "nodal/instances.hpp"
#include "nodal/magnetic.hpp"

using namespace nodal;

namespace {

Graph triangle_pendant() { return build_graph(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}}); }

Graph two_triangles_bridge() {
    return build_graph(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
}

}  // namespace

TEST_CASE("splitmix stream is the documented one") {
    // First outputs for seed 1; frozen so any reimplementation can replay the
    // exact instance files.
    SplitMix64 rng(1);
    CHECK(rng.next() == 0x910A2DEC89025CC1ull);
    CHECK(rng.next() == 0xBEEB8DA1658EEC67ull);
    CHECK(rng.next() == 0xF893A2EEFB32555Eull);
    SplitMix64 rng2(1);
    double d = rng2.next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
    CHECK(d == doctest::Approx(0x910A2DEC89025CC1ull * 0x1.0p-64).epsilon(1e-12));
}

TEST_CASE("random_gsc_instance") {
    SUBCASE("path graph: trees pass immediately") {
        Graph g = build_graph(4, {{0, 1}, {1, 2}, {2, 3}});
        CycleStructure cs = analyze_cycles(g);
        GeneratorConfig cfg;
        cfg.seed = 1;
        SupportedMatrix h = random_gsc_instance(g, cs, cfg);
        CHECK(check_gsc(h, cs).pass);
    }
    SUBCASE("triangle+pendant: passes both checks within default retries") {
        Graph g = triangle_pendant();
        CycleStructure cs = analyze_cycles(g);
        GeneratorConfig cfg;
        cfg.seed = 1;
        SupportedMatrix h = random_gsc_instance(g, cs, cfg);
        CHECK(check_gsc(h, cs).pass);
        for (int k = 1; k <= 4; ++k) CHECK(check_distinct_signings(h, cs, k).pass);
    }
    SUBCASE("same seed gives byte-identical matrices") {
        Graph g = two_triangles_bridge();
        CycleStructure cs = analyze_cycles(g);
        GeneratorConfig cfg;
        cfg.seed = 7;
        SupportedMatrix a = random_gsc_instance(g, cs, cfg);
        SupportedMatrix b = random_gsc_instance(g, cs, cfg);
        CHECK(a.diagonal == b.diagonal);
        CHECK(a.off_diagonal == b.off_diagonal);
    }
    SUBCASE("draw ranges honor the config") {
        Graph g = triangle_pendant();
        CycleStructure cs = analyze_cycles(g);
        GeneratorConfig cfg;
        cfg.seed = 3;
        SupportedMatrix h = random_gsc_instance(g, cs, cfg);
        for (int r = 0; r < 4; ++r) CHECK(std::abs(h.diagonal[r] - r) <= cfg.diag_jitter);
        for (double o : h.off_diagonal) {
            CHECK(std::abs(o) >= cfg.offdiag_low);
            CHECK(std::abs(o) <= cfg.offdiag_high);
        }
    }
    SUBCASE("config validation") {
        Graph g = triangle_pendant();
        CycleStructure cs = analyze_cycles(g);
        GeneratorConfig bad;
        bad.offdiag_low = 0.0;
        CHECK_THROWS_AS(random_gsc_instance(g, cs, bad), InputError);
        bad = GeneratorConfig{};
        bad.max_retries = 0;
        CHECK_THROWS_AS(random_gsc_instance(g, cs, bad), InputError);
    }
}

TEST_CASE("canonical_instance") {
    Graph g = two_triangles_bridge();
    SUBCASE("eigenvalues stay near 1..n (Weyl perturbation bound)") {
        SupportedMatrix h = canonical_instance(g, 0.01, 4);
        EigenSystem es = eig_sym(h.to_dense());
        for (int k = 1; k <= 6; ++k) CHECK(std::abs(es.values[k - 1] - k) <= 0.2);
    }
    SUBCASE("entry ranges and determinism") {
        SupportedMatrix h = canonical_instance(g, 0.01, 4);
        for (int r = 0; r < 6; ++r) CHECK(h.diagonal[r] == r + 1);
        for (double o : h.off_diagonal) {
            CHECK(std::abs(o) >= 0.005);
            CHECK(std::abs(o) <= 0.01);
        }
        SupportedMatrix h2 = canonical_instance(g, 0.01, 4);
        CHECK(h.off_diagonal == h2.off_diagonal);
    }
    SUBCASE("strict support requires xi_scale > 0") {
        CHECK_THROWS_AS(canonical_instance(g, 0.0, 1), InputError);
        CHECK_THROWS_AS(canonical_instance(g, -1.0, 1), InputError);
    }
}

TEST_CASE("flat_band_instance") {
    FlatBandInstance inst = flat_band_instance();
    CycleStructure cs = analyze_cycles(inst.h.graph);
    REQUIRE(cs.beta == 1);
    CHECK(inst.cycle == 0);
    CHECK(inst.lambda == 1.0);

    SUBCASE("the eigenvector vanishes at the degree-3 vertex") {
        EigenSystem es = eig_sym(inst.h.to_dense());
        bool found = false;
        for (int k = 0; k < 4; ++k) {
            if (std::abs(es.values[k] - inst.lambda) > 1e-12) continue;
            // Any vector in the lambda eigenspace vanishing at vertex 0 will
            // do; with a simple eigenvalue the solver's vector must vanish.
            if (std::abs(es.vectors(0, k)) <= 1e-10) found = true;
        }
        CHECK(found);
    }
    SUBCASE("lambda persists in the spectrum for all sampled fluxes") {
        for (double t : {std::numbers::pi / 7, std::numbers::pi / 3, std::numbers::pi / 2, 2.0}) {
            FluxPoint a{{t}};
            EigenSystem es = eigensystem_at(inst.h, cs, a);
            double closest = 1e9;
            for (double v : es.values) closest = std::min(closest, std::abs(v - inst.lambda));
            CHECK(closest <= 1e-9);
        }
    }
    SUBCASE("fails the generic condition by construction") {
        CHECK_FALSE(check_gsc(inst.h, cs).pass);
    }
}

TEST_CASE("generator never emits a matrix that fails its own checks") {
    // Post-validation property over a few seeds and both small graphs.
    for (std::uint64_t seed = 100; seed < 105; ++seed) {
        for (const Graph& g : {triangle_pendant(), two_triangles_bridge()}) {
            CycleStructure cs = analyze_cycles(g);
            GeneratorConfig cfg;
            cfg.seed = seed;
            SupportedMatrix h = random_gsc_instance(g, cs, cfg);
            CHECK(check_gsc(h, cs).pass);
            CHECK(is_strictly_supported(h));
        }
    }
}
