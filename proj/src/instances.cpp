#include "nodal/instances.hpp"

#include <algorithm>
#include <cmath>

#include "nodal/errors.hpp"

namespace nodal {

std::uint64_t SplitMix64::next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double SplitMix64::next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

int SplitMix64::next_sign() { return (next() & 1ull) ? -1 : 1; }

namespace {

SupportedMatrix draw_instance(const Graph& g, SplitMix64& rng, const GeneratorConfig& cfg) {
    std::vector<double> diag(g.n);
    for (int r = 0; r < g.n; ++r) diag[r] = r + rng.uniform(-cfg.diag_jitter, cfg.diag_jitter);
    std::vector<double> off(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e)
        off[e] = rng.next_sign() * rng.uniform(cfg.offdiag_low, cfg.offdiag_high);
    return make_supported(g, std::move(diag), std::move(off));
}

}  // namespace

SupportedMatrix random_gsc_instance(const Graph& g, const CycleStructure& cs,
                                    const GeneratorConfig& cfg, const Tolerances& tol) {
    if (cfg.offdiag_low <= 0.0) throw InputError("offdiag_low must be > 0");
    if (cfg.offdiag_high < cfg.offdiag_low) throw InputError("offdiag_high < offdiag_low");
    if (cfg.max_retries < 1) throw InputError("max_retries must be >= 1");

    SplitMix64 rng(cfg.seed);
    double best_gap = 0.0, best_entry = 0.0;
    for (int attempt = 0; attempt < cfg.max_retries; ++attempt) {
        SupportedMatrix h = draw_instance(g, rng, cfg);
        GscReport gsc = check_gsc(h, cs, tol);
        best_gap = std::max(best_gap, gsc.min_gap);
        best_entry = std::max(best_entry, gsc.min_entry);
        if (!gsc.pass) continue;
        bool distinct = true;
        for (int k = 1; k <= g.n && distinct; ++k)
            distinct = check_distinct_signings(h, cs, k, tol).pass;
        if (distinct) return h;
    }
    throw RetriesExhausted(cfg.max_retries, best_gap, best_entry);
}

SupportedMatrix canonical_instance(const Graph& g, double xi_scale, std::uint64_t seed) {
    if (xi_scale <= 0.0) throw InputError("xi_scale must be > 0 (strict support)");
    SplitMix64 rng(seed);
    std::vector<double> diag(g.n);
    for (int r = 0; r < g.n; ++r) diag[r] = r + 1;
    std::vector<double> off(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e)
        off[e] = rng.next_sign() * rng.uniform(0.5 * xi_scale, xi_scale);
    return make_supported(g, std::move(diag), std::move(off));
}

FlatBandInstance flat_band_instance() {
    // Free parameters fixed: unit couplings, zero diagonal on the 2x2 block
    // {1,2}, block off-diagonal 1. The block eigenpair (1, (1,1)) extends to
    // phi = (0, 1, 1, -2) with h_33 = 1.
    Graph g = build_graph(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}});
    std::vector<double> diag{0.0, 0.0, 0.0, 1.0};
    std::vector<double> off(g.edges.size(), 1.0);
    FlatBandInstance out{make_supported(g, std::move(diag), std::move(off)), 1.0, 0};
    return out;
}

}  // namespace nodal
