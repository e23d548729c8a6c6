#include "nodal/matrix_space.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <string>

#include "nodal/errors.hpp"

namespace nodal {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxEnumerationEdges = 20;
constexpr int kMaxBeta = 20;  // bitmask-exact combinatorics

void require_small_beta(int beta) {
    if (beta > kMaxBeta)
        throw InputError("beta=" + std::to_string(beta) + " exceeds the bitmask limit " +
                         std::to_string(kMaxBeta));
}

}  // namespace

Mat SupportedMatrix::to_dense() const {
    Mat m(graph.n, graph.n);
    for (int i = 0; i < graph.n; ++i) m(i, i) = diagonal[i];
    for (size_t e = 0; e < graph.edges.size(); ++e) {
        auto [r, s] = graph.edges[e];
        m(r, s) = m(s, r) = off_diagonal[e];
    }
    return m;
}

double SupportedMatrix::frobenius() const { return to_dense().frobenius(); }

SupportedMatrix make_supported(const Graph& g, std::vector<double> diagonal,
                               std::vector<double> off_diagonal) {
    if (static_cast<int>(diagonal.size()) != g.n)
        throw InputError("matrix diagonal size does not match vertex count");
    if (off_diagonal.size() != g.edges.size())
        throw InputError("matrix off-diagonal size does not match edge count");
    for (double v : diagonal)
        if (!std::isfinite(v)) throw InputError("matrix has non-finite diagonal entry");
    for (double v : off_diagonal)
        if (!std::isfinite(v)) throw InputError("matrix has non-finite edge entry");
    return SupportedMatrix{g, std::move(diagonal), std::move(off_diagonal)};
}

bool is_strictly_supported(const SupportedMatrix& h, const Tolerances& tol) {
    double scale = 0.0;
    for (double v : h.diagonal) scale = std::max(scale, std::abs(v));
    for (double v : h.off_diagonal) scale = std::max(scale, std::abs(v));
    double threshold = tol.strict_support * scale;
    for (double v : h.off_diagonal)
        if (std::abs(v) <= threshold) return false;
    return true;
}

FluxPoint FluxPoint::symmetry_point(int beta, std::uint32_t eps) {
    require_small_beta(beta);
    FluxPoint p = zero(beta);
    for (int j = 0; j < beta; ++j)
        if (eps >> j & 1u) p.angles[j] = std::numbers::pi;
    return p;
}

double reduce_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r == kTwoPi ? 0.0 : r;
}

MagneticMatrix torus_action(const SupportedMatrix& h, const EdgePhases& alpha) {
    if (alpha.phases.size() != h.graph.edges.size())
        throw InputError("torus_action: phase pattern does not match the graph");
    const int n = h.graph.n;
    CMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = h.diagonal[i];
    for (size_t e = 0; e < h.graph.edges.size(); ++e) {
        auto [r, s] = h.graph.edges[e];
        cplx v = std::polar(1.0, alpha.phases[e]) * h.off_diagonal[e];
        m(r, s) = v;
        m(s, r) = std::conj(v);
    }
    return MagneticMatrix{std::move(m)};
}

EdgePhases to_edge_phases(const Graph& g, const CycleStructure& cs, const FluxPoint& alpha) {
    if (alpha.beta() != cs.beta)
        throw InputError("flux point dimension does not match the cycle structure");
    EdgePhases phases = EdgePhases::zero(g);
    for (int j = 0; j < cs.beta; ++j) {
        auto [r, s] = cs.representative_edges[j];
        phases.phases[g.edge_index(r, s)] = reduce_angle(alpha.angles[j]);
    }
    return phases;
}

MagneticMatrix torus_action(const SupportedMatrix& h, const CycleStructure& cs,
                            const FluxPoint& alpha) {
    return torus_action(h, to_edge_phases(h.graph, cs, alpha));
}

MagneticMatrix gauge_transform(const MagneticMatrix& h, const GaugeVector& theta) {
    const int n = h.n();
    if (static_cast<int>(theta.theta.size()) != n)
        throw InputError("gauge vector size does not match the matrix");
    CMat m(n, n);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
            m(r, s) = std::polar(1.0, theta.theta[r] - theta.theta[s]) * h.mat(r, s);
    return MagneticMatrix{std::move(m)};
}

EdgePhases gauge_phases(const Graph& g, const GaugeVector& theta) {
    if (static_cast<int>(theta.theta.size()) != g.n)
        throw InputError("gauge vector size does not match the graph");
    EdgePhases phases = EdgePhases::zero(g);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        auto [r, s] = g.edges[e];
        phases.phases[e] = theta.theta[r] - theta.theta[s];
    }
    return phases;
}

double flux(const Graph& g, const EdgePhases& alpha, const std::vector<int>& cycle) {
    if (alpha.phases.size() != g.edges.size())
        throw InputError("flux: phase pattern does not match the graph");
    std::vector<int> walk = cycle;
    if (walk.size() >= 2 && walk.front() == walk.back()) walk.pop_back();
    if (walk.size() < 2) throw InputError("flux: cycle too short");

    double total = 0.0;
    for (size_t i = 0; i < walk.size(); ++i) {
        int u = walk[i], v = walk[(i + 1) % walk.size()];
        int e = g.edge_index(std::min(u, v), std::max(u, v));
        if (e < 0)
            throw InputError("flux: walk uses non-edge (" + std::to_string(u) + "," +
                             std::to_string(v) + ")");
        total += (u < v) ? alpha.phases[e] : -alpha.phases[e];
    }
    return reduce_angle(total);
}

FluxReduction reduce_to_flux(const Graph& g, const CycleStructure& cs, const EdgePhases& alpha) {
    if (alpha.phases.size() != g.edges.size())
        throw InputError("reduce_to_flux: phase pattern does not match the graph");

    // Solve theta_r - theta_s = alpha_rs on tree edges, rooted at vertex 0.
    std::vector<double> theta(g.n, 0.0);
    std::vector<char> in_tree(g.edges.size(), 0);
    for (const auto& [r, s] : cs.tree_edges) in_tree[g.edge_index(r, s)] = 1;

    std::vector<char> visited(g.n, 0);
    std::deque<int> queue{0};
    visited[0] = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.adjacency[v]) {
            int e = g.edge_index(std::min(v, w), std::max(v, w));
            if (!in_tree[e] || visited[w]) continue;
            visited[w] = 1;
            // alpha on (min,max); phases are antisymmetric.
            double a_vw = (v < w) ? alpha.phases[e] : -alpha.phases[e];
            theta[w] = theta[v] - a_vw;
            queue.push_back(w);
        }
    }

    FluxPoint f = FluxPoint::zero(cs.beta);
    for (int j = 0; j < cs.beta; ++j) {
        auto [r, s] = cs.representative_edges[j];
        int e = g.edge_index(r, s);
        f.angles[j] = reduce_angle(alpha.phases[e] - (theta[r] - theta[s]));
    }
    for (double& t : theta) t = reduce_angle(t);
    return FluxReduction{std::move(f), GaugeVector{std::move(theta)}};
}

SupportedMatrix apply_signs(const SupportedMatrix& h, const EdgeSigns& signs) {
    if (signs.signs.size() != h.off_diagonal.size())
        throw InputError("apply_signs: sign pattern does not match the edge set");
    SupportedMatrix out = h;
    for (size_t e = 0; e < out.off_diagonal.size(); ++e) {
        int s = signs.signs[e];
        if (s != 1 && s != -1) throw InputError("apply_signs: signs must be +1 or -1");
        out.off_diagonal[e] *= s;
    }
    return out;
}

SupportedMatrix apply_symmetry_point(const SupportedMatrix& h, const CycleStructure& cs,
                                     std::uint32_t eps) {
    require_small_beta(cs.beta);
    if ((eps >> cs.beta) != 0) throw InputError("apply_symmetry_point: eps out of range");
    SupportedMatrix out = h;
    for (int j = 0; j < cs.beta; ++j) {
        if (!(eps >> j & 1u)) continue;
        auto [r, s] = cs.representative_edges[j];
        out.off_diagonal[h.graph.edge_index(r, s)] *= -1.0;
    }
    return out;
}

std::uint32_t symmetry_point_of(const Graph& g, const CycleStructure& cs,
                                const EdgeSigns& signs) {
    if (signs.signs.size() != g.edges.size())
        throw InputError("symmetry_point_of: sign pattern does not match the edge set");
    std::uint32_t eps = 0;
    for (int j = 0; j < cs.beta; ++j) {
        int product = 1;
        const auto& cycle = cs.fundamental_cycles[j];
        for (size_t i = 0; i < cycle.size(); ++i) {
            int u = cycle[i], v = cycle[(i + 1) % cycle.size()];
            product *= signs.signs[g.edge_index(std::min(u, v), std::max(u, v))];
        }
        if (product < 0) eps |= 1u << j;
    }
    return eps;
}

std::optional<std::uint32_t> snap_to_symmetry_point(const FluxPoint& alpha, double snap_tol) {
    std::uint32_t eps = 0;
    for (int j = 0; j < alpha.beta(); ++j) {
        double a = reduce_angle(alpha.angles[j]);
        double to_zero = std::min(a, kTwoPi - a);
        double to_pi = std::abs(a - std::numbers::pi);
        if (to_pi <= snap_tol)
            eps |= 1u << j;
        else if (to_zero > snap_tol)
            return std::nullopt;
    }
    return eps;
}

EdgeSigns signs_from_mask(const Graph& g, std::uint64_t mask) {
    EdgeSigns s;
    s.signs.resize(g.edges.size());
    for (size_t e = 0; e < g.edges.size(); ++e) s.signs[e] = (mask >> e & 1ull) ? -1 : 1;
    return s;
}

SigningOrbits signing_orbits(const Graph& g, const CycleStructure& cs) {
    const int ne = g.edge_count();
    if (ne > kMaxEnumerationEdges)
        throw InputError("signing_orbits: enumeration limited to " +
                         std::to_string(kMaxEnumerationEdges) + " edges");

    // Gauge generator theta_r = pi flips every edge at r.
    std::vector<std::uint64_t> incident(g.n, 0);
    for (size_t e = 0; e < g.edges.size(); ++e) {
        incident[g.edges[e].first] |= 1ull << e;
        incident[g.edges[e].second] |= 1ull << e;
    }

    const std::uint64_t total = 1ull << ne;
    std::vector<char> seen(total, 0);
    std::vector<std::uint64_t> sizes;
    SigningOrbits out;
    std::vector<std::pair<std::uint32_t, std::uint64_t>> reps;  // (eps, canonical pattern)

    for (std::uint64_t start = 0; start < total; ++start) {
        if (seen[start]) continue;
        std::uint64_t size = 0, canonical = start;
        std::deque<std::uint64_t> queue{start};
        seen[start] = 1;
        while (!queue.empty()) {
            std::uint64_t p = queue.front();
            queue.pop_front();
            ++size;
            canonical = std::min(canonical, p);
            for (int r = 0; r < g.n; ++r) {
                std::uint64_t q = p ^ incident[r];
                if (!seen[q]) {
                    seen[q] = 1;
                    queue.push_back(q);
                }
            }
        }
        sizes.push_back(size);
        reps.emplace_back(symmetry_point_of(g, cs, signs_from_mask(g, canonical)), canonical);
    }

    for (std::uint64_t s : sizes)
        if (s != sizes.front())
            throw NumericalError("signing orbits have unequal sizes " + std::to_string(s) +
                                 " vs " + std::to_string(sizes.front()));
    std::sort(reps.begin(), reps.end());
    for (size_t i = 0; i + 1 < reps.size(); ++i)
        if (reps[i].first == reps[i + 1].first)
            throw NumericalError("two distinct orbits map to the same symmetry point");

    out.orbit_count = sizes.size();
    out.orbit_size = sizes.empty() ? 0 : sizes.front();
    for (const auto& [eps, pattern] : reps) {
        out.representatives.push_back(eps);
        out.canonical_patterns.push_back(pattern);
    }
    if (out.orbit_count != (1ull << cs.beta))
        throw NumericalError("orbit count " + std::to_string(out.orbit_count) +
                             " does not equal 2^beta");
    return out;
}

}  // namespace nodal
