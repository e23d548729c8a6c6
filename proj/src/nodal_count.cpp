#include "nodal/nodal_count.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
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

// Gap of values[k-1] to its nearest neighbor.
double simplicity_gap(const EigenSystem& es, int k) {
    double gap = std::numeric_limits<double>::infinity();
    if (k - 2 >= 0) gap = std::min(gap, es.values[k - 1] - es.values[k - 2]);
    if (k < es.n()) gap = std::min(gap, es.values[k] - es.values[k - 1]);
    return gap;
}

int count_from_vector(const SupportedMatrix& h, const std::vector<double>& phi) {
    int count = 0;
    for (size_t e = 0; e < h.graph.edges.size(); ++e) {
        auto [r, s] = h.graph.edges[e];
        if (phi[r] * h.off_diagonal[e] * phi[s] > 0.0) ++count;
    }
    return count;
}

}  // namespace

int nodal_count(const SupportedMatrix& h, int k, const Tolerances& tol) {
    require_k_range(k, h.n());
    EigenSystem es = eig_sym(h.to_dense(), tol);

    double gap_threshold = tol.simplicity * (1.0 + h.frobenius());
    double gap = simplicity_gap(es, k);
    if (gap < gap_threshold) throw NonSimpleEigenvalue(k, gap, gap_threshold);
    double entry = es.min_entry_magnitude[k - 1];
    if (entry < tol.vanishing) throw VanishingEigenvector(k, entry, tol.vanishing);

    return count_from_vector(h, es.real_vector(k - 1));
}

int nodal_surplus(const SupportedMatrix& h, int k, const Tolerances& tol) {
    return nodal_count(h, k, tol) - (k - 1);
}

GscReport check_gsc(const SupportedMatrix& h, const CycleStructure& cs, const Tolerances& tol) {
    GscReport report;
    report.strict_support_ok = is_strictly_supported(h, tol);
    report.full_enumeration = h.graph.edge_count() <= 20;
    report.signings_checked =
        report.full_enumeration ? (1ull << h.graph.edge_count()) : (1ull << cs.beta);

    struct Worst {
        double gap = std::numeric_limits<double>::infinity();
        double entry = std::numeric_limits<double>::infinity();
        std::uint64_t gap_mask = 0, entry_mask = 0;
    };

    std::vector<Worst> partial = parallel_map<Worst>(
        report.signings_checked, [&](std::uint64_t begin, std::uint64_t end) {
            Worst w;
            for (std::uint64_t mask = begin; mask < end; ++mask) {
                SupportedMatrix signed_h =
                    report.full_enumeration
                        ? apply_signs(h, signs_from_mask(h.graph, mask))
                        : apply_symmetry_point(h, cs, static_cast<std::uint32_t>(mask));
                SpectralMargins m = spectral_margins(eig_sym(signed_h.to_dense(), tol));
                if (m.min_gap < w.gap) {
                    w.gap = m.min_gap;
                    w.gap_mask = mask;
                }
                if (m.min_vector_entry < w.entry) {
                    w.entry = m.min_vector_entry;
                    w.entry_mask = mask;
                }
            }
            return w;
        });

    Worst worst;
    for (const Worst& w : partial) {
        if (w.gap < worst.gap) {
            worst.gap = w.gap;
            worst.gap_mask = w.gap_mask;
        }
        if (w.entry < worst.entry) {
            worst.entry = w.entry;
            worst.entry_mask = w.entry_mask;
        }
    }

    report.min_gap = worst.gap;
    report.min_entry = worst.entry;
    double gap_threshold = tol.simplicity * (1.0 + h.frobenius());
    bool gap_ok = worst.gap >= gap_threshold;
    bool entry_ok = worst.entry >= tol.vanishing;
    report.pass = report.strict_support_ok && gap_ok && entry_ok;
    if (!gap_ok)
        report.failing_signing = worst.gap_mask;
    else if (!entry_ok)
        report.failing_signing = worst.entry_mask;
    return report;
}

DistinctReport check_distinct_signings(const SupportedMatrix& h, const CycleStructure& cs, int k,
                                       const Tolerances& tol) {
    require_k_range(k, h.n());
    const std::uint32_t count = 1u << cs.beta;
    std::vector<double> lambdas = parallel_map_indexed<double>(count, [&](std::uint64_t eps) {
        EigenSystem es = eig_sym(
            apply_symmetry_point(h, cs, static_cast<std::uint32_t>(eps)).to_dense(), tol);
        return es.values[k - 1];
    });

    DistinctReport report;
    report.min_separation = std::numeric_limits<double>::infinity();
    for (std::uint32_t a = 0; a < count; ++a)
        for (std::uint32_t b = a + 1; b < count; ++b) {
            double sep = std::abs(lambdas[a] - lambdas[b]);
            if (sep < report.min_separation) {
                report.min_separation = sep;
                report.worst_pair_a = a;
                report.worst_pair_b = b;
            }
        }
    if (count < 2) report.min_separation = std::numeric_limits<double>::infinity();
    report.pass = report.min_separation >= tol.distinctness * (1.0 + h.frobenius());
    return report;
}

SurplusDistribution surplus_distribution(const SupportedMatrix& h, const CycleStructure& cs,
                                         int k, const Tolerances& tol) {
    require_k_range(k, h.n());
    SurplusDistribution d;
    d.k = k;
    d.beta = cs.beta;
    d.counts.assign(cs.beta + 1, 0);

    const std::uint32_t count = 1u << cs.beta;
    for (std::uint32_t eps = 0; eps < count; ++eps) {
        int sigma;
        try {
            sigma = nodal_surplus(apply_symmetry_point(h, cs, eps), k, tol);
        } catch (const NonSimpleEigenvalue& err) {
            throw NonSimpleEigenvalue(err.k, err.gap, err.threshold,
                                      "at symmetry point eps=" + std::to_string(eps));
        } catch (const VanishingEigenvector& err) {
            throw VanishingEigenvector(err.k, err.min_rel_entry, err.threshold,
                                       "at symmetry point eps=" + std::to_string(eps));
        }
        if (sigma < 0 || sigma > cs.beta)
            throw NumericalError("surplus " + std::to_string(sigma) + " outside [0,beta] at eps=" +
                                 std::to_string(eps));
        ++d.counts[sigma];
    }

    // Orbit size for a connected graph is 2^(n-1): the {0,pi}^n gauge subgroup
    // acts on sign patterns with only the two constant vectors acting
    // trivially. signing_orbits verifies this by enumeration where feasible.
    int log_orbit = h.n() - 1;
    d.per_signing_counts.resize(d.counts.size());
    for (size_t j = 0; j < d.counts.size(); ++j) {
        if (d.counts[j] != 0 && log_orbit + std::bit_width(d.counts[j]) > 64)
            throw NumericalError("per-signing counts overflow 64 bits");
        d.per_signing_counts[j] = d.counts[j] << log_orbit;
    }
    return d;
}

}  // namespace nodal
