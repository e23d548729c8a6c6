#include "nodal/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "nodal/errors.hpp"
#include "nodal/parallel.hpp"

namespace nodal {

namespace {

constexpr int kMaxBeta = 20;

void require_beta(int beta) {
    if (beta > kMaxBeta)
        throw InputError("beta=" + std::to_string(beta) + " exceeds the exact-enumeration limit " +
                         std::to_string(kMaxBeta));
}

}  // namespace

std::uint64_t binomial_coefficient(int n, int r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    std::uint64_t c = 1;
    for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
    return c;
}

LatticeReport lattice_map(const SupportedMatrix& h, const CycleStructure& cs, int k,
                          const Tolerances& tol) {
    require_beta(cs.beta);
    LatticeReport report;
    report.k = k;
    report.beta = cs.beta;

    const std::uint32_t count = 1u << cs.beta;
    std::vector<double> lambdas = parallel_map_indexed<double>(count, [&](std::uint64_t eps) {
        return eig_sym(apply_symmetry_point(h, cs, static_cast<std::uint32_t>(eps)).to_dense(),
                       tol)
            .values[k - 1];
    });

    double threshold = tol.distinctness * (1.0 + h.frobenius());
    std::set<std::uint32_t> images;
    std::vector<std::uint64_t> index_hist(cs.beta + 1, 0);
    for (std::uint32_t eps = 0; eps < count; ++eps) {
        LatticeEntry entry;
        entry.eps = eps;
        entry.lambda = lambdas[eps];
        for (int j = 0; j < cs.beta; ++j) {
            double diff = lambdas[eps ^ (1u << j)] - lambdas[eps];
            if (std::abs(diff) < threshold) report.indeterminate = true;
            if (diff < 0.0) entry.jminus |= 1u << j;
        }
        entry.index = std::popcount(entry.jminus);
        entry.surplus = nodal_surplus(apply_symmetry_point(h, cs, eps), k, tol);
        images.insert(entry.jminus);
        ++index_hist[entry.index];
        report.entries.push_back(entry);
    }

    report.bijective = images.size() == count;
    report.binomial = binomial_verdict(index_hist, cs.beta);
    return report;
}

bool binomial_verdict(const std::vector<std::uint64_t>& counts, int beta) {
    if (static_cast<int>(counts.size()) != beta + 1) return false;
    for (int j = 0; j <= beta; ++j)
        if (counts[j] != binomial_coefficient(beta, j)) return false;
    return true;
}

bool binomial_verdict(const SurplusDistribution& d) { return binomial_verdict(d.counts, d.beta); }

bool binomial_verdict(const LatticeReport& r) {
    std::vector<std::uint64_t> hist(r.beta + 1, 0);
    for (const LatticeEntry& e : r.entries) ++hist[e.surplus];
    return binomial_verdict(hist, r.beta);
}

MorseReport morse_report(const SupportedMatrix& h, const CycleStructure& cs, int k,
                         const Tolerances& tol) {
    require_beta(cs.beta);
    MorseReport report;
    report.k = k;
    report.all_consistent = true;

    const std::uint32_t count = 1u << cs.beta;
    for (std::uint32_t eps = 0; eps < count; ++eps) {
        MorseEntry entry;
        entry.eps = eps;

        FdDerivatives fd =
            fd_derivatives(h, cs, FluxPoint::symmetry_point(cs.beta, eps), k, tol);
        double max_diag = 0.0;
        entry.min_abs_diagonal = std::numeric_limits<double>::infinity();
        for (int j = 0; j < cs.beta; ++j) {
            max_diag = std::max(max_diag, std::abs(fd.hessian(j, j)));
            entry.min_abs_diagonal = std::min(entry.min_abs_diagonal, std::abs(fd.hessian(j, j)));
        }
        if (cs.beta == 0) entry.min_abs_diagonal = std::numeric_limits<double>::infinity();
        for (int i = 0; i < cs.beta; ++i)
            for (int j = i + 1; j < cs.beta; ++j)
                entry.max_offdiag = std::max(entry.max_offdiag, std::abs(fd.hessian(i, j)));

        double offdiag_limit = tol.hessian_diag_rel * (1.0 + max_diag);
        double entry_floor = tol.hessian_entry * (1.0 + max_diag);
        entry.offdiag_ok = entry.max_offdiag <= offdiag_limit;
        entry.entries_resolved = entry.min_abs_diagonal > entry_floor;
        if (!entry.entries_resolved) report.indeterminate = true;
        for (int j = 0; j < cs.beta; ++j)
            if (fd.hessian(j, j) < 0.0) ++entry.fd_index;

        JMinusResult jm = j_minus(h, cs, eps, k, tol);
        if (jm.indeterminate) report.indeterminate = true;
        entry.jminus_size = std::popcount(jm.mask);
        entry.surplus = nodal_surplus(apply_symmetry_point(h, cs, eps), k, tol);
        entry.consistent = entry.offdiag_ok && entry.fd_index == entry.jminus_size &&
                           entry.jminus_size == entry.surplus;
        report.all_consistent = report.all_consistent && entry.consistent;
        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace nodal
