#pragma once

#include <stdexcept>
#include <string>

namespace nodal {

// Bad user input: malformed files, out-of-range indices, broken preconditions
// that the caller controls. The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical hypothesis failed at runtime (mapped to exit code 1 by the CLI).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Eigenvalue not simple within the required margin.
class NonSimpleEigenvalue : public NumericalError {
public:
    NonSimpleEigenvalue(int k, double gap, double threshold, const std::string& where = "")
        : NumericalError("eigenvalue " + std::to_string(k) + " not simple: gap " +
                         std::to_string(gap) + " below threshold " + std::to_string(threshold) +
                         (where.empty() ? "" : " (" + where + ")")),
          k(k), gap(gap), threshold(threshold) {}
    int k;
    double gap;
    double threshold;
};

// Eigenvector has an entry too close to zero relative to its largest entry.
class VanishingEigenvector : public NumericalError {
public:
    VanishingEigenvector(int k, double min_rel_entry, double threshold,
                         const std::string& where = "")
        : NumericalError("eigenvector " + std::to_string(k) + " vanishes: min relative entry " +
                         std::to_string(min_rel_entry) + " below threshold " +
                         std::to_string(threshold) + (where.empty() ? "" : " (" + where + ")")),
          k(k), min_rel_entry(min_rel_entry), threshold(threshold) {}
    int k;
    double min_rel_entry;
    double threshold;
};

// The 2n-embedding of a Hermitian solve produced eigenvalues that do not pair up.
class PairMatchingError : public NumericalError {
public:
    explicit PairMatchingError(const std::string& msg) : NumericalError(msg) {}
};

// Generator gave up after max_retries attempts.
class RetriesExhausted : public NumericalError {
public:
    RetriesExhausted(int retries, double best_gap, double best_entry)
        : NumericalError("instance generation failed after " + std::to_string(retries) +
                         " retries (best min_gap " + std::to_string(best_gap) +
                         ", best min_entry " + std::to_string(best_entry) + ")"),
          retries(retries), best_gap(best_gap), best_entry(best_entry) {}
    int retries;
    double best_gap;
    double best_entry;
};

}  // namespace nodal
