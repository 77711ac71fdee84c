#pragma once

#include "wavequbo/types.hpp"

#include <Eigen/Sparse>

#include <functional>
#include <optional>

namespace wavequbo {

/// y = H x for a real symmetric operator of fixed dimension.
using LinearOperator = std::function<void(const Vector& x, Vector& y)>;

struct LowestTwo {
    double lambda0 = 0.0;
    double lambda1 = 0.0;
    double gap() const { return lambda1 - lambda0; }
    // Ritz vectors for lambda0 and lambda1 (columns), when produced by the
    // Krylov path; usable as a warm start for a nearby operator.
    Matrix vectors;
};

enum class EigenMethod { Auto, Dense, Krylov };

struct EigenSolverOptions {
    EigenMethod method = EigenMethod::Auto;
    Eigen::Index dense_cutoff = 256;  // Auto uses the dense solver up to this dimension
    int krylov_dim = 48;
    int max_restarts = 2000;
    double tolerance = 1e-10;  // residual norm relative to max(1, ||H|| estimate)
    std::uint64_t seed = 0x5eed;
    // One Krylov sequence only sees one copy of an exactly degenerate level.
    // When set, a second solve on the complement of the ground Ritz vector
    // recovers lambda1 with multiplicity, at roughly twice the cost.
    bool resolve_multiplicity = true;
};

/// Dense reference: full symmetric eigendecomposition.
LowestTwo lowest_two_dense(const Matrix& H);

/// Restarted Krylov iteration with full re-orthogonalisation and explicit
/// Rayleigh-Ritz. Throws NumericalError if the residuals do not reach the
/// tolerance within the restart budget.
LowestTwo lowest_two_krylov(const LinearOperator& apply, Eigen::Index dim, const EigenSolverOptions& options = {},
                            const Matrix* warm_start = nullptr);

/// Two smallest eigenvalues counting multiplicity.
LowestTwo lowest_two_eigenvalues(const Eigen::SparseMatrix<double>& H, const EigenSolverOptions& options = {});

}  // namespace wavequbo
