#pragma once

#include "wavequbo/ansatz.hpp"
#include "wavequbo/errors.hpp"
#include "wavequbo/problem.hpp"
#include "wavequbo/types.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace wavequbo {

/// a w = b with N collocation rows, then u(0) = alpha, then u'(0) = beta.
struct LinearSystem {
    Matrix a;  // (N+2) x N
    Vector b;  // N+2
    int N = 0;
    double tau = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Fixed-point encoding w_i = -omega_i^0 + sum_{l>=1} omega_i^l / 2^l.
///
/// Bits are stored l-major: column l*N + i of A carries omega_i^l, so all
/// sign bits come first, then all half bits, and so on.
struct BinarizedSystem {
    Matrix A;  // (N+2) x (N * n_spin)
    Vector b;
    int N = 0;
    int n_spin = 0;
    int r() const { return static_cast<int>(A.cols()); }
};

/// Minimise  w^T Q w + L w + offset  over w in {0,1}^r.
struct QuboProblem {
    Matrix Q;  // symmetric
    Vector L;
    double offset = 0.0;
    int r() const { return static_cast<int>(L.size()); }
};

/// Minimise  s^T J s + h s + offset  over s in {-1,+1}^r, with J symmetric and
/// zero on the diagonal. For s = 2w - 1 the energy equals the QUBO energy
/// (offsets included).
struct IsingProblem {
    Matrix J;
    Vector h;
    double offset = 0.0;
    int r() const { return static_cast<int>(h.size()); }
};

LinearSystem assemble_system(const HelmholtzProblem& problem, const FourierBasisSet& basis);

/// Weight of bit l in the fixed-point encoding: -1 for l = 0, 2^-l otherwise.
double bit_weight(int l);

BinarizedSystem binarize_system(const LinearSystem& sys, int n_spin);

Vector decode_bits(const Bitstring& bits, int n_spin);

/// Bitstring that decodes exactly to `weights`, if one exists.
std::optional<Bitstring> encode_weights(const Vector& weights, int n_spin);

QuboProblem build_qubo(const BinarizedSystem& bsys);

/// Q + diag(L): the single matrix whose quadratic form gives the QUBO energy
/// minus the offset on binary inputs.
Matrix compact_qubo(const QuboProblem& q);

IsingProblem to_ising(const QuboProblem& q);

double ising_energy(const IsingProblem& ising, const Vector& spins);

inline constexpr double kDefaultRankTolerance = 1e-10;
inline constexpr double kDynamicRangeZero = 1e-12;

/// Singular values above tol * sigma_max * max(rows, cols) are counted.
template <typename Derived>
int matrix_rank(const Eigen::MatrixBase<Derived>& a, double tol = kDefaultRankTolerance) {
    require(tol > 0.0, "matrix_rank: tolerance must be positive");
    using Scalar = typename Derived::Scalar;
    using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    if (a.size() == 0) return 0;
    Eigen::JacobiSVD<Mat> svd(a.eval());
    const auto& sv = svd.singularValues();
    const double cutoff = tol * static_cast<double>(sv(0)) * static_cast<double>(std::max(a.rows(), a.cols()));
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (static_cast<double>(sv(i)) > cutoff) ++rank;
    return rank;
}

/// log2(max |m_ij| / min nonzero |m_ij|); entries with |m_ij| <= zero count
/// as zero. Throws if the matrix has no nonzero entry.
template <typename Derived>
double dynamic_range(const Eigen::MatrixBase<Derived>& m, double zero = kDynamicRangeZero) {
    double hi = 0.0;
    double lo = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const double v = std::abs(static_cast<double>(m(i, j)));
            if (v <= zero) continue;
            hi = std::max(hi, v);
            lo = std::min(lo, v);
        }
    }
    if (hi == 0.0) throw PreconditionError("dynamic_range: matrix has no nonzero entry");
    return std::log2(hi / lo);
}

/// Convenience pipeline: problem + basis + bit depth to QUBO.
struct Encoding {
    LinearSystem system;
    BinarizedSystem binarized;
    QuboProblem qubo;
};

Encoding encode(const HelmholtzProblem& problem, const FourierBasisSet& basis, int n_spin);

}  // namespace wavequbo
