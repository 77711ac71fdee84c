#include "wavequbo/eigensolver.hpp"

#include "wavequbo/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <sstream>

namespace wavequbo {

namespace {

Vector random_unit(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v(i) = normal(rng);
    return v.normalized();
}

// Orthogonalise w against the first `cols` columns of V (two passes).
void orthogonalize(const Matrix& V, Eigen::Index cols, Vector& w) {
    if (cols == 0) return;
    for (int pass = 0; pass < 2; ++pass) w.noalias() -= V.leftCols(cols) * (V.leftCols(cols).transpose() * w);
}

}  // namespace

LowestTwo lowest_two_dense(const Matrix& H) {
    require(H.rows() == H.cols() && H.rows() >= 2, "lowest_two_dense: need a square matrix of dimension >= 2");
    Eigen::SelfAdjointEigenSolver<Matrix> es(H, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("lowest_two_dense: eigen decomposition failed");
    return LowestTwo{es.eigenvalues()(0), es.eigenvalues()(1), Matrix()};
}

namespace {

// H restricted to the complement of y0, with y0 itself pushed above the
// spectrum; its lowest eigenvalue is lambda1 counted with multiplicity.
void resolve_second_level(const LinearOperator& apply, Eigen::Index dim, const EigenSolverOptions& options,
                          double norm_estimate, LowestTwo& out) {
    const Vector y0 = out.vectors.col(0);
    const double lift = 4.0 * norm_estimate;
    const LinearOperator deflated = [&](const Vector& x, Vector& y) {
        const Vector px = x - y0 * y0.dot(x);
        apply(px, y);
        y -= y0 * y0.dot(y);
        y += lift * y0 * y0.dot(x);
    };
    EigenSolverOptions sub = options;
    sub.resolve_multiplicity = false;
    sub.seed = options.seed ^ 0x9e3779b97f4a7c15ULL;
    const LowestTwo second = lowest_two_krylov(deflated, dim, sub);
    if (second.lambda0 < out.lambda1) {
        out.lambda1 = second.lambda0;
        out.vectors.col(1) = second.vectors.col(0);
    }
}

}  // namespace

LowestTwo lowest_two_krylov(const LinearOperator& apply, Eigen::Index dim, const EigenSolverOptions& options,
                            const Matrix* warm_start) {
    require(dim >= 2, "lowest_two_krylov: dimension must be >= 2");
    const Eigen::Index m_max = std::min<Eigen::Index>(dim, std::max(options.krylov_dim, 8));
    // a thick restart resolves clustered low levels much faster than keeping two
    const Eigen::Index keep = std::min<Eigen::Index>(std::max<Eigen::Index>(3, m_max / 3), m_max - 1);
    std::mt19937_64 rng(options.seed);

    Matrix V(dim, m_max);
    Matrix W(dim, m_max);
    Eigen::Index j = 0;
    auto push = [&](Vector w) -> bool {
        orthogonalize(V, j, w);
        const double nrm = w.norm();
        if (!(nrm > 1e-10)) return false;
        V.col(j) = w / nrm;
        Vector hv(dim);
        apply(V.col(j), hv);
        W.col(j) = hv;
        ++j;
        return true;
    };

    // A random component keeps every symmetry sector of H reachable.
    Vector start = random_unit(dim, rng);
    if (warm_start != nullptr && warm_start->rows() == dim && warm_start->cols() > 0)
        start = warm_start->rowwise().sum().normalized() + 0.05 * start;
    push(start);

    Vector next = W.col(0);
    double last_residual = 0.0;
    double norm_estimate = 1.0;  // largest |Ritz value| seen, a lower bound on ||H||
    for (int restart = 0; restart <= options.max_restarts; ++restart) {
        while (j < m_max) {
            if (!push(next)) {
                // invariant subspace reached: continue with a fresh direction
                bool added = false;
                for (int attempt = 0; attempt < 8 && !added; ++attempt) added = push(random_unit(dim, rng));
                if (!added) break;
            }
            next = W.col(j - 1);
        }

        Matrix T = V.leftCols(j).transpose() * W.leftCols(j);
        T = 0.5 * (T + T.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Matrix> es(T);
        const Eigen::Index k = std::min(keep, j);
        const Matrix S = es.eigenvectors().leftCols(k);
        const Vector theta = es.eigenvalues().head(k);
        Matrix Y = V.leftCols(j) * S;
        Matrix HY = W.leftCols(j) * S;
        Matrix R = HY - Y * theta.asDiagonal();

        norm_estimate = std::max(norm_estimate, es.eigenvalues().cwiseAbs().maxCoeff());
        const double r0 = R.col(0).norm();
        const double r1 = k > 1 ? R.col(1).norm() : 0.0;
        last_residual = std::max(r0, r1);
        if (j == dim || last_residual <= options.tolerance * norm_estimate) {
            LowestTwo out{theta(0), theta(1), Y.leftCols(2)};
            if (options.resolve_multiplicity && j < dim) resolve_second_level(apply, dim, options, norm_estimate, out);
            return out;
        }

        // thick restart on the kept Ritz vectors; expand along the worst residual
        V.leftCols(k) = Y;
        W.leftCols(k) = HY;
        j = k;
        next = (r0 >= r1) ? Vector(R.col(0)) : Vector(R.col(1));
    }
    std::ostringstream msg;
    msg << "lowest_two_krylov: no convergence after " << options.max_restarts << " restarts (dimension " << dim
        << ", residual " << last_residual << ")";
    throw NumericalError(msg.str());
}

LowestTwo lowest_two_eigenvalues(const Eigen::SparseMatrix<double>& H, const EigenSolverOptions& options) {
    require(H.rows() == H.cols() && H.rows() >= 2, "lowest_two_eigenvalues: need a square matrix of dimension >= 2");
    const bool dense = options.method == EigenMethod::Dense ||
                       (options.method == EigenMethod::Auto && H.rows() <= options.dense_cutoff);
    if (dense) return lowest_two_dense(Matrix(H));
    return lowest_two_krylov([&H](const Vector& x, Vector& y) { y.noalias() = H * x; }, H.rows(), options);
}

}  // namespace wavequbo
