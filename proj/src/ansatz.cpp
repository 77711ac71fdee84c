#include "wavequbo/ansatz.hpp"

#include "wavequbo/errors.hpp"

#include <cmath>
#include <numbers>

namespace wavequbo {

namespace {

void require_even(int N, const char* who) {
    require(N >= 2 && N % 2 == 0, std::string(who) + ": N must be even and >= 2, got " + std::to_string(N));
}

double circulant_weight(int k, int N) { return (std::abs(k) == N / 2) ? 0.5 : 1.0; }

Eigen::VectorXcd phase_vector(int N, int order, double x) {
    Eigen::VectorXcd p(N + 1);
    const std::complex<double> I(0.0, 1.0);
    for (int j = 0; j <= N; ++j) {
        const int k = j - N / 2;
        std::complex<double> factor(1.0, 0.0);
        for (int d = 0; d < order; ++d) factor *= I * static_cast<double>(k);
        p(j) = factor * std::polar(1.0, k * x);
    }
    return p;
}

}  // namespace

std::string_view to_string(AnsatzKind kind) {
    switch (kind) {
        case AnsatzKind::TruncatedFourier: return "tfa";
        case AnsatzKind::Circulant: return "ca";
        case AnsatzKind::Adiabatic: return "aa";
    }
    return "?";
}

AnsatzKind parse_ansatz_kind(std::string_view name) {
    if (name == "tfa") return AnsatzKind::TruncatedFourier;
    if (name == "ca") return AnsatzKind::Circulant;
    if (name == "aa") return AnsatzKind::Adiabatic;
    throw PreconditionError("unknown ansatz '" + std::string(name) + "' (expected tfa, ca or aa)");
}

double CollocationGrid::spacing() const { return 2.0 * std::numbers::pi / N; }

CollocationGrid collocation_grid(int N) {
    require_even(N, "collocation_grid");
    CollocationGrid grid;
    grid.N = N;
    grid.points.resize(N);
    for (int m = 0; m < N; ++m) grid.points(m) = 2.0 * std::numbers::pi * m / N;
    return grid;
}

FourierBasisSet tfa_basis(int N) {
    require_even(N, "tfa_basis");
    FourierBasisSet basis;
    basis.N = N;
    basis.kind = AnsatzKind::TruncatedFourier;
    basis.coeffs = ComplexMatrix::Zero(N, N + 1);
    const int h = N / 2;
    for (int n = 1; n <= h; ++n) {
        basis.coeffs(n - 1, h + n) = 0.5;
        basis.coeffs(n - 1, h - n) = 0.5;
        basis.coeffs(h + n - 1, h + n) = std::complex<double>(0.0, -0.5);
        basis.coeffs(h + n - 1, h - n) = std::complex<double>(0.0, 0.5);
    }
    return basis;
}

FourierBasisSet ca_basis(int N) {
    require_even(N, "ca_basis");
    FourierBasisSet basis;
    basis.N = N;
    basis.kind = AnsatzKind::Circulant;
    basis.coeffs.resize(N, N + 1);
    const auto grid = collocation_grid(N);
    for (int n = 0; n < N; ++n) {
        for (int k = -N / 2; k <= N / 2; ++k) {
            basis.coeffs(n, k + N / 2) = std::polar(circulant_weight(k, N) / N, -k * grid.points(n));
        }
    }
    return basis;
}

int aa_param_count(int N) { return N * (N + 1); }

double aa_row_norm(int N) {
    double sq = 0.0;
    for (int k = -N / 2; k <= N / 2; ++k) sq += std::pow(circulant_weight(k, N) / N, 2);
    return std::sqrt(sq);
}

FourierBasisSet aa_basis(int N, const Vector& params) {
    require_even(N, "aa_basis");
    require(params.size() == aa_param_count(N),
            "aa_basis: expected " + std::to_string(aa_param_count(N)) + " parameters, got " +
                std::to_string(params.size()));
    FourierBasisSet basis;
    basis.N = N;
    basis.kind = AnsatzKind::Adiabatic;
    basis.coeffs.resize(N, N + 1);
    const int h = N / 2;
    const int per_row = N + 1;
    const double target = aa_row_norm(N);
    for (int n = 0; n < N; ++n) {
        const auto row = params.segment(n * per_row, per_row);
        basis.coeffs(n, h) = row(0);
        for (int k = 1; k <= h; ++k) {
            const std::complex<double> g(row(2 * k - 1), row(2 * k));
            basis.coeffs(n, h + k) = g;
            basis.coeffs(n, h - k) = std::conj(g);
        }
        const double norm = basis.coeffs.row(n).norm();
        require(norm > 0.0 && std::isfinite(norm), "aa_basis: row " + std::to_string(n) + " is zero");
        basis.coeffs.row(n) *= target / norm;
    }
    return basis;
}

Vector aa_params_from_basis(const FourierBasisSet& basis) {
    const int N = basis.N;
    const int h = N / 2;
    Vector params(aa_param_count(N));
    for (int n = 0; n < N; ++n) {
        auto row = params.segment(n * (N + 1), N + 1);
        row(0) = basis.coeffs(n, h).real();
        for (int k = 1; k <= h; ++k) {
            row(2 * k - 1) = basis.coeffs(n, h + k).real();
            row(2 * k) = basis.coeffs(n, h + k).imag();
        }
    }
    return params;
}

Vector eval_basis(const FourierBasisSet& basis, int order, double x) {
    require(order >= 0 && order <= 2, "eval_basis: order must be 0, 1 or 2");
    return (basis.coeffs * phase_vector(basis.N, order, x)).real();
}

double basis_imaginary_residue(const FourierBasisSet& basis, double x) {
    return (basis.coeffs * phase_vector(basis.N, 0, x)).imag().cwiseAbs().maxCoeff();
}

double reconstruct_solution(const FourierBasisSet& basis, const Vector& weights, double x) {
    require(weights.size() == basis.N, "reconstruct_solution: weight count " + std::to_string(weights.size()) +
                                           " does not match N = " + std::to_string(basis.N));
    return weights.dot(eval_basis(basis, 0, x));
}

FourierBasisSet make_basis(AnsatzKind kind, int N, const Vector* aa_params) {
    switch (kind) {
        case AnsatzKind::TruncatedFourier: return tfa_basis(N);
        case AnsatzKind::Circulant: return ca_basis(N);
        case AnsatzKind::Adiabatic:
            require(aa_params != nullptr, "adiabatic ansatz requires a parameter vector");
            return aa_basis(N, *aa_params);
    }
    throw PreconditionError("make_basis: unknown ansatz kind");
}

}  // namespace wavequbo
