#include "wavequbo/encoder.hpp"

#include <cmath>

namespace wavequbo {

LinearSystem assemble_system(const HelmholtzProblem& problem, const FourierBasisSet& basis) {
    const int N = basis.N;
    const auto grid = collocation_grid(N);
    const double tau2 = problem.tau * problem.tau;

    LinearSystem sys;
    sys.N = N;
    sys.tau = problem.tau;
    sys.alpha = problem.alpha;
    sys.beta = problem.beta;
    sys.a.resize(N + 2, N);
    sys.b.resize(N + 2);
    for (int m = 0; m < N; ++m) {
        const double x = grid.points(m);
        sys.a.row(m) = (eval_basis(basis, 2, x) + tau2 * eval_basis(basis, 0, x)).transpose();
        sys.b(m) = problem.driving(x);
    }
    sys.a.row(N) = eval_basis(basis, 0, 0.0).transpose();
    sys.a.row(N + 1) = eval_basis(basis, 1, 0.0).transpose();
    sys.b(N) = problem.alpha;
    sys.b(N + 1) = problem.beta;
    return sys;
}

double bit_weight(int l) { return l == 0 ? -1.0 : std::ldexp(1.0, -l); }

BinarizedSystem binarize_system(const LinearSystem& sys, int n_spin) {
    require(n_spin >= 2, "binarize_system: n_spin must be >= 2 (sign bit plus at least one magnitude bit)");
    const int N = static_cast<int>(sys.a.cols());
    BinarizedSystem out;
    out.N = N;
    out.n_spin = n_spin;
    out.b = sys.b;
    out.A.resize(sys.a.rows(), static_cast<Eigen::Index>(N) * n_spin);
    for (int l = 0; l < n_spin; ++l) out.A.middleCols(l * N, N) = bit_weight(l) * sys.a;
    return out;
}

Vector decode_bits(const Bitstring& bits, int n_spin) {
    require(n_spin >= 1, "decode_bits: n_spin must be positive");
    require(!bits.empty() && bits.size() % n_spin == 0,
            "decode_bits: bit count " + std::to_string(bits.size()) + " is not a multiple of n_spin = " +
                std::to_string(n_spin));
    const int N = static_cast<int>(bits.size()) / n_spin;
    Vector w = Vector::Zero(N);
    for (int l = 0; l < n_spin; ++l)
        for (int i = 0; i < N; ++i)
            if (bits[l * N + i]) w(i) += bit_weight(l);
    return w;
}

std::optional<Bitstring> encode_weights(const Vector& weights, int n_spin) {
    require(n_spin >= 2, "encode_weights: n_spin must be >= 2");
    const int N = static_cast<int>(weights.size());
    Bitstring bits(static_cast<std::size_t>(N) * n_spin, 0);
    const double scale = std::ldexp(1.0, n_spin - 1);
    for (int i = 0; i < N; ++i) {
        // w = -b0 + m / 2^(n_spin-1), m in [0, 2^(n_spin-1))
        const double w = weights(i);
        const bool negative = w < 0.0;
        const double magnitude = (negative ? w + 1.0 : w) * scale;
        const double rounded = std::round(magnitude);
        if (std::abs(magnitude - rounded) > 1e-12 * scale || rounded < 0.0 || rounded >= scale) return std::nullopt;
        if (negative && w < -1.0) return std::nullopt;
        bits[i] = negative ? 1 : 0;
        auto m = static_cast<long long>(rounded);
        for (int l = n_spin - 1; l >= 1; --l) {
            bits[static_cast<std::size_t>(l) * N + i] = static_cast<std::uint8_t>(m & 1);
            m >>= 1;
        }
    }
    return bits;
}

QuboProblem build_qubo(const BinarizedSystem& bsys) {
    QuboProblem q;
    q.Q = bsys.A.transpose() * bsys.A;
    q.Q = 0.5 * (q.Q + q.Q.transpose()).eval();
    q.L = -2.0 * (bsys.A.transpose() * bsys.b);
    q.offset = bsys.b.squaredNorm();
    return q;
}

Matrix compact_qubo(const QuboProblem& q) {
    Matrix m = q.Q;
    m.diagonal() += q.L;
    return m;
}

IsingProblem to_ising(const QuboProblem& q) {
    // w = (s + 1) / 2
    IsingProblem ising;
    ising.J = 0.25 * q.Q;
    ising.J.diagonal().setZero();
    ising.h = 0.5 * (q.Q.rowwise().sum() + q.L);
    ising.offset = q.offset + 0.25 * (q.Q.trace() + q.Q.sum()) + 0.5 * q.L.sum();
    return ising;
}

double ising_energy(const IsingProblem& ising, const Vector& spins) {
    require(spins.size() == ising.r(), "ising_energy: spin count mismatch");
    return spins.dot(ising.J * spins) + ising.h.dot(spins) + ising.offset;
}

Encoding encode(const HelmholtzProblem& problem, const FourierBasisSet& basis, int n_spin) {
    Encoding e;
    e.system = assemble_system(problem, basis);
    e.binarized = binarize_system(e.system, n_spin);
    e.qubo = build_qubo(e.binarized);
    return e;
}

}  // namespace wavequbo
