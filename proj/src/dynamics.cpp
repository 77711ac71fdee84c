#include "wavequbo/dynamics.hpp"

#include "wavequbo/errors.hpp"
#include "wavequbo/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <vector>

namespace wavequbo {

namespace {

using cd = std::complex<double>;

double phase_scale(const AnnealingHamiltonian& H) {
    return H.qubits() + H.problem_diagonal().cwiseAbs().maxCoeff();
}

}  // namespace

int recommended_steps(const IsingProblem& ising, double T) {
    require(T >= 0.0 && std::isfinite(T), "recommended_steps: T must be finite and >= 0");
    const AnnealingHamiltonian H(ising);
    return std::max(1, static_cast<int>(std::ceil(T * phase_scale(H) / 0.1)));
}

DynamicsResult simulate_anneal_dynamics(const IsingProblem& ising, double T, int steps) {
    require(ising.r() <= kDynamicsQubitCap, "simulate_anneal_dynamics: r = " + std::to_string(ising.r()) +
                                                " exceeds the cap of " + std::to_string(kDynamicsQubitCap));
    require(T >= 0.0 && std::isfinite(T), "simulate_anneal_dynamics: T must be finite and >= 0");
    require(steps >= 1, "simulate_anneal_dynamics: steps must be >= 1");
    const AnnealingHamiltonian H(ising);
    const int r = H.qubits();
    const Eigen::Index dim = H.dimension();
    const Vector& d = H.problem_diagonal();

    const double dt = T / steps;
    if (dt * phase_scale(H) > kMaxStepPhase)
        throw PreconditionError("simulate_anneal_dynamics: " + std::to_string(steps) + " steps are too few for T = " +
                                std::to_string(T) + "; need at least " +
                                std::to_string(static_cast<int>(std::ceil(T * phase_scale(H) / kMaxStepPhase))));

    // ground state of sum sigma_x: every qubit in |->
    std::vector<cd> psi(static_cast<std::size_t>(dim));
    const double amp = std::pow(2.0, -0.5 * r);
    for (Eigen::Index x = 0; x < dim; ++x)
        psi[x] = (std::popcount(static_cast<std::uint64_t>(x)) & 1) ? -amp : amp;

    std::vector<cd> half(static_cast<std::size_t>(dim));
    if (T > 0.0) {
        for (int n = 0; n < steps; ++n) {
            const double s = (n + 0.5) / steps;
            for (Eigen::Index x = 0; x < dim; ++x) half[x] = std::polar(1.0, -0.5 * dt * s * d(x));
            for (Eigen::Index x = 0; x < dim; ++x) psi[x] *= half[x];
            const double theta = dt * (1.0 - s);
            const double c = std::cos(theta);
            const cd ms(0.0, -std::sin(theta));
            for (int q = 0; q < r; ++q) {
                const Eigen::Index bit = Eigen::Index{1} << q;
                for (Eigen::Index x = 0; x < dim; ++x) {
                    if (x & bit) continue;
                    const cd a = psi[x];
                    const cd b = psi[x | bit];
                    psi[x] = c * a + ms * b;
                    psi[x | bit] = ms * a + c * b;
                }
            }
            for (Eigen::Index x = 0; x < dim; ++x) psi[x] *= half[x];
        }
    }

    DynamicsResult out;
    out.steps = steps;
    // HQ carries roundoff from the Ising transform, so ties are taken relative
    const double emin = d.minCoeff();
    const double tie = 1e-9 * std::max(1.0, std::abs(emin));
    double norm2 = 0.0;
    for (Eigen::Index x = 0; x < dim; ++x) {
        const double p = std::norm(psi[x]);
        norm2 += p;
        if (d(x) <= emin + tie) {
            out.success_probability += p;
            ++out.ground_states;
        }
    }
    out.norm_drift = std::abs(std::sqrt(norm2) - 1.0);
    if (out.norm_drift > 1e-8)
        throw NumericalError("simulate_anneal_dynamics: norm drift " + std::to_string(out.norm_drift));
    return out;
}

}  // namespace wavequbo
