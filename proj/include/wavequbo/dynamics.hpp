#pragma once

#include "wavequbo/encoder.hpp"

namespace wavequbo {

inline constexpr int kDynamicsQubitCap = 10;

struct DynamicsResult {
    double success_probability = 0.0;  // weight on the ground manifold of HQ at t = T
    double norm_drift = 0.0;           // | ||psi(T)|| - 1 |
    int steps = 0;
    std::size_t ground_states = 0;
};

/// Largest dt * (r + max |HQ|) accepted by simulate_anneal_dynamics.
inline constexpr double kMaxStepPhase = 1.0;

/// Step count that keeps dt * (r + max |HQ|) at 0.1.
int recommended_steps(const IsingProblem& ising, double T);

/// Evolves the ground state of H0 under H(t / T) for t in [0, T] with a
/// second-order split-operator scheme (diagonal half steps around exact
/// single-qubit driver rotations), then sums |psi|^2 over the minimisers of
/// HQ. T = 0 returns the overlap of the initial state with that manifold.
DynamicsResult simulate_anneal_dynamics(const IsingProblem& ising, double T, int steps);

}  // namespace wavequbo
