#pragma once

#include "wavequbo/ansatz.hpp"
#include "wavequbo/problem.hpp"
#include "wavequbo/spectral.hpp"

#include <cstdint>

namespace wavequbo {

inline constexpr int kAdiabaticQubitCap = 14;

struct AdiabaticOptions {
    int budget = 2000;  // objective evaluations spent on the search
    std::uint64_t seed = 1;
    double initial_step = 0.05;  // simplex edge, in parameter units
    int finalists = 6;           // best search candidates re-scored on `final_gap`
    GapOptions search_gap = coarse_gap_options();
    GapOptions final_gap;

    // Cheaper profile used while searching: 41 points, refined to 1e-3, Krylov.
    static GapOptions coarse_gap_options();
};

struct AdiabaticResult {
    FourierBasisSet basis;
    Vector params;
    GapProfile profile;  // on final_gap
    int evaluations = 0;
    int restarts = 0;
};

/// g_min of the encoded problem for one parameter vector, or -infinity when
/// the collocation matrix is rank deficient.
double adiabatic_objective(const HelmholtzProblem& problem, const Vector& params, int N, int n_spin,
                           const GapOptions& gap);

/// Maximises g_min over the adiabatic family with Nelder-Mead restarts from
/// the circulant set, the truncated Fourier set, then random draws. Throws
/// NumericalError if no full-rank candidate turns up within the budget.
AdiabaticResult optimize_adiabatic_ansatz(const HelmholtzProblem& problem, int N, int n_spin,
                                          const AdiabaticOptions& options = {});

}  // namespace wavequbo
