#pragma once

#include "wavequbo/ansatz.hpp"
#include "wavequbo/problem.hpp"
#include "wavequbo/samplers.hpp"
#include "wavequbo/spectral.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wavequbo {

struct Scenario {
    std::string id;
    std::string summary;
    HelmholtzProblem problem;
};

/// exp1..exp5: the homogeneous case, two monochromatic drivings, a
/// polychromatic driving and an irrational boundary value.
const std::vector<Scenario>& builtin_scenarios();
const Scenario& find_scenario(const std::string& id);

inline constexpr int kDefaultMsePoints = 100;

/// (1/n) sum_i (u(y_i) - u_N(y_i))^2 with y_i = 2 pi i / (n + 1), i = 1..n.
double mse(const ClosedFormSolution& exact, const FourierBasisSet& basis, const Vector& weights,
           int n_points = kDefaultMsePoints);

/// Fraction of runs whose energy is within `tol` of `ground_energy`; a
/// negative tol selects the default 1e-9 * max(1, |ground_energy|).
double success_rate(const SampleSet& samples, double ground_energy, double tol = -1.0);

enum class SamplerKind { SimulatedAnnealing, BruteForce };

std::string_view to_string(SamplerKind kind);
SamplerKind parse_sampler_kind(std::string_view name);  // "sa" | "brute"

struct ScenarioConfig {
    std::string scenario = "exp1";
    std::optional<HelmholtzProblem> custom;  // used when scenario == "custom"
    AnsatzKind ansatz = AnsatzKind::Circulant;
    int N = 2;
    int n_spin = 2;
    std::optional<Vector> aa_params;  // required for the adiabatic ansatz

    SamplerKind sampler = SamplerKind::SimulatedAnnealing;
    int n_runs = 1000;
    std::uint64_t seed = 0;
    // unset fields fall back to default_schedule() of the instance
    std::optional<double> beta_start;
    std::optional<double> beta_end;
    std::optional<int> sweeps;

    bool compute_gap = true;
    GapOptions gap;
    int mse_points = kDefaultMsePoints;
    unsigned threads = 0;

    void validate() const;
    HelmholtzProblem problem() const;
};

struct ExperimentReport {
    std::string scenario;
    AnsatzKind ansatz = AnsatzKind::Circulant;
    int N = 0;
    int n_spin = 0;
    int r = 0;
    std::uint64_t seed = 0;
    int n_runs = 0;

    int rank = 0;
    double dynamic_range = 0.0;
    std::optional<double> g_min;
    std::string gap_status;  // "ok", "degenerate", "skipped: r > 16" or "disabled"
    std::optional<double> sr_sa;
    std::optional<double> mse_sa;    // lowest-energy SA sample
    std::optional<double> mse_best;  // best over the brute-force ground states
    std::optional<double> ground_energy;
    std::size_t degeneracy = 0;  // 0 when brute force was out of reach
    bool relative_sr = false;    // SR measured against the best SA energy

    double seconds = 0.0;  // wall time; not part of the emitted report by default
};

/// Encodes, samples and measures one configuration. Errors keep their type
/// and get the failing stage prefixed to the message.
ExperimentReport run_scenario(const ScenarioConfig& config);

}  // namespace wavequbo
