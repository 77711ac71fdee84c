#pragma once

#include "wavequbo/encoder.hpp"
#include "wavequbo/types.hpp"

#include <cstdint>
#include <vector>

namespace wavequbo {

double qubo_energy(const QuboProblem& q, const Bitstring& bits);

struct GroundStates {
    double energy = 0.0;
    std::vector<Bitstring> states;  // every bitstring within kGroundTieTolerance of the minimum
    std::size_t degeneracy() const { return states.size(); }
};

inline constexpr int kBruteForceCap = 26;
inline constexpr double kGroundTieTolerance = 1e-12;

/// Exhaustive minimisation over all 2^r bitstrings.
GroundStates brute_force(const QuboProblem& q, int max_bits = kBruteForceCap);

/// Inverse temperature runs geometrically from beta_start to beta_end over
/// `sweeps` sweeps; each sweep proposes r single-bit flips in random order.
struct AnnealSchedule {
    double beta_start = 0.1;
    double beta_end = 10.0;
    int sweeps = 1000;

    double beta_at(int sweep) const;
    void validate() const;
};

/// beta_start = 0.1 / s, beta_end = 50 / s, 1000 sweeps, where s is the mean
/// absolute nonzero entry of Q + diag(L).
AnnealSchedule default_schedule(const QuboProblem& q);

struct Sample {
    Bitstring bits;
    double energy = 0.0;
    int count = 0;
};

struct SampleSet {
    std::vector<Sample> samples;  // ascending energy, distinct bitstrings
    int n_runs = 0;
    std::uint64_t seed = 0;
    AnnealSchedule schedule;

    double lowest_energy() const;
};

/// Seed of run `run` derived from the base seed (SplitMix64 of seed + run * gamma);
/// runs are independent of execution order.
std::uint64_t run_seed(std::uint64_t seed, std::uint64_t run);

/// Metropolis simulated annealing from uniform random starts. The result only
/// depends on (q, schedule, n_runs, seed); `threads` = 0 picks the hardware
/// concurrency.
SampleSet simulated_annealing(const QuboProblem& q, const AnnealSchedule& schedule, int n_runs, std::uint64_t seed,
                              unsigned threads = 0);

}  // namespace wavequbo
