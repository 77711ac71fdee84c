#include "wavequbo/harness.hpp"

#include "wavequbo/encoder.hpp"
#include "wavequbo/errors.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

namespace wavequbo {

namespace {

std::string prefixed(const char* name, const std::string& what) {
    const std::string head = std::string(name) + ": ";
    return what.rfind(head, 0) == 0 ? what : head + what;
}

// Runs one pipeline stage, prefixing its name to any error while keeping the
// error category (and with it the CLI exit code).
template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const PreconditionError& e) {
        throw PreconditionError(prefixed(name, e.what()));
    } catch (const NumericalError& e) {
        throw NumericalError(prefixed(name, e.what()));
    }
}

}  // namespace

const std::vector<Scenario>& builtin_scenarios() {
    using T = TrigPolynomial::Term;
    static const std::vector<Scenario> all = {
        {"exp1", "homogeneous, u(0) = 1/2", HelmholtzProblem(1.0, 0.5, 0.0, TrigPolynomial())},
        {"exp2", "monochromatic driving 3/2 cos 2x",
         HelmholtzProblem(1.0, 0.0, 0.0, TrigPolynomial({T{2, 1.5, 0.0}}))},
        {"exp3", "tau = 2, driving -6 cos 4x, u'(0) = 1",
         HelmholtzProblem(2.0, 0.5, 1.0, TrigPolynomial({T{4, -6.0, 0.0}}))},
        {"exp4", "polychromatic driving, u(0) = -1/4",
         HelmholtzProblem(1.0, -0.25, 0.0,
                          TrigPolynomial({T{2, 0.0, -0.75}, T{3, 2.0, 2.0}, T{4, -3.75, 0.0}}))},
        {"exp5", "homogeneous, u(0) = sqrt(2)/2",
         HelmholtzProblem(1.0, std::numbers::sqrt2 / 2.0, 0.0, TrigPolynomial())},
    };
    return all;
}

const Scenario& find_scenario(const std::string& id) {
    for (const auto& s : builtin_scenarios())
        if (s.id == id) return s;
    throw PreconditionError("unknown scenario '" + id + "' (expected exp1..exp5 or custom)");
}

double mse(const ClosedFormSolution& exact, const FourierBasisSet& basis, const Vector& weights, int n_points) {
    require(n_points >= 2, "mse: n_points must be >= 2");
    double acc = 0.0;
    for (int i = 1; i <= n_points; ++i) {
        const double y = 2.0 * std::numbers::pi * i / (n_points + 1);
        const double e = exact(y) - reconstruct_solution(basis, weights, y);
        acc += e * e;
    }
    return acc / n_points;
}

double success_rate(const SampleSet& samples, double ground_energy, double tol) {
    require(std::isfinite(ground_energy), "success_rate: a finite reference energy is required");
    require(samples.n_runs >= 1, "success_rate: sample set is empty");
    if (tol < 0.0) tol = 1e-9 * std::max(1.0, std::abs(ground_energy));
    int hits = 0;
    for (const auto& s : samples.samples)
        if (s.energy <= ground_energy + tol) hits += s.count;
    return static_cast<double>(hits) / samples.n_runs;
}

std::string_view to_string(SamplerKind kind) {
    return kind == SamplerKind::BruteForce ? "brute" : "sa";
}

SamplerKind parse_sampler_kind(std::string_view name) {
    if (name == "sa") return SamplerKind::SimulatedAnnealing;
    if (name == "brute") return SamplerKind::BruteForce;
    throw PreconditionError("unknown sampler '" + std::string(name) + "' (expected sa or brute)");
}

void ScenarioConfig::validate() const {
    require(N >= 2 && N % 2 == 0, "config: N must be even and >= 2, got " + std::to_string(N));
    require(n_spin >= 2, "config: n_spin must be >= 2, got " + std::to_string(n_spin));
    require(n_runs >= 1, "config: runs must be >= 1");
    require(mse_points >= 2, "config: mse_points must be >= 2");
    if (scenario == "custom")
        require(custom.has_value(), "config: scenario 'custom' needs tau, alpha, beta and driving");
    else
        find_scenario(scenario);
    if (ansatz == AnsatzKind::Adiabatic) {
        require(aa_params.has_value(), "config: the adiabatic ansatz needs aa_params");
        require(aa_params->size() == aa_param_count(N),
                "config: aa_params has " + std::to_string(aa_params->size()) + " entries, N = " +
                    std::to_string(N) + " needs " + std::to_string(aa_param_count(N)));
    }
}

HelmholtzProblem ScenarioConfig::problem() const {
    return scenario == "custom" ? *custom : find_scenario(scenario).problem;
}

ExperimentReport run_scenario(const ScenarioConfig& config) {
    const auto t0 = std::chrono::steady_clock::now();
    stage("config", [&] { config.validate(); });

    ExperimentReport rep;
    rep.scenario = config.scenario;
    rep.ansatz = config.ansatz;
    rep.N = config.N;
    rep.n_spin = config.n_spin;
    rep.r = config.N * config.n_spin;
    rep.seed = config.seed;

    const HelmholtzProblem problem = config.problem();
    const FourierBasisSet basis = stage("ansatz", [&] {
        return make_basis(config.ansatz, config.N, config.aa_params ? &*config.aa_params : nullptr);
    });
    const Encoding enc = stage("encode", [&] { return encode(problem, basis, config.n_spin); });
    rep.rank = stage("rank", [&] { return matrix_rank(enc.system.a); });
    rep.dynamic_range = stage("dynamic range", [&] { return dynamic_range(compact_qubo(enc.qubo)); });
    const ClosedFormSolution exact = exact_solution(problem);

    if (!config.compute_gap) {
        rep.gap_status = "disabled";
    } else if (rep.r > kSpectralQubitCap) {
        rep.gap_status = "skipped: r > " + std::to_string(kSpectralQubitCap);
    } else {
        GapOptions gap = config.gap;
        if (config.threads) gap.threads = config.threads;
        const GapProfile profile = stage("gap", [&] { return min_gap(to_ising(enc.qubo), gap); });
        rep.g_min = profile.g_min;
        rep.gap_status = profile.degenerate ? "degenerate" : "ok";
    }

    std::optional<GroundStates> ground;
    if (rep.r <= kBruteForceCap) {
        ground = stage("brute force", [&] { return brute_force(enc.qubo); });
        rep.ground_energy = ground->energy;
        rep.degeneracy = ground->degeneracy();
        double best = std::numeric_limits<double>::infinity();
        for (const auto& s : ground->states)
            best = std::min(best, mse(exact, basis, decode_bits(s, config.n_spin), config.mse_points));
        rep.mse_best = best;
    } else if (config.sampler == SamplerKind::BruteForce) {
        throw PreconditionError("brute force: r = " + std::to_string(rep.r) + " exceeds the cap of " +
                                std::to_string(kBruteForceCap) + "; use --sampler sa");
    }

    if (config.sampler == SamplerKind::SimulatedAnnealing) {
        AnnealSchedule schedule = default_schedule(enc.qubo);
        if (config.beta_start) schedule.beta_start = *config.beta_start;
        if (config.beta_end) schedule.beta_end = *config.beta_end;
        if (config.sweeps) schedule.sweeps = *config.sweeps;
        const SampleSet samples = stage("simulated annealing", [&] {
            return simulated_annealing(enc.qubo, schedule, config.n_runs, config.seed, config.threads);
        });
        rep.n_runs = samples.n_runs;
        const Sample& top = samples.samples.front();
        rep.mse_sa = mse(exact, basis, decode_bits(top.bits, config.n_spin), config.mse_points);
        if (!ground) {
            rep.relative_sr = true;
            rep.ground_energy = samples.lowest_energy();
        }
        rep.sr_sa = success_rate(samples, *rep.ground_energy);
    }

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace wavequbo
