// wavequbo: encode 1-D Helmholtz problems as QUBOs, sample them and inspect
// the annealing spectrum.
//
//   wavequbo scenario list
//   wavequbo scenario run --id exp2 --ansatz ca --n 8 --nspin 2 --runs 1000 --seed 7 --out report.csv
//   wavequbo qubo export --id exp1 --ansatz tfa --n 2 --nspin 2 --out exp1.qubo
//   wavequbo gap --id exp1 --ansatz ca --n 2 --nspin 4 --grid 201 --out gap.csv
//   wavequbo aa optimize --id exp1 --n 4 --nspin 2 --budget 2000 --seed 1 --out params.json
//
// Exit status: 0 on success, 2 for invalid input, 3 for numerical failure.

#include "wavequbo/adiabatic_ansatz.hpp"
#include "wavequbo/config.hpp"
#include "wavequbo/encoder.hpp"
#include "wavequbo/errors.hpp"
#include "wavequbo/harness.hpp"
#include "wavequbo/qubo_io.hpp"
#include "wavequbo/report.hpp"
#include "wavequbo/spectral.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace wavequbo;

namespace {

struct ProblemArgs {
    std::string id = "exp1";
    std::string ansatz = "ca";
    int N = 2;
    int n_spin = 2;
    std::string aa_params;
};

void add_problem_options(CLI::App* app, ProblemArgs& a) {
    app->add_option("--id", a.id, "scenario id (exp1..exp5)")->capture_default_str();
    app->add_option("--ansatz", a.ansatz, "tfa, ca or aa")->capture_default_str();
    app->add_option("--n", a.N, "number of basis functions (even)")->capture_default_str();
    app->add_option("--nspin", a.n_spin, "bits per weight (>= 2)")->capture_default_str();
    app->add_option("--aa-params", a.aa_params, "JSON parameter file for --ansatz aa");
}

Encoding encode_args(const ProblemArgs& a) {
    const HelmholtzProblem problem = find_scenario(a.id).problem;
    const AnsatzKind kind = parse_ansatz_kind(a.ansatz);
    std::optional<Vector> params;
    if (!a.aa_params.empty()) params = read_aa_params(a.aa_params);
    return encode(problem, make_basis(kind, a.N, params ? &*params : nullptr), a.n_spin);
}

// Writes to `path`, or stdout when it is empty or "-".
template <typename F>
void with_output(const std::string& path, F&& write) {
    if (path.empty() || path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw PreconditionError("cannot write to '" + path + "'");
    write(out);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Helmholtz problems as QUBO / Ising instances"};
    app.require_subcommand(1);

    auto* scenario = app.add_subcommand("scenario", "built-in scenarios");
    scenario->require_subcommand(1);
    auto* list = scenario->add_subcommand("list", "print the built-in scenarios");

    auto* run = scenario->add_subcommand("run", "encode, sample and measure one configuration");
    ProblemArgs run_args;
    std::string config_path, sampler = "sa", out_path, format = "csv";
    int runs = 1000, grid = 201;
    std::uint64_t seed = 0;
    std::optional<int> sweeps;
    std::optional<double> beta_start, beta_end;
    bool no_gap = false, timing = false;
    unsigned threads = 0;
    run->add_option("--config", config_path, "key = value scenario file (overrides the flags below)");
    add_problem_options(run, run_args);
    run->add_option("--sampler", sampler, "sa or brute")->capture_default_str();
    run->add_option("--runs", runs, "annealing runs")->capture_default_str();
    run->add_option("--seed", seed, "base seed")->capture_default_str();
    run->add_option("--sweeps", sweeps, "override the default sweep count");
    run->add_option("--beta-start", beta_start, "override the initial inverse temperature");
    run->add_option("--beta-end", beta_end, "override the final inverse temperature");
    run->add_option("--grid", grid, "s-grid points for g_min")->capture_default_str();
    run->add_flag("--no-gap", no_gap, "skip the spectral gap");
    run->add_option("--threads", threads, "worker threads (0 = all cores)");
    run->add_option("--format", format, "csv or json")->capture_default_str();
    run->add_flag("--timing", timing, "append wall time to the report");
    run->add_option("--out", out_path, "report file (default stdout)");

    auto* qubo = app.add_subcommand("qubo", "QUBO text export");
    qubo->require_subcommand(1);
    auto* qexport = qubo->add_subcommand("export", "write the QUBO of a configuration");
    ProblemArgs q_args;
    std::string q_out;
    add_problem_options(qexport, q_args);
    qexport->add_option("--out", q_out, "output file (default stdout)");

    auto* gap = app.add_subcommand("gap", "minimum spectral gap and the (s, lambda0, lambda1) profile");
    ProblemArgs g_args;
    int g_grid = 201;
    bool g_no_refine = false;
    std::string g_out;
    add_problem_options(gap, g_args);
    gap->add_option("--grid", g_grid, "uniform s-grid points")->capture_default_str();
    gap->add_flag("--no-refine", g_no_refine, "skip the golden-section refinement around the grid minimum");
    gap->add_option("--out", g_out, "CSV file for the profile (default stdout)");

    auto* aa = app.add_subcommand("aa", "adiabatic ansatz");
    aa->require_subcommand(1);
    auto* optimize = aa->add_subcommand("optimize", "maximise g_min over the adiabatic family");
    std::string aa_id = "exp1", aa_out;
    int aa_N = 4, aa_nspin = 2, budget = 2000;
    std::uint64_t aa_seed = 1;
    optimize->add_option("--id", aa_id, "scenario id")->capture_default_str();
    optimize->add_option("--n", aa_N, "number of basis functions")->capture_default_str();
    optimize->add_option("--nspin", aa_nspin, "bits per weight")->capture_default_str();
    optimize->add_option("--budget", budget, "objective evaluations")->capture_default_str();
    optimize->add_option("--seed", aa_seed, "seed for the random restarts")->capture_default_str();
    optimize->add_option("--out", aa_out, "parameter JSON (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) {
            for (const auto& s : builtin_scenarios())
                std::cout << s.id << "  tau=" << format_number(s.problem.tau)
                          << " alpha=" << format_number(s.problem.alpha) << " beta=" << format_number(s.problem.beta)
                          << "  " << s.summary << '\n';
        } else if (run->parsed()) {
            ScenarioConfig cfg;
            if (!config_path.empty()) {
                cfg = load_config(config_path);
            } else {
                cfg.scenario = run_args.id;
                cfg.ansatz = parse_ansatz_kind(run_args.ansatz);
                cfg.N = run_args.N;
                cfg.n_spin = run_args.n_spin;
                if (!run_args.aa_params.empty()) cfg.aa_params = read_aa_params(run_args.aa_params);
                cfg.sampler = parse_sampler_kind(sampler);
                cfg.n_runs = runs;
                cfg.seed = seed;
                cfg.sweeps = sweeps;
                cfg.beta_start = beta_start;
                cfg.beta_end = beta_end;
                cfg.gap.grid_points = grid;
                cfg.compute_gap = !no_gap;
                cfg.threads = threads;
            }
            const ReportFormat fmt = parse_report_format(format);
            const ExperimentReport rep = run_scenario(cfg);
            with_output(out_path, [&](std::ostream& os) { emit_report(os, {rep}, fmt, timing); });
        } else if (qexport->parsed()) {
            const Encoding enc = encode_args(q_args);
            with_output(q_out, [&](std::ostream& os) { write_qubo_text(os, enc.qubo); });
        } else if (gap->parsed()) {
            const Encoding enc = encode_args(g_args);
            GapOptions opts;
            opts.grid_points = g_grid;
            opts.refine = !g_no_refine;
            const GapProfile profile = min_gap(to_ising(enc.qubo), opts);
            std::cerr << "g_min " << format_number(profile.g_min) << " at s = " << format_number(profile.s_at_min)
                      << (profile.degenerate ? " (degenerate ground level)" : "") << '\n';
            with_output(g_out, [&](std::ostream& os) { write_gap_csv(os, profile); });
        } else if (optimize->parsed()) {
            AdiabaticOptions opts;
            opts.budget = budget;
            opts.seed = aa_seed;
            const auto res = optimize_adiabatic_ansatz(find_scenario(aa_id).problem, aa_N, aa_nspin, opts);
            nlohmann::ordered_json j;
            j["scenario"] = aa_id;
            j["N"] = aa_N;
            j["n_spin"] = aa_nspin;
            j["g_min"] = res.profile.g_min;
            j["s_at_min"] = res.profile.s_at_min;
            j["evaluations"] = res.evaluations;
            j["seed"] = aa_seed;
            j["params"] = std::vector<double>(res.params.data(), res.params.data() + res.params.size());
            with_output(aa_out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
        }
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }
    return 0;
}
