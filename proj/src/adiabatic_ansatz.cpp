#include "wavequbo/adiabatic_ansatz.hpp"

#include "wavequbo/encoder.hpp"
#include "wavequbo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace wavequbo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
    Vector x;
    double value;  // search objective, larger is better
};

// Keeps the `capacity` best distinct points seen so far.
class Archive {
public:
    explicit Archive(int capacity) : capacity_(capacity) {}

    void offer(const Vector& x, double value) {
        if (!std::isfinite(value)) return;
        for (const auto& c : items_)
            if ((c.x - x).norm() < 1e-12) return;
        items_.push_back({x, value});
        std::stable_sort(items_.begin(), items_.end(),
                         [](const Candidate& a, const Candidate& b) { return a.value > b.value; });
        if (static_cast<int>(items_.size()) > capacity_) items_.pop_back();
    }
    const std::vector<Candidate>& items() const { return items_; }

private:
    int capacity_;
    std::vector<Candidate> items_;
};

// Minimises f from x0 using at most `max_evals` evaluations of f.
template <typename F>
int nelder_mead(F&& f, const Vector& x0, double step, int max_evals) {
    const Eigen::Index n = x0.size();
    std::vector<Vector> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    int evals = 0;
    fv[0] = f(x0);
    ++evals;
    for (Eigen::Index i = 0; i < n && evals < max_evals; ++i) {
        simplex[i + 1](i) += step;
        fv[i + 1] = f(simplex[i + 1]);
        ++evals;
    }
    if (evals < n + 1) return evals;

    std::vector<int> idx(n + 1);
    while (evals < max_evals) {
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
        const int best = idx.front(), worst = idx.back(), second = idx[n - 1];
        if (!std::isfinite(fv[best])) return evals;  // nothing admissible around here

        double size = 0.0;
        for (int i = 1; i <= n; ++i) size = std::max(size, (simplex[idx[i]] - simplex[best]).cwiseAbs().maxCoeff());
        if (size < 1e-7 || (std::isfinite(fv[worst]) && fv[worst] - fv[best] < 1e-12)) return evals;

        Vector centroid = Vector::Zero(n);
        for (int i = 0; i < n; ++i) centroid += simplex[idx[i]];
        centroid /= static_cast<double>(n);

        const Vector xr = centroid + (centroid - simplex[worst]);
        const double fr = f(xr);
        ++evals;
        if (fr < fv[best]) {
            if (evals >= max_evals) {
                simplex[worst] = xr;
                fv[worst] = fr;
                break;
            }
            const Vector xe = centroid + 2.0 * (centroid - simplex[worst]);
            const double fe = f(xe);
            ++evals;
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            simplex[worst] = xr;
            fv[worst] = fr;
            continue;
        }
        if (evals >= max_evals) break;
        const bool outside = fr < fv[worst];
        const Vector xc = outside ? Vector(centroid + 0.5 * (xr - centroid))
                                  : Vector(centroid + 0.5 * (simplex[worst] - centroid));
        const double fc = f(xc);
        ++evals;
        if (fc < std::min(fr, fv[worst])) {
            simplex[worst] = xc;
            fv[worst] = fc;
            continue;
        }
        // shrink towards the best vertex
        for (int i = 1; i <= n && evals < max_evals; ++i) {
            Vector& x = simplex[idx[i]];
            x = simplex[best] + 0.5 * (x - simplex[best]);
            fv[idx[i]] = f(x);
            ++evals;
        }
    }
    return evals;
}

Vector random_params(int N, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0 / N);
    Vector p(aa_param_count(N));
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = normal(rng);
    return p;
}

}  // namespace

GapOptions AdiabaticOptions::coarse_gap_options() {
    GapOptions g;
    g.grid_points = 41;
    g.refine = true;
    g.s_resolution = 1e-3;
    // warm-started Krylov beats dense diagonalisation already at dimension 256
    g.eigen.method = EigenMethod::Krylov;
    return g;
}

double adiabatic_objective(const HelmholtzProblem& problem, const Vector& params, int N, int n_spin,
                           const GapOptions& gap) {
    FourierBasisSet basis;
    try {
        basis = aa_basis(N, params);
    } catch (const PreconditionError&) {
        return -kInf;  // a zero row is just an infeasible point for the search
    }
    const Encoding enc = encode(problem, basis, n_spin);
    if (matrix_rank(enc.system.a) < N) return -kInf;
    return min_gap(to_ising(enc.qubo), gap).g_min;
}

AdiabaticResult optimize_adiabatic_ansatz(const HelmholtzProblem& problem, int N, int n_spin,
                                          const AdiabaticOptions& options) {
    require(N >= 2 && N % 2 == 0, "optimize_adiabatic_ansatz: N must be even and >= 2");
    require(n_spin >= 2, "optimize_adiabatic_ansatz: n_spin must be >= 2");
    require(N * n_spin <= kAdiabaticQubitCap,
            "optimize_adiabatic_ansatz: r = " + std::to_string(N * n_spin) + " exceeds the cap of " +
                std::to_string(kAdiabaticQubitCap));
    require(options.budget >= 1, "optimize_adiabatic_ansatz: budget must be >= 1");
    require(options.initial_step > 0.0, "optimize_adiabatic_ansatz: initial_step must be positive");
    require(options.finalists >= 1, "optimize_adiabatic_ansatz: finalists must be >= 1");

    Archive archive(options.finalists);
    int used = 0;
    auto objective = [&](const Vector& x) {
        const double g = adiabatic_objective(problem, x, N, n_spin, options.search_gap);
        archive.offer(x, g);
        return -g;
    };

    std::mt19937_64 rng(options.seed);
    const int dim = aa_param_count(N);
    // One restart may not take the whole budget, so the ansatz families after
    // the first still get looked at.
    const int per_restart = std::max(2 * (dim + 1), options.budget / 3);

    AdiabaticResult result;
    const Vector ca = aa_params_from_basis(ca_basis(N));
    for (int restart = 0; used < options.budget; ++restart) {
        Vector start;
        if (restart == 0)
            start = ca;
        else if (restart == 1)
            start = aa_params_from_basis(tfa_basis(N));
        else
            start = random_params(N, rng);
        const int cap = std::min(per_restart, options.budget - used);
        used += nelder_mead(objective, start, options.initial_step, cap);
        ++result.restarts;
    }
    result.evaluations = used;

    if (archive.items().empty())
        throw NumericalError("optimize_adiabatic_ansatz: no full-rank candidate within " +
                             std::to_string(used) + " evaluations");

    // The coarse search profile can overshoot a narrow minimum, so the
    // finalists are ranked again on the full profile.
    double best = -kInf;
    for (const auto& c : archive.items()) {
        const FourierBasisSet basis = aa_basis(N, c.x);
        const GapProfile profile = min_gap(to_ising(encode(problem, basis, n_spin).qubo), options.final_gap);
        if (profile.g_min > best) {
            best = profile.g_min;
            result.basis = basis;
            result.params = c.x;
            result.profile = profile;
        }
    }
    return result;
}

}  // namespace wavequbo
