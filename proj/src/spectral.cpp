#include "wavequbo/spectral.hpp"

#include "wavequbo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

namespace wavequbo {

AnnealingHamiltonian::AnnealingHamiltonian(const IsingProblem& ising) : r_(ising.r()) {
    require(r_ >= 1 && r_ <= kSpectralQubitCap, "AnnealingHamiltonian: r = " + std::to_string(r_) +
                                                     " outside the supported range 1.." +
                                                     std::to_string(kSpectralQubitCap));
    const Eigen::Index dim = dimension();
    diag_.resize(dim);
    Vector spins(r_);
    for (Eigen::Index x = 0; x < dim; ++x) {
        for (int i = 0; i < r_; ++i) spins(i) = ((x >> i) & 1) ? 1.0 : -1.0;
        diag_(x) = spins.dot(ising.J * spins) + ising.h.dot(spins);
    }
}

void AnnealingHamiltonian::apply_driver(const Vector& x, Vector& y) const {
    const Eigen::Index dim = dimension();
    y.setZero(dim);
    for (int i = 0; i < r_; ++i) {
        const Eigen::Index bit = Eigen::Index{1} << i;
        for (Eigen::Index k = 0; k < dim; ++k) y(k) += x(k ^ bit);
    }
}

void AnnealingHamiltonian::apply(double s, const Vector& x, Vector& y) const {
    apply_driver(x, y);
    y *= (1.0 - s);
    y.array() += s * diag_.array() * x.array();
}

Eigen::SparseMatrix<double> AnnealingHamiltonian::sparse(double s) const {
    const Eigen::Index dim = dimension();
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(dim) * (r_ + 1));
    for (Eigen::Index k = 0; k < dim; ++k) {
        if (s != 0.0) entries.emplace_back(k, k, s * diag_(k));
        if (s != 1.0)
            for (int i = 0; i < r_; ++i) entries.emplace_back(k, k ^ (Eigen::Index{1} << i), 1.0 - s);
    }
    Eigen::SparseMatrix<double> H(dim, dim);
    H.setFromTriplets(entries.begin(), entries.end());
    return H;
}

Matrix AnnealingHamiltonian::dense(double s) const { return Matrix(sparse(s)); }

LowestTwo AnnealingHamiltonian::lowest_two(double s, const EigenSolverOptions& options,
                                           const Matrix* warm_start) const {
    const Eigen::Index dim = dimension();
    if (dim < 2) throw PreconditionError("lowest_two: dimension must be >= 2");
    if (s == 1.0) {
        // diagonal: sort directly so a degenerate ground level is counted twice
        Vector d = diag_;
        std::partial_sort(d.data(), d.data() + 2, d.data() + dim);
        return LowestTwo{d(0), d(1), Matrix()};
    }
    const bool dense = options.method == EigenMethod::Dense ||
                       (options.method == EigenMethod::Auto && dim <= options.dense_cutoff);
    if (dense) return lowest_two_dense(this->dense(s));
    // For s < 1, conjugating by prod_i sigma_z^(i) makes every off-diagonal
    // entry nonpositive on a connected hypercube, so the ground level is simple.
    EigenSolverOptions kr = options;
    kr.resolve_multiplicity = false;
    return lowest_two_krylov([this, s](const Vector& x, Vector& y) { apply(s, x, y); }, dim, kr, warm_start);
}

Eigen::SparseMatrix<double> build_hamiltonian(const IsingProblem& ising, double s) {
    require(s >= 0.0 && s <= 1.0, "build_hamiltonian: s must lie in [0, 1]");
    return AnnealingHamiltonian(ising).sparse(s);
}

GapProfile min_gap(const IsingProblem& ising, const GapOptions& options) {
    require(options.grid_points >= 11, "min_gap: grid_points must be >= 11");
    const AnnealingHamiltonian H(ising);
    const int n = options.grid_points;

    GapProfile profile;
    profile.s_values.resize(n);
    profile.lambda0.resize(n);
    profile.lambda1.resize(n);
    for (int i = 0; i < n; ++i) profile.s_values[i] = static_cast<double>(i) / (n - 1);

    // Fixed chunks of consecutive s values, warm-started within a chunk, keep
    // the result independent of the worker count.
    constexpr int kChunk = 10;
    const int chunks = (n + kChunk - 1) / kChunk;
    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : options.threads;
    threads = std::min<unsigned>(threads, static_cast<unsigned>(chunks));
    std::vector<std::exception_ptr> errors(threads);
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (int c = static_cast<int>(t); c < chunks; c += static_cast<int>(threads)) {
                        Matrix warm;
                        for (int i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i) {
                            const auto res =
                                H.lowest_two(profile.s_values[i], options.eigen, warm.size() ? &warm : nullptr);
                            profile.lambda0[i] = res.lambda0;
                            profile.lambda1[i] = res.lambda1;
                            if (res.vectors.size()) warm = res.vectors;
                        }
                    }
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    auto gap_at = [&](int i) { return profile.lambda1[i] - profile.lambda0[i]; };
    int best = 0;
    for (int i = 1; i < n; ++i)
        if (gap_at(i) < gap_at(best)) best = i;
    profile.g_min = gap_at(best);
    profile.s_at_min = profile.s_values[best];
    profile.degenerate = gap_at(n - 1) < kDegenerateGap;

    if (options.refine && profile.g_min > 0.0) {
        double a = profile.s_values[std::max(best - 1, 0)];
        double b = profile.s_values[std::min(best + 1, n - 1)];
        auto eval = [&](double s) {
            const auto res = H.lowest_two(s, options.eigen);
            profile.s_values.push_back(s);
            profile.lambda0.push_back(res.lambda0);
            profile.lambda1.push_back(res.lambda1);
            const double g = res.gap();
            if (g < profile.g_min) {
                profile.g_min = g;
                profile.s_at_min = s;
            }
            return g;
        };
        const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - invphi * (b - a);
        double d = a + invphi * (b - a);
        double fc = eval(c);
        double fd = eval(d);
        while (b - a > options.s_resolution) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - invphi * (b - a);
                fc = eval(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + invphi * (b - a);
                fd = eval(d);
            }
        }
    }
    return profile;
}

void write_gap_csv(std::ostream& out, const GapProfile& profile) {
    std::vector<std::size_t> order(profile.s_values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return profile.s_values[a] < profile.s_values[b]; });
    out << "s,lambda0,lambda1\n";
    char buf[128];
    for (const auto i : order) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", profile.s_values[i], profile.lambda0[i],
                      profile.lambda1[i]);
        out << buf;
    }
}

}  // namespace wavequbo
