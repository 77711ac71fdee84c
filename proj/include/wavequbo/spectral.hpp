#pragma once

#include "wavequbo/eigensolver.hpp"
#include "wavequbo/encoder.hpp"

#include <Eigen/Sparse>

#include <iosfwd>
#include <vector>

namespace wavequbo {

inline constexpr int kSpectralQubitCap = 16;

/// H(s) = (1 - s) H0 + s HQ on r qubits, H0 = sum_i sigma_x^(i) and HQ the
/// diagonal Ising energy minus the Ising offset. Basis state |x> carries
/// w_i = bit i of x.
class AnnealingHamiltonian {
public:
    explicit AnnealingHamiltonian(const IsingProblem& ising);

    int qubits() const { return r_; }
    Eigen::Index dimension() const { return Eigen::Index{1} << r_; }
    const Vector& problem_diagonal() const { return diag_; }

    void apply(double s, const Vector& x, Vector& y) const;
    void apply_driver(const Vector& x, Vector& y) const;  // H0 only
    Eigen::SparseMatrix<double> sparse(double s) const;
    Matrix dense(double s) const;

    LowestTwo lowest_two(double s, const EigenSolverOptions& options = {}, const Matrix* warm_start = nullptr) const;

private:
    int r_;
    Vector diag_;
};

/// Sparse (1 - s) H0 + s HQ; throws for r above kSpectralQubitCap.
Eigen::SparseMatrix<double> build_hamiltonian(const IsingProblem& ising, double s);

struct GapProfile {
    std::vector<double> s_values;
    std::vector<double> lambda0;
    std::vector<double> lambda1;
    double g_min = 0.0;
    double s_at_min = 0.0;
    bool degenerate = false;  // lambda1 - lambda0 < 1e-10 at s = 1
};

struct GapOptions {
    int grid_points = 201;
    bool refine = true;
    double s_resolution = 1e-4;
    unsigned threads = 0;
    EigenSolverOptions eigen;
};

inline constexpr double kDegenerateGap = 1e-10;

/// Gap on a uniform s-grid, then golden-section refinement inside the
/// bracket around the grid minimum. Refined points are appended to the
/// profile, so the profile is sorted by evaluation order, not by s.
GapProfile min_gap(const IsingProblem& ising, const GapOptions& options = {});

void write_gap_csv(std::ostream& out, const GapProfile& profile);

}  // namespace wavequbo
