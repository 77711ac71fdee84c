#pragma once

#include "wavequbo/types.hpp"

#include <string>
#include <string_view>

namespace wavequbo {

enum class AnsatzKind { TruncatedFourier, Circulant, Adiabatic };

std::string_view to_string(AnsatzKind kind);
AnsatzKind parse_ansatz_kind(std::string_view name);  // "tfa" | "ca" | "aa"

/// N basis functions G_n(x) = sum_{k=-N/2}^{N/2} g(n, k) e^{ikx}.
///
/// Column j of `coeffs` holds frequency k = j - N/2. Every set built here is
/// conjugate symmetric, g(n, -k) = conj g(n, k), so each G_n is real.
/// Derivatives come for free: order d multiplies column k by (ik)^d.
struct FourierBasisSet {
    int N = 0;
    AnsatzKind kind = AnsatzKind::TruncatedFourier;
    ComplexMatrix coeffs;  // N x (N+1)

    int max_frequency() const { return N / 2; }
    std::complex<double> coeff(int n, int k) const { return coeffs(n, k + N / 2); }
};

struct CollocationGrid {
    int N = 0;
    Vector points;  // x_m = 2 pi m / N
    double spacing() const;
};

CollocationGrid collocation_grid(int N);

/// Rows 0..N/2-1 are cos(nx), rows N/2..N-1 are sin(nx), n = 1..N/2.
FourierBasisSet tfa_basis(int N);

/// h_n(x) = (1/N) sum_k e^{ik(x - x_n)} / c_k, c_k = 2 at |k| = N/2 else 1.
FourierBasisSet ca_basis(int N);

/// Number of real parameters describing one adiabatic-ansatz basis set:
/// per row one real for k = 0 and (Re, Im) for each k = 1..N/2.
int aa_param_count(int N);

/// Common row norm that aa_basis normalizes to. It equals the norm of every
/// circulant row, so the circulant set is an exact member of the family.
double aa_row_norm(int N);

/// Builds a conjugate-symmetric set from `params` (layout above) and rescales
/// every row to aa_row_norm(N). Throws on wrong length or an all-zero row.
FourierBasisSet aa_basis(int N, const Vector& params);

/// Inverse of aa_basis for any conjugate-symmetric set (no rescaling).
Vector aa_params_from_basis(const FourierBasisSet& basis);

/// Component n is Re sum_k (ik)^order g(n,k) e^{ikx}; order in {0, 1, 2}.
Vector eval_basis(const FourierBasisSet& basis, int order, double x);

/// Imaginary residue of the basis values at x (should be roundoff).
double basis_imaginary_residue(const FourierBasisSet& basis, double x);

double reconstruct_solution(const FourierBasisSet& basis, const Vector& weights, double x);

FourierBasisSet make_basis(AnsatzKind kind, int N, const Vector* aa_params = nullptr);

}  // namespace wavequbo
