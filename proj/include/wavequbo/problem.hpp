#pragma once

#include <string>
#include <vector>

namespace wavequbo {

/// Finite sum  sum_k (a_k cos kx + b_k sin kx)  with distinct nonnegative k.
class TrigPolynomial {
public:
    struct Term {
        int k;
        double cos_amp;
        double sin_amp;
    };

    TrigPolynomial() = default;
    /// Throws PreconditionError on negative or repeated frequencies, or a
    /// nonzero sine amplitude at k = 0.
    explicit TrigPolynomial(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// d^order/dx^order of the polynomial at x, order >= 0.
    double derivative(double x, int order) const;
    double operator()(double x) const { return derivative(x, 0); }

private:
    std::vector<Term> terms_;
};

double eval_driving(const TrigPolynomial& f, double x);

/// u'' + tau^2 u = F on [0, 2pi] with u(0) = alpha, u'(0) = beta.
struct HelmholtzProblem {
    double tau = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    TrigPolynomial driving;

    HelmholtzProblem() = default;
    HelmholtzProblem(double tau, double alpha, double beta, TrigPolynomial driving);
};

/// u(x) = c1 cos(tau x) + c2 sin(tau x) + P(x) + x * S(x), where P is the
/// non-resonant particular part and S collects the resonant (k == tau) terms.
struct ClosedFormSolution {
    double tau = 1.0;
    double c_cos = 0.0;
    double c_sin = 0.0;
    TrigPolynomial particular;
    struct SecularTerm {
        int k;
        double x_cos_amp;  // coefficient of x cos kx
        double x_sin_amp;  // coefficient of x sin kx
    };
    std::vector<SecularTerm> secular;

    double derivative(double x, int order) const;
    double operator()(double x) const { return derivative(x, 0); }
};

/// Undetermined coefficients per frequency; resonant frequencies get the
/// secular x cos / x sin response.
ClosedFormSolution exact_solution(const HelmholtzProblem& problem);

/// order 0..2
double eval_exact(const ClosedFormSolution& sol, double x, int order = 0);

}  // namespace wavequbo
