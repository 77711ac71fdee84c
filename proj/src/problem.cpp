#include "wavequbo/problem.hpp"

#include "wavequbo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace wavequbo {

namespace {

// d^n/dx^n of (a cos kx + b sin kx), returned as value at x.
double trig_derivative(int k, double a, double b, double x, int order) {
    double ca = a, sb = b;  // current coefficients of cos and sin
    for (int i = 0; i < order; ++i) {
        const double na = k * sb;
        const double nb = -k * ca;
        ca = na;
        sb = nb;
    }
    return ca * std::cos(k * x) + sb * std::sin(k * x);
}

}  // namespace

TrigPolynomial::TrigPolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {
    std::set<int> seen;
    for (const auto& t : terms_) {
        require(t.k >= 0, "TrigPolynomial: frequency must be nonnegative");
        require(seen.insert(t.k).second, "TrigPolynomial: repeated frequency " + std::to_string(t.k));
        require(t.k != 0 || t.sin_amp == 0.0, "TrigPolynomial: k = 0 term cannot carry a sine amplitude");
    }
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return a.k < b.k; });
}

double TrigPolynomial::derivative(double x, int order) const {
    double sum = 0.0;
    for (const auto& t : terms_) sum += trig_derivative(t.k, t.cos_amp, t.sin_amp, x, order);
    return sum;
}

double eval_driving(const TrigPolynomial& f, double x) { return f(x); }

HelmholtzProblem::HelmholtzProblem(double tau_, double alpha_, double beta_, TrigPolynomial driving_)
    : tau(tau_), alpha(alpha_), beta(beta_), driving(std::move(driving_)) {
    require(tau > 0.0 && std::isfinite(tau), "HelmholtzProblem: tau must be positive");
}

double ClosedFormSolution::derivative(double x, int order) const {
    // c1 cos + c2 sin at frequency tau (possibly non-integer)
    double ca = c_cos, sb = c_sin;
    for (int i = 0; i < order; ++i) {
        const double na = tau * sb;
        const double nb = -tau * ca;
        ca = na;
        sb = nb;
    }
    double u = ca * std::cos(tau * x) + sb * std::sin(tau * x);
    u += particular.derivative(x, order);
    // (x g)^(n) = x g^(n) + n g^(n-1)
    for (const auto& s : secular) {
        u += x * trig_derivative(s.k, s.x_cos_amp, s.x_sin_amp, x, order);
        if (order >= 1) u += order * trig_derivative(s.k, s.x_cos_amp, s.x_sin_amp, x, order - 1);
    }
    return u;
}

ClosedFormSolution exact_solution(const HelmholtzProblem& problem) {
    const double tau = problem.tau;
    ClosedFormSolution sol;
    sol.tau = tau;

    std::vector<TrigPolynomial::Term> particular;
    double value_at_zero = 0.0;
    double slope_at_zero = 0.0;
    for (const auto& t : problem.driving.terms()) {
        const double denom = tau * tau - static_cast<double>(t.k) * t.k;
        if (std::abs(t.k - tau) < 1e-12) {
            // x (A cos + B sin) maps to 2 tau (B cos - A sin)
            const double A = -t.sin_amp / (2.0 * tau);
            const double B = t.cos_amp / (2.0 * tau);
            sol.secular.push_back({t.k, A, B});
            slope_at_zero += A;
        } else {
            const double a = t.cos_amp / denom;
            const double b = t.sin_amp / denom;
            particular.push_back({t.k, a, b});
            value_at_zero += a;
            slope_at_zero += t.k * b;
        }
    }
    sol.particular = TrigPolynomial(std::move(particular));
    sol.c_cos = problem.alpha - value_at_zero;
    sol.c_sin = (problem.beta - slope_at_zero) / tau;
    return sol;
}

double eval_exact(const ClosedFormSolution& sol, double x, int order) {
    require(order >= 0 && order <= 2, "eval_exact: order must be 0, 1 or 2");
    return sol.derivative(x, order);
}

}  // namespace wavequbo
