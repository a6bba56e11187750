#pragma once

#include <vector>

#include "eichler/cocycles.hpp"
#include "eichler/core.hpp"

namespace eichler {

enum class AvSign { Plus, Minus };

// g represents an element of D^omega_{2-r}: g(t) = O(|t|^{Re r - 2}) at infinity.
struct AverageSpec {
    cplx lambda;
    AvSign sign;
    cplx r;
    Fn g;
};

struct AverageValue {
    cplx value;
    double error;  // estimated truncation/extrapolation error
    long terms;    // evaluations of g
};

// Plus: sum_{n>=0} lambda^{-n} g(t+n). Minus: -sum_{n>=1} lambda^n g(t-n).
// |lambda| = 1 is allowed for Re r < 1 (extrapolated tail); otherwise the
// series must be geometrically convergent.
AverageValue one_sided_average(const AverageSpec& spec, cplx t, double tol = 1e-13);

// Av g - lambda^{-1} (Av g)(. + 1) - g at t.
double average_difference_residual(const AverageSpec& spec, cplx t);

// Continuation in r for g_r(t) = (i-t)^{r-2} h(t), |lambda| = 1. h must be
// holomorphic for |z - i| >= radius (including infinity). N terms of the
// expansion of h at infinity are summed with Hurwitz-Lerch zeta values; the
// remainder is averaged directly.
AverageValue average_continued(const Fn& h, cplx r, cplx lambda, AvSign sign, cplx t, int N = 4,
                               double radius = 4.0);

// Coefficients h_k of h(z) = sum_k h_k (z - i)^{-k}, k < n.
std::vector<cplx> expansion_at_infinity(const Fn& h, int n, double radius = 4.0);

struct AverageAsymptotics {
    cplx c_m1, c0, c1;
};

// Av g(1/2 + t) ~ (it)^{r-2} (c_{-1} t + c_0 + c_1/t + ...) for
// g(t) = (it)^{r-2}(a0 + a1/t + a2/t^2 + ...), |lambda| = 1.
AverageAsymptotics average_asymptotic_coeffs(cplx a0, cplx a1, cplx a2, cplx r, cplx lambda);

// Fits c_{-1}, ..., c_{m-2} from Av g(1/2 + t) at m real t of the same sign
// (m = ts.size(), at least 3) and returns the first three.
AverageAsymptotics average_asymptotic_fit(const AverageSpec& spec, const std::vector<double>& ts);

// ---------------------------------------------------------------------------
// Parabolic difference equation lambda^{-1} h(t+1) - h(t) = int_{z0-1}^{z0} omega_r(E; t, z)

enum class ParabolicKind { Constant, Cuspidal, Eta };

struct ParabolicProblem {
    ParabolicKind kind;
    cplx r;
    cplx z0;
    FormEvaluator E;  // Cuspidal only
    cplx lambda;      // period factor of E

    static ParabolicProblem constant(cplx r, cplx z0);
    static ParabolicProblem cuspidal(FormEvaluator E, cplx lambda, cplx z0);
    static ParabolicProblem eta(cplx r, cplx z0);
};

// Constant: (1-r)^{-1}(z0-t)^{r-1}, or -log(z0-t) at r = 1.
// Cuspidal: int_{z0}^{i inf} (z-t)^{r-2} E(z) dz on the vertical ray.
// Eta: the incomplete gamma series (Re r > 0 only).
cplx solve_parabolic(const ParabolicProblem& p, cplx t, int K = 0);

cplx parabolic_rhs(const ParabolicProblem& p, cplx t);

double parabolic_residual(const ParabolicProblem& p, cplx t);

}  // namespace eichler
