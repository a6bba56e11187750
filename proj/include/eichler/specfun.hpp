#pragma once

#include <vector>

#include "eichler/core.hpp"

namespace eichler {

// Gamma function for complex argument (Lanczos, reflection for Re z < 1/2).
cplx cgamma(cplx z);
// 1/Gamma(z); entire, exactly 0 at non-positive integers.
cplx rgamma(cplx z);
// log Gamma for Re z > 0 (continuous branch, real on the positive axis).
cplx clgamma(cplx z);

cplx pochhammer(cplx a, int n);
// Generalised binomial coefficient x(x-1)...(x-n+1)/n!.
cplx binom(cplx x, int n);

// Divisor sums sigma_k(n) for k = 1 and k = -1.
double sigma1(long n);
double sigma_m1(long n);

// ---------------------------------------------------------------------------
// eta^{2r}

struct EtaPowerSeries {
    cplx r;
    std::vector<cplx> coeffs;  // p_0(r) ... p_K(r)
};

// Coefficients of exp(-2r sum sigma_{-1}(n) q^n).
EtaPowerSeries eta_power_coeffs(cplx r, int K);

// log eta(z) = pi i z/12 + sum log(1-q^m), without modular reduction.
cplx log_eta_direct(cplx z);

// eta^{2r}(z) = exp(2r log eta(z)); points with Im z < 0.5 are moved into the
// fundamental domain and pulled back with the automorphy factor of v_r.
cplx eta_power_eval(cplx r, cplx z);

// log eta(iy) for real y > 0 (real valued, uses eta(i/y) = sqrt(y) eta(iy)).
double log_eta_imag(double y);

// E2(z) = 1 - 24 sum sigma_1(n) q^n. Small Im z is handled with
// E2(-1/z) = z^2 E2(z) - 6iz/pi.
cplx eisenstein_e2(cplx z);

// ---------------------------------------------------------------------------
// Incomplete gamma, hypergeometric

// Gamma(a,u) = int_u^inf v^{a-1} e^{-v} dv, principal branch on C \ (-inf,0].
cplx incomplete_gamma(cplx a, cplx u);

// Gauss 2F1 for real x in [0, 0.95]. Non-positive integer c is accepted
// when the series terminates before the pole or after an Euler transform.
cplx gauss_2f1(cplx a, cplx b, cplx c, double x);

struct Kummer1F1 {
    cplx value;
    bool asymptotic;  // true when the large-|t| expansion was used
    double rel_err;   // estimated relative truncation error
};

Kummer1F1 kummer_1f1_detailed(cplx a, cplx b, cplx t);
cplx kummer_1f1(cplx a, cplx b, cplx t);

// ---------------------------------------------------------------------------
// Hurwitz-Lerch zeta H(s,a,z) = sum_{n>=0} e^{2 pi i a n} (z+n)^{-s}

enum class LerchMethod { Direct, Shifted, Asymptotic };

struct LerchEval {
    cplx s, a, z;
    cplx value;
    LerchMethod method;
};

// Requires Im a >= 0 and z outside (-inf, 0].
LerchEval hurwitz_lerch_eval(cplx s, cplx a, cplx z);
cplx hurwitz_lerch(cplx s, cplx a, cplx z);

// B_k(x, y) for k = 0..K from z e^{xz}/(y e^z - 1).
std::vector<cplx> generalized_bernoulli(cplx x, cplx y, int K);

// Coefficient b_k(lambda, s) of the expansion of H(s,a,1/2+z) at infinity.
cplx lerch_b(int k, cplx lambda, cplx s);

struct LerchAsymptotic {
    cplx value;
    double next_term;  // modulus of the first omitted term
};

// eps(lambda) z^{1-s}/(s-1) + sum_{k<K} b_k(lambda,s) z^{-k-s}, which
// approximates H(s,a,1/2+z); lambda = e^{2 pi i a}. Valid in the sector
// |arg z| <= pi - delta; delta = 0.1 here, outside it a DomainError.
LerchAsymptotic lerch_asymptotic(cplx s, cplx a, cplx z, int K);

}  // namespace eichler
