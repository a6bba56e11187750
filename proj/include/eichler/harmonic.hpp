#pragma once

#include <vector>

#include "eichler/cocycles.hpp"
#include "eichler/core.hpp"
#include "eichler/quadrature.hpp"

namespace eichler {

// Central differences in x and y. h in [1e-5, 1e-3], order 2 or 4.
struct FDStencil {
    double h = 1e-4;
    int order = 2;
};

struct Partials {
    cplx f, dz, dzbar, dzdzbar;
};

// Throws DomainError if the stencil leaves the upper half-plane.
Partials fd_partials(const Fn& F, cplx z, const FDStencil& st = {});

// -4y^2 d_z d_zbar F + 2iry d_zbar F.
cplx laplacian_r(const Fn& F, cplx r, cplx z, const FDStencil& st = {});

// 2i y^{conj r} conj(d_zbar F).
cplx shadow(const Fn& F, cplx r, cplx z, const FDStencil& st = {});
cplx shadow_from_dzbar(cplx r, cplx z, cplx dzbar);

// ---------------------------------------------------------------------------
// Polar r-harmonic functions, w = (z-i)/(z+i)

// f_r(z) = 2i/(z-i) ((zbar-i)/(zbar-z))^{r-1}; the base has positive real
// part on the upper half-plane, so the principal power is used.
cplx f_r(cplx r, cplx z);

enum class PolarKind { P, M, H };

struct PolarIndex {
    cplx r;
    int mu;
};

// M needs r not in Z_{>=2}, or 1-r <= mu <= -1 (then the value is the limit
// in r); H needs mu <= -1. The 2F1 argument is capped at 0.95.
cplx polar_eval(const PolarIndex& idx, PolarKind kind, cplx z);

// Closed-form shadows: 0, (rbar-1)(2i/(z+i))^{2-rbar} w^{-mu-1}, -mu(...).
cplx polar_shadow(const PolarIndex& idx, PolarKind kind, cplx z);

// rs_r M_{r,mu}(t) = (i-t)^{r-2} ((t-i)/(t+i))^{mu+1}, t real.
cplx polar_restriction(const PolarIndex& idx, double t);

// 2F1(a,b;c;x) continued in r along a = a0 - dr, c = c0 - dr when a0 and c0
// are non-positive integers with a0 >= c0. Otherwise the ordinary series.
cplx hyp2f1_limit(cplx a, cplx b, cplx c, double x);

// K_r(z;tau) = 2i/(z-tau) ((zbar-tau)/(zbar-z))^{r-1}.
cplx kernel_K(cplx r, cplx z, cplx tau);
// (rbar-1) ((z - conj tau)/(2i))^{rbar-2}.
cplx kernel_K_shadow(cplx r, cplx z, cplx tau);
// rs_r K_r(.;tau)(t) = (tau-t)^{r-2}, arg in (-pi/2, 3pi/2).
cplx kernel_K_restriction(cplx r, cplx tau, double t);
// p_r(z;tau) = 2i/(z-tau) ((tau-i)/(z-i))^{r-1}, integer r only.
cplx kernel_pr(int r, cplx z, cplx tau);

// lim_{eps -> 0} G(t + i eps)/f_r(t + i eps) from eps = 1e-4, 2e-4
// (linear extrapolation).
cplx boundary_quotient(const Fn& G, cplx r, double t);

enum class PolarRegime { Outer, Inner };  // |w(z)| > |w(tau)|, resp. <

struct PolarExpansion {
    cplx value;
    PolarRegime regime;
    int terms;
};

// Partial sum with mu = -1, ..., -M (and mu = 0, ..., M-1 for the P-part
// of the inner regime). For r in Z_{>=2} in the outer regime the sum is
// finite and p_r is added; M is then ignored.
PolarExpansion polar_expansion_partial(cplx r, cplx z, cplx tau, int M);

// Q_r(z1,z2) = M_{r,0}((z2 - Re z1)/Im z1).
cplx resolvent_Q(cplx r, cplx z1, cplx z2);

// 4y^2 d d_bar Q + 2iry d_bar Q + r Q in the first variable.
cplx resolvent_nhe_residual(cplx r, cplx z1, cplx z2, const FDStencil& st = {});

// ---------------------------------------------------------------------------
// Green's form and the Cauchy-type formula

struct CircleContour {
    cplx center;
    double radius;
};

struct CauchyResult {
    cplx integral;
    cplx expected;  // 2 pi i (1-r) F(z') inside, 0 outside
    bool inside;
    int nodes;
};

// Coefficients (A, B) of [f1, f2]_r = A dz + B dzbar at z; derivatives by
// 4th-order differences.
std::pair<cplx, cplx> greens_form(const Fn& f1, const Fn& f2, cplx r, cplx z);

// Trapezoid rule on the circle, doubled until two levels agree to `tol`.
// Throws AccuracyRefusal when z' is within 1e-3 of the circle.
CauchyResult cauchy_formula(const Fn& F, cplx r, cplx zp, const CircleContour& C,
                            double tol = 1e-12);

// ---------------------------------------------------------------------------
// Q_F, E2*, F_{r,n}

// int_{z0}^{conj t} omega_r(F; t, z) dz along the geodesic, Im t < 0.
QuadResult Q_F(const FormEvaluator& F, cplx z0, cplx t, const QuadOptions& opt = {});

// E2(z) - 3/(pi y).
cplx E2_star(cplx z);

// e^{2 pi i n z} y^{1-r} 1F1(1-r; 2-r; 4 pi n y).
cplx F_rn(cplx r, cplx n, cplx z);

// ---------------------------------------------------------------------------
// Bol's equality

// F(z) = sum_k coeffs[k] e^{2 pi i (k + alpha) z}.
struct FourierData {
    double alpha = 0.0;
    std::vector<cplx> coeffs;

    cplx derivative(int m, cplx z) const;
};

struct BolResult {
    cplx lhs;  // d_z^{r-1} (F|_{2-r} g)
    cplx rhs;  // F^{(r-1)}|_r g
};

// lhs by Taylor arithmetic on z -> (cz+d)^{r-2} F(gz), rhs from the
// term-wise derivative. r >= 2.
BolResult bol_operator(const FourierData& F, int r, const GroupElement& g, cplx z);

}  // namespace eichler
