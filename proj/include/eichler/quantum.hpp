#pragma once

#include <optional>
#include <vector>

#include "eichler/core.hpp"
#include "eichler/quadrature.hpp"

namespace eichler {

// p/q in lowest terms, q > 0.
struct Rational {
    long p = 0;
    long q = 1;

    static Rational make(long p, long q);
    double value() const { return static_cast<double>(p) / static_cast<double>(q); }
};

// An integral matrix sending infinity to a.
GroupElement scaling_matrix(const Rational& a);

// a' = g a; throws DomainError when g a is infinity.
Rational act_rational(const GroupElement& g, const Rational& a);

// h_a(t) = int_{z0}^{a} eta^{2r}(z) (z-t)^{r-2} dz for Im t <= 0. The last
// leg is pulled back through the scaling matrix of a, where it becomes a
// vertical ray with exponential decay. `via`: optional intermediate point
// of the path (z0 -> via -> a).
QuadResult eta_cusp_integral(cplx r, const Rational& a, cplx z0, cplx t,
                             std::optional<cplx> via = std::nullopt, const QuadOptions& opt = {});

struct QuantumSample {
    Rational a;
    cplx r;
    cplx z0;
    cplx value;  // p(a) = h_a(a)
    double error;
};

// Re r > 0 only.
QuantumSample quantum_value_eta(cplx r, const Rational& a, cplx z0, const QuadOptions& opt = {});

// int_{delta^{-1} z0}^{z0} omega_r(eta^{2r}; t, z) dz for Im t <= 0.
cplx eta_cocycle_closed(cplx r, const GroupElement& delta, cplx z0, cplx t, const QuadOptions& opt = {});

struct QuantumDefect {
    cplx lhs;  // p|_{v_r,2-r}(delta - 1)(a)
    cplx rhs;  // psi^{z0}_delta(a)
    double residual;
};

QuantumDefect quantum_defect(cplx r, const Rational& a, const GroupElement& delta, cplx z0,
                             const QuadOptions& opt = {});

struct QuantumLadder {
    std::vector<double> eps;
    std::vector<cplx> values;  // h_a(a - i eps)
    cplx limit;                // p(a)
    bool pass;                 // |h_a(a - i eps) - p(a)| <= 10 eps^{min(1, Re r)} for all eps
};

QuantumLadder quantum_ladder(cplx r, const Rational& a, cplx z0,
                             const std::vector<double>& eps = {1e-2, 1e-3, 1e-4});

// |(ct+d)^{-2} h_{delta a}(delta t) - h_a(t) + c/(ct+d)| with h_a(t) = 1/(t-a).
double weight0_quantum(const Rational& a, const GroupElement& delta, cplx t);

}  // namespace eichler
