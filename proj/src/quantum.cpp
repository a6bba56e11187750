#include "eichler/quantum.hpp"

#include <cmath>
#include <numeric>

#include "eichler/specfun.hpp"

namespace eichler {

Rational Rational::make(long p, long q) {
    if (q == 0) throw DomainError("rational: zero denominator");
    if (q < 0) {
        p = -p;
        q = -q;
    }
    const long g = std::gcd(p, q);
    return {p / g, q / g};
}

GroupElement scaling_matrix(const Rational& a) {
    // p d - b q = 1 by the extended Euclidean algorithm.
    long r0 = a.p, r1 = a.q, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const long k = r0 / r1;
        r0 -= k * r1;
        std::swap(r0, r1);
        s0 -= k * s1;
        std::swap(s0, s1);
        t0 -= k * t1;
        std::swap(t0, t1);
    }
    // s0 p + t0 q = r0 = +-1.
    long d = s0, b = -t0;
    if (r0 < 0) {
        d = -d;
        b = -b;
    }
    return GroupElement(IntMatrix{a.p, b, a.q, d});
}

Rational act_rational(const GroupElement& g, const Rational& a) {
    const IntMatrix& m = g.int_matrix();
    const long num = m.a * a.p + m.b * a.q;
    const long den = m.c * a.p + m.d * a.q;
    if (den == 0) throw DomainError("act_rational: image is the cusp at infinity");
    return Rational::make(num, den);
}

namespace {

void check_weight(cplx r) {
    if (!(r.real() > 0.0)) throw DomainError("quantum values need Re r > 0");
}

void check_t(cplx t) {
    if (t.imag() > 0.0) throw DomainError("quantum: t must satisfy Im t <= 0");
}

cplx omega_eta(cplx r, cplx t, cplx z) {
    return power_branch(z - t, r - 2.0, ArgInterval::cut_down()) * eta_power_eval(r, z);
}

}  // namespace

QuadResult eta_cusp_integral(cplx r, const Rational& a, cplx z0, cplx t, std::optional<cplx> via,
                             const QuadOptions& opt) {
    check_weight(r);
    check_t(t);
    if (!(z0.imag() > 0.0)) throw DomainError("quantum: z0 must lie in the upper half-plane");
    QuadResult total;
    cplx start = z0;
    if (via) {
        if (!(via->imag() > 0.0)) throw DomainError("quantum: intermediate point must lie in the upper half-plane");
        total += contour_integral([&](cplx z) { return omega_eta(r, t, z); },
                                  GeodesicPath{HPoint::at(z0), HPoint::at(*via)}, opt);
        start = *via;
    }
    // z = sigma w, dz = (qw+d)^{-2} dw, eta^{2r}(sigma w) = j(sigma, w) eta^{2r}(w).
    const GroupElement sigma = scaling_matrix(a);
    const MultiplierSystem ms = MultiplierSystem::modular(r);
    const cplx w0 = sigma.inverse().act(start);
    auto pulled = [&](cplx w) {
        const cplx z = sigma.act(w);
        const cplx den = sigma.denom(w);
        return automorphy_factor(ms, sigma, w) / (den * den) * eta_power_eval(r, w) *
               power_branch(z - t, r - 2.0, ArgInterval::cut_down());
    };
    total += contour_integral(pulled, GeodesicPath{HPoint::at(w0), HPoint::inf(), DecayHint::Exponential}, opt);
    return total;
}

QuantumSample quantum_value_eta(cplx r, const Rational& a, cplx z0, const QuadOptions& opt) {
    const QuadResult q = eta_cusp_integral(r, a, z0, a.value(), std::nullopt, opt);
    if (!q.converged) throw ConvergenceError("quantum_value_eta: quadrature did not converge");
    return {a, r, z0, q.value, q.error};
}

cplx eta_cocycle_closed(cplx r, const GroupElement& delta, cplx z0, cplx t, const QuadOptions& opt) {
    check_t(t);
    const cplx start = delta.inverse().act(z0);
    if (std::abs(start - z0) <= 1e-15 * std::max(1.0, std::abs(z0))) return 0.0;
    return contour_integral([&](cplx z) { return omega_eta(r, t, z); },
                            GeodesicPath{HPoint::at(start), HPoint::at(z0)}, opt)
        .value;
}

QuantumDefect quantum_defect(cplx r, const Rational& a, const GroupElement& delta, cplx z0,
                             const QuadOptions& opt) {
    check_weight(r);
    const Rational da = act_rational(delta, a);
    const cplx pda = quantum_value_eta(r, da, z0, opt).value;
    const cplx pa = quantum_value_eta(r, a, z0, opt).value;
    const MultiplierSystem ms = MultiplierSystem::modular(r);
    // p(delta a) enters through f(delta t) at t = a.
    const Fn f = [&](cplx) { return pda; };
    const cplx lhs = slash_v(f, ms, 2.0 - r, delta, a.value(), HalfPlane::LowerClosed) - pa;
    const cplx rhs = eta_cocycle_closed(r, delta, z0, a.value(), opt);
    return {lhs, rhs, std::abs(lhs - rhs)};
}

QuantumLadder quantum_ladder(cplx r, const Rational& a, cplx z0, const std::vector<double>& eps) {
    QuantumLadder L;
    L.eps = eps;
    L.limit = quantum_value_eta(r, a, z0).value;
    L.pass = !eps.empty();
    const double expo = std::min(1.0, r.real());
    for (double e : eps) {
        const cplx v = eta_cusp_integral(r, a, z0, cplx(a.value(), -e)).value;
        L.values.push_back(v);
        if (!(std::abs(v - L.limit) <= 10.0 * std::pow(e, expo))) L.pass = false;
    }
    return L;
}

double weight0_quantum(const Rational& a, const GroupElement& delta, cplx t) {
    const double c = delta.c(), d = delta.d();
    const cplx ctd = c * t + d;
    if (ctd == cplx(0.0)) throw DomainError("weight0_quantum: ct + d = 0");
    const Rational da = act_rational(delta, a);
    const cplx lhs = 1.0 / (ctd * ctd) / (delta.act(t) - da.value()) - 1.0 / (t - a.value());
    return std::abs(lhs + c / ctd);
}

}  // namespace eichler
