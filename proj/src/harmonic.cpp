#include "eichler/harmonic.hpp"

#include <cmath>

#include "eichler/specfun.hpp"

namespace eichler {

namespace {

cplx ipow(cplx z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cplx p = 1.0;
    for (int k = 0; k < n; ++k) p *= z;
    return p;
}

bool is_int_ge(cplx r, int k) {
    return r.imag() == 0.0 && std::nearbyint(r.real()) == r.real() && r.real() >= k;
}

bool is_nonpos_integer(cplx a) {
    return a.imag() == 0.0 && a.real() <= 0.0 && std::nearbyint(a.real()) == a.real();
}

cplx w_of(cplx z) { return (z - kI) / (z + kI); }

void require_upper(cplx z, const char* what) {
    if (!(z.imag() > 0.0)) throw DomainError(std::string(what) + ": point must lie in the upper half-plane");
}

}  // namespace

// ---------------------------------------------------------------------------

Partials fd_partials(const Fn& F, cplx z, const FDStencil& st) {
    if (!(st.h >= 1e-5 && st.h <= 1e-3)) throw DomainError("stencil: h must lie in [1e-5, 1e-3]");
    if (st.order != 2 && st.order != 4) throw DomainError("stencil: order must be 2 or 4");
    const double h = st.h;
    if (z.imag() - (st.order / 2) * h <= 0.0) throw DomainError("stencil leaves the upper half-plane");
    const cplx f0 = F(z);
    cplx fx, fy, fxx, fyy;
    if (st.order == 2) {
        const cplx xp = F(z + h), xm = F(z - h), yp = F(z + kI * h), ym = F(z - kI * h);
        fx = (xp - xm) / (2 * h);
        fy = (yp - ym) / (2 * h);
        fxx = (xp - 2.0 * f0 + xm) / (h * h);
        fyy = (yp - 2.0 * f0 + ym) / (h * h);
    } else {
        const cplx x1 = F(z + h), x_1 = F(z - h), x2 = F(z + 2 * h), x_2 = F(z - 2 * h);
        const cplx y1 = F(z + kI * h), y_1 = F(z - kI * h), y2 = F(z + 2.0 * kI * h), y_2 = F(z - 2.0 * kI * h);
        fx = (-x2 + 8.0 * x1 - 8.0 * x_1 + x_2) / (12 * h);
        fy = (-y2 + 8.0 * y1 - 8.0 * y_1 + y_2) / (12 * h);
        fxx = (-x2 + 16.0 * x1 - 30.0 * f0 + 16.0 * x_1 - x_2) / (12 * h * h);
        fyy = (-y2 + 16.0 * y1 - 30.0 * f0 + 16.0 * y_1 - y_2) / (12 * h * h);
    }
    return {f0, 0.5 * (fx - kI * fy), 0.5 * (fx + kI * fy), 0.25 * (fxx + fyy)};
}

cplx laplacian_r(const Fn& F, cplx r, cplx z, const FDStencil& st) {
    const Partials p = fd_partials(F, z, st);
    const double y = z.imag();
    return -4.0 * y * y * p.dzdzbar + 2.0 * kI * r * y * p.dzbar;
}

cplx shadow_from_dzbar(cplx r, cplx z, cplx dzbar) {
    return 2.0 * kI * std::pow(z.imag(), std::conj(r)) * std::conj(dzbar);
}

cplx shadow(const Fn& F, cplx r, cplx z, const FDStencil& st) {
    return shadow_from_dzbar(r, z, fd_partials(F, z, st).dzbar);
}

// ---------------------------------------------------------------------------

cplx f_r(cplx r, cplx z) {
    require_upper(z, "f_r");
    if (z == kI) throw PoleError("f_r: z = i");
    const cplx base = (std::conj(z) - kI) / (std::conj(z) - z);
    return 2.0 * kI / (z - kI) * std::pow(base, r - 1.0);
}

cplx hyp2f1_limit(cplx a, cplx b, cplx c, double x) {
    if (!(is_nonpos_integer(a) && is_nonpos_integer(c) && a.real() >= c.real())) return gauss_2f1(a, b, c, x);
    if (x < 0.0 || x > 0.95) throw AccuracyRefusal("hyp2f1_limit: x outside [0, 0.95]");
    // The factors a + k1 and c + k2 vanish together to first order with
    // ratio 1; terms with only the numerator zero drop out.
    const int k1 = static_cast<int>(-a.real());
    const int k2 = static_cast<int>(-c.real());
    cplx prod = 1.0, sum = 1.0;
    for (int n = 0; n < 200000; ++n) {
        const double dn = n;
        const cplx num = (n == k1) ? cplx(1.0) : (a + dn);
        const cplx den = (n == k2) ? cplx(1.0) : (c + dn);
        prod *= num * (b + dn) / (den * (dn + 1.0)) * x;
        const bool zero = (n + 1 > k1) && !(n + 1 > k2);
        if (!zero) sum += prod;
        if (n > k2 + 2 && std::abs(prod) < 1e-18 * std::abs(sum)) return sum;
        if (prod == cplx(0.0, 0.0) && n > k2) return sum;
    }
    throw ConvergenceError("hyp2f1_limit: series did not converge");
}

cplx polar_eval(const PolarIndex& idx, PolarKind kind, cplx z) {
    require_upper(z, "polar_eval");
    const cplx r = idx.r;
    const int mu = idx.mu;
    const cplx w = w_of(z);
    switch (kind) {
        case PolarKind::P:
            if (mu < 0 && z == kI) throw PoleError("P_{r,mu}: z = i");
            return std::pow(2.0 * kI / (z + kI), r) * ipow(w, mu);
        case PolarKind::M: {
            if (is_int_ge(r, 2) && !(mu <= -1 && mu >= 1 - static_cast<int>(r.real())))
                throw PoleError("M_{r,mu}: r in Z_{>=2} needs 1-r <= mu <= -1");
            const double x = 4.0 * z.imag() / std::norm(z + kI);
            if (mu >= 0) return f_r(r, z) * ipow(w, mu + 1) * gauss_2f1(1.0 + mu, 1.0 - r, 2.0 - r, x);
            return f_r(r, z) * w * ipow(std::conj(w), -mu) * hyp2f1_limit(1.0 - mu - r, 1.0, 2.0 - r, x);
        }
        case PolarKind::H: {
            if (mu > -1) throw DomainError("H_{r,mu}: needs mu <= -1");
            const double x = std::norm(w);
            return f_r(r, z) * w * ipow(std::conj(w), -mu) *
                   gauss_2f1(1.0 - mu - r, 1.0, 1.0 - static_cast<double>(mu), x);
        }
    }
    return 0.0;
}

cplx polar_shadow(const PolarIndex& idx, PolarKind kind, cplx z) {
    require_upper(z, "polar_shadow");
    const cplx rb = std::conj(idx.r);
    const cplx common = std::pow(2.0 * kI / (z + kI), 2.0 - rb) * ipow(w_of(z), -idx.mu - 1);
    switch (kind) {
        case PolarKind::P: return 0.0;
        case PolarKind::M: return (rb - 1.0) * common;
        case PolarKind::H: return -static_cast<double>(idx.mu) * common;
    }
    return 0.0;
}

cplx polar_restriction(const PolarIndex& idx, double t) {
    const cplx tc = t;
    return power_branch(kI - tc, idx.r - 2.0, ArgInterval::cut_down()) * ipow((tc - kI) / (tc + kI), idx.mu + 1);
}

cplx kernel_K(cplx r, cplx z, cplx tau) {
    require_upper(z, "kernel_K");
    require_upper(tau, "kernel_K");
    if (z == tau) throw PoleError("kernel_K: z = tau");
    const cplx zb = std::conj(z);
    return 2.0 * kI / (z - tau) * std::pow((zb - tau) / (zb - z), r - 1.0);
}

cplx kernel_K_shadow(cplx r, cplx z, cplx tau) {
    const cplx rb = std::conj(r);
    return (rb - 1.0) * std::pow((z - std::conj(tau)) / (2.0 * kI), rb - 2.0);
}

cplx kernel_K_restriction(cplx r, cplx tau, double t) {
    return power_branch(tau - t, r - 2.0, ArgInterval::cut_down());
}

cplx kernel_pr(int r, cplx z, cplx tau) {
    if (r < 2) throw DomainError("p_r: needs r in Z_{>=2}");
    return 2.0 * kI / (z - tau) * ipow((tau - kI) / (z - kI), r - 1);
}

cplx boundary_quotient(const Fn& G, cplx r, double t) {
    constexpr double e = 1e-4;
    auto q = [&](double eps) {
        const cplx z(t, eps);
        return G(z) / f_r(r, z);
    };
    return 2.0 * q(e) - q(2 * e);
}

PolarExpansion polar_expansion_partial(cplx r, cplx z, cplx tau, int M) {
    require_upper(z, "polar_expansion");
    require_upper(tau, "polar_expansion");
    if (M < 1) throw DomainError("polar_expansion: M must be >= 1");
    const double aw = std::abs(w_of(z)), ax = std::abs(w_of(tau));
    if (std::abs(aw - ax) <= 1e-12) throw DomainError("polar_expansion: |w(z)| = |w(tau)| is on the boundary of convergence");
    const cplx rd = 2.0 - r;
    cplx s = 0.0;
    int terms = 0;
    if (aw > ax) {
        if (is_int_ge(r, 2)) {
            const int ri = static_cast<int>(r.real());
            for (int mu = -1; mu >= 1 - ri; --mu) {
                const int k = -mu - 1;
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                s += sign * binom(r - 2.0, k) * polar_eval({rd, k}, PolarKind::P, tau) *
                     polar_eval({r, mu}, PolarKind::M, z);
                ++terms;
            }
            return {s + kernel_pr(ri, z, tau), PolarRegime::Outer, terms};
        }
        cplx coef = 1.0;  // (2-r)_k / k!
        for (int k = 0; k < M; ++k) {
            if (k > 0) coef *= (rd + static_cast<double>(k - 1)) / static_cast<double>(k);
            const int mu = -k - 1;
            s += coef * polar_eval({rd, k}, PolarKind::P, tau) * polar_eval({r, mu}, PolarKind::M, z);
            ++terms;
        }
        return {s, PolarRegime::Outer, terms};
    }
    cplx coef = 1.0;  // (1-r)_m / m!, m = -mu
    for (int m = 1; m <= M; ++m) {
        coef *= (1.0 - r + static_cast<double>(m - 1)) / static_cast<double>(m);
        s -= coef * polar_eval({rd, m - 1}, PolarKind::P, tau) * polar_eval({r, -m}, PolarKind::H, z);
        ++terms;
    }
    for (int mu = 0; mu < M; ++mu) {
        s -= polar_eval({rd, -mu - 1}, PolarKind::P, tau) * polar_eval({r, mu}, PolarKind::P, z);
        ++terms;
    }
    return {s, PolarRegime::Inner, terms};
}

cplx resolvent_Q(cplx r, cplx z1, cplx z2) {
    require_upper(z1, "resolvent_Q");
    require_upper(z2, "resolvent_Q");
    if (z1 == z2) throw PoleError("resolvent_Q: coincident points");
    if (is_int_ge(r, 2)) throw PoleError("resolvent_Q: M_{r,0} needs r not in Z_{>=2}");
    return polar_eval({r, 0}, PolarKind::M, (z2 - z1.real()) / z1.imag());
}

cplx resolvent_nhe_residual(cplx r, cplx z1, cplx z2, const FDStencil& st) {
    const Partials p = fd_partials([&](cplx z) { return resolvent_Q(r, z, z2); }, z1, st);
    const double y = z1.imag();
    return 4.0 * y * y * p.dzdzbar + 2.0 * kI * r * y * p.dzbar + r * p.f;
}

// ---------------------------------------------------------------------------

std::pair<cplx, cplx> greens_form(const Fn& f1, const Fn& f2, cplx r, cplx z) {
    const FDStencil st{1e-3, 4};
    const Partials p1 = fd_partials(f1, z, st);
    const Partials p2 = fd_partials(f2, z, st);
    const cplx A = (p1.dz + r / (z - std::conj(z)) * p1.f) * p2.f;
    const cplx B = p1.f * p2.dzbar;
    return {A, B};
}

CauchyResult cauchy_formula(const Fn& F, cplx r, cplx zp, const CircleContour& C, double tol) {
    if (is_int_ge(r, 1)) throw DomainError("cauchy_formula: r must not lie in Z_{>=1}");
    if (!(C.radius > 0.0) || C.center.imag() - C.radius <= 2e-3)
        throw DomainError("cauchy_formula: circle must lie in the upper half-plane");
    const double gap = std::abs(std::abs(zp - C.center) - C.radius);
    if (gap < 1e-3) throw AccuracyRefusal("cauchy_formula: z' is too close to the contour");
    const bool inside = std::abs(zp - C.center) < C.radius;
    const Fn Q = [&](cplx z) { return resolvent_Q(r, z, zp); };
    auto integrand = [&](double th) {
        const cplx e = std::polar(1.0, th);
        const cplx z = C.center + C.radius * e;
        const auto [A, B] = greens_form(F, Q, r, z);
        return A * (kI * C.radius * e) + B * (-kI * C.radius * std::conj(e));
    };
    // Periodic integrand: trapezoid sums, reusing the previous nodes.
    int n = 32;
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) acc += integrand(2 * kPi * j / n);
    cplx prev = acc * (2 * kPi / n);
    for (; n <= 8192; n *= 2) {
        for (int j = 0; j < n; ++j) acc += integrand(2 * kPi * (j + 0.5) / n);
        const cplx cur = acc * (kPi / n);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) {
            const cplx expected = inside ? 2.0 * kPi * kI * (1.0 - r) * F(zp) : cplx(0.0);
            return {cur, expected, inside, 2 * n};
        }
        prev = cur;
    }
    throw ConvergenceError("cauchy_formula: trapezoid rule did not converge");
}

// ---------------------------------------------------------------------------

QuadResult Q_F(const FormEvaluator& F, cplx z0, cplx t, const QuadOptions& opt) {
    require_upper(z0, "Q_F");
    if (!(t.imag() < 0.0)) throw DomainError("Q_F: t must lie in the lower half-plane");
    return contour_integral([&](cplx z) { return omega(F, t, z); },
                            GeodesicPath{HPoint::at(z0), HPoint::at(std::conj(t))}, opt);
}

cplx E2_star(cplx z) {
    require_upper(z, "E2_star");
    return eisenstein_e2(z) - 3.0 / (kPi * z.imag());
}

cplx F_rn(cplx r, cplx n, cplx z) {
    require_upper(z, "F_rn");
    if (is_int_ge(r, 2)) throw DomainError("F_rn: r must not lie in Z_{>=2}");
    const double y = z.imag();
    const Kummer1F1 k = kummer_1f1_detailed(1.0 - r, 2.0 - r, 4.0 * kPi * n * y);
    if (k.rel_err > 1e-10) throw AccuracyRefusal("F_rn: 1F1 argument outside the accurate range");
    return std::exp(2.0 * kPi * kI * n * z) * std::pow(y, 1.0 - r) * k.value;
}

// ---------------------------------------------------------------------------

cplx FourierData::derivative(int m, cplx z) const {
    cplx s = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == cplx(0.0)) continue;
        const cplx lam = 2.0 * kPi * kI * (static_cast<double>(k) + alpha);
        s += coeffs[k] * ipow(lam, m) * std::exp(lam * z);
    }
    return s;
}

namespace {

using Jet = std::vector<cplx>;  // Taylor coefficients in eps, fixed length

Jet jet_mul(const Jet& a, const Jet& b) {
    Jet c(a.size(), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

}  // namespace

BolResult bol_operator(const FourierData& F, int r, const GroupElement& g, cplx z) {
    require_upper(z, "bol_operator");
    if (r < 2) throw DomainError("bol_operator: r must be >= 2");
    const int n = r - 1;
    const std::size_t L = static_cast<std::size_t>(n) + 1;
    const double a = g.a(), c = g.c(), d = g.d();
    const cplx u0 = c * z + d;
    const cplx w0 = g.act(z);

    // delta(eps) = g(z + eps) - g(z).
    Jet delta(L, 0.0);
    if (c == 0.0) {
        if (L > 1) delta[1] = a / d;
    } else {
        // g(z+eps) = a/c - 1/(c (u0 + c eps)).
        for (std::size_t k = 1; k < L; ++k)
            delta[k] = -std::pow(-c, static_cast<double>(k)) / (c * ipow(u0, static_cast<int>(k) + 1));
    }
    Jet Fw(L, 0.0), dp(L, 0.0);
    dp[0] = 1.0;
    double fact = 1.0;
    for (std::size_t m = 0; m < L; ++m) {
        if (m > 0) {
            dp = jet_mul(dp, delta);
            fact *= static_cast<double>(m);
        }
        const cplx fm = F.derivative(static_cast<int>(m), w0) / fact;
        for (std::size_t k = 0; k < L; ++k) Fw[k] += fm * dp[k];
    }
    // (c(z+eps) + d)^{r-2}.
    Jet lin(L, 0.0), pw(L, 0.0);
    lin[0] = u0;
    if (L > 1) lin[1] = c;
    pw[0] = 1.0;
    for (int k = 0; k < r - 2; ++k) pw = jet_mul(pw, lin);
    const Jet prod = jet_mul(pw, Fw);
    double nf = 1.0;
    for (int k = 2; k <= n; ++k) nf *= k;
    const cplx lhs = prod[static_cast<std::size_t>(n)] * nf;
    const cplx rhs = ipow(u0, -r) * F.derivative(n, w0);
    return {lhs, rhs};
}

}  // namespace eichler
