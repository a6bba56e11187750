#include "eichler/quadrature.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace eichler {

namespace {

struct GaussLegendre15 {
    std::array<double, 15> x{};
    std::array<double, 15> w{};

    GaussLegendre15() {
        constexpr int n = 15;
        for (int i = 0; i < n; ++i) {
            double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = z;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (z * p1 - p0) / (z * z - 1.0);
                const double dz = p1 / dp;
                z -= dz;
                if (std::abs(dz) < 1e-16) break;
            }
            x[i] = z;
            w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        }
    }
};

const GaussLegendre15& gl15() {
    static const GaussLegendre15 rule;
    return rule;
}

cplx gl_panel(const std::function<cplx(double)>& g, double a, double b, long& evals) {
    const auto& r = gl15();
    const double h = 0.5 * (b - a), m = 0.5 * (a + b);
    cplx s = 0.0;
    for (int i = 0; i < 15; ++i) s += r.w[i] * g(m + h * r.x[i]);
    evals += 15;
    return s * h;
}

void adapt(const std::function<cplx(double)>& g, double a, double b, cplx whole, int depth,
           double tol, const QuadOptions& opt, QuadResult& out) {
    const double m = 0.5 * (a + b);
    const cplx left = gl_panel(g, a, m, out.evaluations);
    const cplx right = gl_panel(g, m, b, out.evaluations);
    const cplx two = left + right;
    const double err = std::abs(two - whole);
    if (err <= tol || depth >= opt.max_depth || !(m > a && m < b)) {
        out.value += two;
        out.error += err;
        if (err > tol) out.converged = false;
        return;
    }
    adapt(g, a, m, left, depth + 1, 0.5 * tol, opt, out);
    adapt(g, m, b, right, depth + 1, 0.5 * tol, opt, out);
}

}  // namespace

QuadResult integrate_interval(const std::function<cplx(double)>& g, double a, double b,
                              const QuadOptions& opt) {
    QuadResult out;
    if (a == b) return out;
    if (b < a) {
        QuadResult r = integrate_interval(g, b, a, opt);
        r.value = -r.value;
        return r;
    }
    long evals = 0;
    // A coarse 8-panel pass sets the scale for the relative tolerance.
    cplx coarse = 0.0;
    double scale = 0.0;
    const int n0 = 8;
    std::array<cplx, n0> pieces{};
    for (int k = 0; k < n0; ++k) {
        const double pa = a + (b - a) * k / n0, pb = a + (b - a) * (k + 1) / n0;
        pieces[k] = gl_panel(g, pa, pb, evals);
        coarse += pieces[k];
        scale += std::abs(pieces[k]);
    }
    for (int pass = 0; pass < 2; ++pass) {
        out = QuadResult{};
        out.evaluations = evals;
        const double tol = std::max(opt.abs_tol, opt.rel_tol * std::max(std::abs(coarse), 1e-3 * scale));
        for (int k = 0; k < n0; ++k) {
            const double pa = a + (b - a) * k / n0, pb = a + (b - a) * (k + 1) / n0;
            adapt(g, pa, pb, pieces[k], 1, tol / n0, opt, out);
        }
        evals = out.evaluations;
        // Redo once if the refined value shows the coarse scale was far off.
        if (std::abs(out.value) <= 10.0 * std::abs(coarse) + opt.abs_tol) break;
        coarse = out.value;
    }
    return out;
}

QuadResult integrate_to_infinity(const std::function<cplx(double)>& g, double a,
                                 const QuadOptions& opt) {
    QuadResult total;
    int quiet = 0;
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < opt.max_tail_panels; ++k) {
        const QuadResult p = integrate_interval(g, a + k, a + k + 1, opt);
        total += p;
        const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(total.value));
        // Small panels only count once the integrand is on its way down.
        const double mag = std::abs(p.value);
        quiet = (mag < 1e-2 * tol && mag <= prev) ? quiet + 1 : 0;
        prev = mag;
        if (quiet >= 2) return total;
    }
    throw ConvergenceError("integrand does not decay toward the cusp");
}

// ---------------------------------------------------------------------------

cplx Geodesic::point(double u) const {
    const cplx w = kI * std::exp(u);
    if (c == 0.0) return (a * w + b) / d;
    // Written so the imaginary part stays exact close to a real endpoint.
    return a / c - (a * d - b * c) / (c * (c * w + d));
}

cplx Geodesic::derivative(double u) const {
    const cplx w = kI * std::exp(u);
    const cplx den = c * w + d;
    return (a * d - b * c) / (den * den) * w;
}

namespace {

struct BoundaryPt {
    double x;
    bool inf;
};

void set_map(Geodesic& g, BoundaryPt from, BoundaryPt to) {
    if (to.inf) {
        g.a = 1; g.b = from.x; g.c = 0; g.d = 1;
    } else if (from.inf) {
        g.a = to.x; g.b = -1; g.c = 1; g.d = 0;
    } else if (to.x > from.x) {
        g.a = to.x; g.b = from.x; g.c = 1; g.d = 1;
    } else {
        g.a = -to.x; g.b = from.x; g.c = -1; g.d = 1;
    }
}

double param_of(const Geodesic& g, cplx p) {
    const cplx w = (g.d * p - g.b) / (-g.c * p + g.a);
    return std::log(std::abs(w));
}

}  // namespace

Geodesic make_geodesic(const HPoint& from, const HPoint& to) {
    if (from.infinite && to.infinite) throw DomainError("geodesic: degenerate endpoints");
    if (!from.infinite && !to.infinite && from.z == to.z) throw DomainError("geodesic: degenerate endpoints");
    if (from.z.imag() < 0 || to.z.imag() < 0) throw DomainError("geodesic: endpoint below the real axis");
    const double inf = std::numeric_limits<double>::infinity();
    Geodesic g{};
    BoundaryPt e1{0, false}, e2{0, false};
    if (from.boundary() && to.boundary()) {
        e1 = {from.z.real(), from.infinite};
        e2 = {to.z.real(), to.infinite};
    } else if (to.infinite) {
        e1 = {from.z.real(), false};
        e2 = {0, true};
    } else if (from.infinite) {
        e1 = {0, true};
        e2 = {to.z.real(), false};
    } else {
        const cplx p = from.z, q = to.z;
        const double scale = std::max({1.0, std::abs(p), std::abs(q)});
        if (std::abs(p.real() - q.real()) <= 1e-14 * scale) {
            const double x = from.boundary() ? p.real() : (to.boundary() ? q.real() : 0.5 * (p.real() + q.real()));
            if (q.imag() > p.imag()) {
                e1 = {x, false};
                e2 = {0, true};
            } else {
                e1 = {0, true};
                e2 = {x, false};
            }
        } else {
            const double cen = (std::norm(q) - std::norm(p)) / (2.0 * (q.real() - p.real()));
            const double rad = std::abs(p - cen);
            const double tp = std::arg(p - cen), tq = std::arg(q - cen);
            if (tq < tp) {
                e1 = {cen - rad, false};
                e2 = {cen + rad, false};
            } else {
                e1 = {cen + rad, false};
                e2 = {cen - rad, false};
            }
        }
    }
    set_map(g, e1, e2);
    g.u_from = from.boundary() ? -inf : param_of(g, from.z);
    g.u_to = to.boundary() ? inf : param_of(g, to.z);
    if (!(g.u_from < g.u_to)) throw DomainError("geodesic: endpoints are not in order along the arc");
    return g;
}

GeodesicSample geodesic_param(const HPoint& from, const HPoint& to, double u) {
    const Geodesic g = make_geodesic(from, to);
    return {g.point(u), g.derivative(u)};
}

namespace {

QuadResult integrate_geodesic(const Fn& f, const GeodesicPath& p, const QuadOptions& opt) {
    const Geodesic g = make_geodesic(p.from, p.to);
    auto integrand = [&](double u) { return f(g.point(u)) * g.derivative(u); };
    const bool lo_inf = std::isinf(g.u_from), hi_inf = std::isinf(g.u_to);
    if ((lo_inf || hi_inf) && p.decay == DecayHint::None)
        throw ConvergenceError("path to a cusp needs an exponential decay hint");
    if (!lo_inf && !hi_inf) return integrate_interval(integrand, g.u_from, g.u_to, opt);
    auto reversed = [&](double v) { return integrand(-v); };
    if (lo_inf && hi_inf) {
        QuadResult r = integrate_to_infinity(integrand, 0.0, opt);
        r += integrate_to_infinity(reversed, 0.0, opt);
        return r;
    }
    if (hi_inf) return integrate_to_infinity(integrand, g.u_from, opt);
    return integrate_to_infinity(reversed, -g.u_to, opt);
}

}  // namespace

QuadResult contour_integral(const Fn& f, const ContourSpec& path, const QuadOptions& opt) {
    if (const auto* gp = std::get_if<GeodesicPath>(&path)) return integrate_geodesic(f, *gp, opt);
    if (const auto* sp = std::get_if<SegmentPath>(&path)) {
        const cplx a = sp->from, d = sp->to - sp->from;
        return integrate_interval([&](double s) { return f(a + s * d) * d; }, 0.0, 1.0, opt);
    }
    if (const auto* cp = std::get_if<CirclePath>(&path)) {
        const cplx c = cp->center;
        const double R = cp->radius;
        if (!(R > 0)) throw DomainError("circle: radius must be positive");
        return integrate_interval(
            [&](double th) {
                const cplx e = std::polar(1.0, th);
                return f(c + R * e) * (kI * R * e);
            },
            0.0, 2.0 * kPi, opt);
    }
    const auto& pl = std::get<PolylinePath>(path);
    QuadResult r;
    for (std::size_t i = 0; i + 1 < pl.points.size(); ++i)
        r += contour_integral(f, SegmentPath{pl.points[i], pl.points[i + 1]}, opt);
    return r;
}

}  // namespace eichler
