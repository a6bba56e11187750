#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "eichler/core.hpp"

namespace eichler {

// A point of the closed upper half-plane including the cusp at infinity.
struct HPoint {
    cplx z{0.0, 0.0};
    bool infinite = false;

    static HPoint at(cplx z) { return {z, false}; }
    static HPoint inf() { return {0.0, true}; }
    bool boundary() const { return infinite || z.imag() == 0.0; }
};

struct QuadOptions {
    double abs_tol = 1e-13;
    double rel_tol = 1e-13;
    int max_depth = 48;
    // Give up after this many unit panels toward a cusp.
    int max_tail_panels = 400;
};

struct QuadResult {
    cplx value{0.0, 0.0};
    double error = 0.0;
    bool converged = true;
    long evaluations = 0;

    QuadResult& operator+=(const QuadResult& o) {
        value += o.value;
        error += o.error;
        converged = converged && o.converged;
        evaluations += o.evaluations;
        return *this;
    }
};

// Adaptive 15-point Gauss-Legendre on [a, b] with bisection where a panel and
// its two halves disagree. Panels are processed in a fixed order.
QuadResult integrate_interval(const std::function<cplx(double)>& g, double a, double b,
                              const QuadOptions& opt = {});

// Integral over [a, inf) of a function that decays quickly (exponentially in
// the parameter or faster). Unit panels are added until two consecutive
// panels fall below 1e-2 of the tolerance.
QuadResult integrate_to_infinity(const std::function<cplx(double)>& g, double a,
                                 const QuadOptions& opt = {});

// Hyperbolic geodesic through two points of the closed upper half-plane,
// parametrised as z(u) = m(i e^u) for a Moebius map m sending 0 and infinity
// to the boundary endpoints. u is hyperbolic arc length.
struct Geodesic {
    // m(w) = (a w + b)/(c w + d), real entries, ad - bc > 0.
    double a, b, c, d;
    double u_from, u_to;  // +-infinity when the endpoint lies on the boundary

    cplx point(double u) const;
    cplx derivative(double u) const;  // dz/du
};

Geodesic make_geodesic(const HPoint& from, const HPoint& to);

struct GeodesicSample {
    cplx z;
    cplx dz;
};
// Point and derivative at parameter u measured from the geodesic's own origin.
GeodesicSample geodesic_param(const HPoint& from, const HPoint& to, double u);

enum class DecayHint { None, Exponential };

struct GeodesicPath {
    HPoint from, to;
    DecayHint decay = DecayHint::None;
};
struct SegmentPath {
    cplx from, to;
};
struct CirclePath {
    cplx center;
    double radius;  // positively oriented
};
struct PolylinePath {
    std::vector<cplx> points;
};

using ContourSpec = std::variant<GeodesicPath, SegmentPath, CirclePath, PolylinePath>;

// int_path f(z) dz. Throws ConvergenceError when a path to a cusp carries no
// decay hint or the integrand does not decay.
QuadResult contour_integral(const Fn& f, const ContourSpec& path, const QuadOptions& opt = {});

}  // namespace eichler
