#include "eichler/quadrature.hpp"
#include "eichler/specfun.hpp"
#include "helpers.hpp"

using namespace eichler;
using eichler::test::rel_err;

TEST_SUITE("quadrature") {
    TEST_CASE("interval rules") {
        auto r = integrate_interval([](double x) { return cplx(std::cos(x), x * x); }, 0.0, 2.0);
        CHECK(r.converged);
        CHECK(std::abs(r.value - cplx(std::sin(2.0), 8.0 / 3.0)) < 1e-14);
        // Endpoint singularity x^{-1/2}. Panel tolerances halve faster than the
        // end panel error shrinks, so this is flagged rather than silently accepted.
        r = integrate_interval([](double x) { return cplx(1.0 / std::sqrt(x)); }, 0.0, 1.0);
        CHECK_FALSE(r.converged);
        CHECK(std::abs(r.value - 2.0) < 1e-8);
        CHECK(std::abs(r.value - 2.0) < 10.0 * r.error);
        // Gamma(s) = int_0^inf x^{s-1} e^{-x} dx, s = 3.2.
        const double s = 3.2;
        auto g = [&](double x) { return cplx(std::pow(x, s - 1.0) * std::exp(-x)); };
        const cplx gam = integrate_interval(g, 0.0, 1.0).value + integrate_to_infinity(g, 1.0).value;
        CHECK(rel_err(gam, std::tgamma(s)) < 1e-12);
    }

    TEST_CASE("segments and circles") {
        const Fn one = [](cplx) { return cplx(1.0); };
        CHECK(std::abs(contour_integral(one, SegmentPath{kI, 2.0 * kI}).value - kI) < 1e-15);
        const Fn pole = [](cplx z) { return 1.0 / (z - cplx(0.2, 1.1)); };
        CHECK(std::abs(contour_integral(pole, CirclePath{kI, 0.5}).value - 2.0 * kPi * kI) < 1e-12);
        CHECK(std::abs(contour_integral(pole, CirclePath{3.0 * kI, 0.5}).value) < 1e-12);
        // Polyline equals the sum of its segments.
        const Fn f = [](cplx z) { return std::exp(kI * z); };
        const std::vector<cplx> pts{kI, cplx(1.0, 2.0), cplx(-0.5, 1.5)};
        const cplx poly = contour_integral(f, PolylinePath{pts}).value;
        const cplx segs = contour_integral(f, SegmentPath{pts[0], pts[1]}).value +
                          contour_integral(f, SegmentPath{pts[1], pts[2]}).value;
        CHECK(std::abs(poly - segs) < 1e-14);
        // Antiderivative -i e^{iz}.
        CHECK(std::abs(poly - (-kI) * (f(pts[2]) - f(pts[0]))) < 1e-13);
    }

    TEST_CASE("geodesic parametrisation") {
        // i -> infinity is i e^u.
        for (double u : {0.0, 0.5, 2.0}) {
            const auto gs = geodesic_param(HPoint::at(kI), HPoint::inf(), u);
            CHECK(std::abs(gs.z - kI * std::exp(u)) < 1e-14 * std::exp(u));
            CHECK(std::abs(gs.dz - kI * std::exp(u)) < 1e-14 * std::exp(u));
        }
        const Geodesic g0 = make_geodesic(HPoint::at(0.0), HPoint::inf());
        CHECK(std::abs(g0.point(0.0) - kI) < 1e-15);
        CHECK(std::isinf(g0.u_from));
        CHECK(std::isinf(g0.u_to));
        // Semicircle from -1 to 1 has apex i.
        const Geodesic g1 = make_geodesic(HPoint::at(-1.0), HPoint::at(1.0));
        CHECK(std::abs(g1.point(0.0) - kI) < 1e-15);
        // Unit speed in the hyperbolic metric.
        const Geodesic g2 = make_geodesic(HPoint::at(cplx(0.3, 0.5)), HPoint::at(cplx(-1.0, 2.0)));
        for (double u : {g2.u_from, 0.5 * (g2.u_from + g2.u_to), g2.u_to}) {
            const cplx z = g2.point(u);
            CHECK(std::abs(std::abs(g2.derivative(u)) / z.imag() - 1.0) < 1e-13);
        }
        CHECK(std::abs(g2.point(g2.u_from) - cplx(0.3, 0.5)) < 1e-14);
        CHECK(std::abs(g2.point(g2.u_to) - cplx(-1.0, 2.0)) < 1e-14);
    }

    TEST_CASE("geodesic integrals are additive and path independent") {
        const Fn f = [](cplx z) { return std::exp(2.0 * kPi * kI * z) * (z * z + 1.0); };
        const HPoint a = HPoint::at(cplx(0.3, 0.8)), b = HPoint::at(cplx(-0.4, 1.7)), c = HPoint::at(cplx(0.9, 1.1));
        const cplx ab = contour_integral(f, GeodesicPath{a, b}).value;
        const cplx bc = contour_integral(f, GeodesicPath{b, c}).value;
        const cplx ac = contour_integral(f, GeodesicPath{a, c}).value;
        CHECK(std::abs(ab + bc - ac) < 1e-13);
        const cplx seg = contour_integral(f, SegmentPath{a.z, c.z}).value;
        CHECK(std::abs(seg - ac) < 1e-13);

        // Cusp with a decay hint; int_{z0}^{i inf} e^{2 pi i z} dz = -e^{2 pi i z0}/(2 pi i).
        const Fn q = [](cplx z) { return std::exp(2.0 * kPi * kI * z); };
        const cplx z0(0.25, 0.6);
        const auto r = contour_integral(q, GeodesicPath{HPoint::at(z0), HPoint::inf(), DecayHint::Exponential});
        CHECK(r.converged);
        CHECK(std::abs(r.value + q(z0) / (2.0 * kPi * kI)) < 1e-14);
        // Reversed orientation.
        const auto rr = contour_integral(q, GeodesicPath{HPoint::inf(), HPoint::at(z0), DecayHint::Exponential});
        CHECK(std::abs(rr.value + r.value) < 1e-14);
    }

    TEST_CASE("cusp without decay") {
        const Fn q = [](cplx z) { return std::exp(2.0 * kPi * kI * z); };
        CHECK_THROWS_AS(contour_integral(q, GeodesicPath{HPoint::at(kI), HPoint::inf()}), ConvergenceError);
        const Fn flat = [](cplx) { return cplx(1.0); };
        CHECK_THROWS_AS(contour_integral(flat, GeodesicPath{HPoint::at(kI), HPoint::inf(), DecayHint::Exponential}),
                        ConvergenceError);
    }
}
