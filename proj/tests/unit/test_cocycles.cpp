#include "eichler/cocycles.hpp"
#include "eichler/specfun.hpp"
#include "helpers.hpp"

using namespace eichler;
using eichler::test::rel_err;
using eichler::test::Sampler;

namespace {

const GroupElement kS = GroupElement::S();
const GroupElement kT = GroupElement::T();

}  // namespace

TEST_SUITE("cocycles") {
    TEST_CASE("identity and weight zero") {
        const auto F = FormEvaluator::eta_power(2.5);
        CHECK(std::abs(eichler_cocycle(F, GroupElement(), kI, -2.0 * kI).value) == 0.0);

        // For F = 1 the integral of (z-t)^{-2} is elementary.
        const auto one = FormEvaluator::constant_one();
        const cplx z0(0.3, 1.2);
        Sampler s;
        for (const GroupElement& g : {kS, kT, GroupElement(IntMatrix{2, 1, 1, 1})}) {
            for (int k = 0; k < 4; ++k) {
                const cplx t = s.lower();
                const cplx w = g.inverse().act(z0);
                const cplx expect = -1.0 / (z0 - t) + 1.0 / (w - t);
                CHECK(std::abs(eichler_cocycle(one, g, z0, t).value - expect) < 1e-12);
            }
        }
    }

    TEST_CASE("frozen cocycle values") {
        // 30-digit references, geodesic integral from S^{-1} z0 to z0.
        const cplx z0(0.3, 1.2), t(0.0, -2.0);
        const auto c1 = eichler_cocycle(FormEvaluator::eta_power(2.5), kS, z0, t);
        CHECK(c1.converged);
        CHECK(rel_err(c1.value, cplx(0.0134182053943938931, 0.301548740579627990)) < 1e-11);
        const auto c2 = eichler_cocycle(FormEvaluator::eta_power(cplx(1.3, 0.4)), kS, z0, t);
        CHECK(rel_err(c2.value, cplx(0.0799888559881371172, -0.0111548125193891990)) < 1e-11);
    }

    TEST_CASE("period function") {
        CHECK(rel_err(period_function(2.5, cplx(0.0, -2.0)),
                      cplx(-0.587765068677800683, 0.587765068677800683)) < 1e-11);
        CHECK(rel_err(period_function(2.5, cplx(0.7, -0.4)),
                      cplx(-0.513781078524978561, 0.316242114859262637)) < 1e-11);
        CHECK(rel_err(period_function(cplx(1.3, 0.4), cplx(0.0, -2.0)),
                      cplx(0.220643506241446847, 0.154853804626672148)) < 1e-11);
        CHECK(rel_err(period_function(cplx(1.3, 0.4), cplx(0.7, -0.4)),
                      cplx(0.341333724480086698, 0.0157880610056652122)) < 1e-11);
        CHECK_THROWS_AS(period_function(2.5, cplx(0.5, 0.1)), DomainError);
    }

    TEST_CASE("cusp cocycle") {
        const auto F = FormEvaluator::eta_power(2.5);
        CHECK(std::abs(cusp_cocycle(F, kT, cplx(0.2, -0.7)).value) < 1e-15);
        const cplx t(0.7, -0.4);
        CHECK(rel_err(cusp_cocycle(F, kS, t).value, period_function(2.5, t)) < 1e-12);
        CHECK_THROWS(cusp_cocycle(FormEvaluator::constant_one(), kS, t));
    }

    TEST_CASE("relations as residual reports") {
        const auto pts = default_lower_points();
        CHECK(pts.size() == 10);
        for (const cplx& p : pts) CHECK(p.imag() <= -0.3);
        auto rep = verify_period_relations(cplx(2.5, 0.5), pts);
        CHECK(rep.pass);
        CHECK(rep.max_residual() < 1e-9);
        const auto F = FormEvaluator::eta_power(cplx(0.8, 0.2));
        rep = verify_cocycle_relation(F, cplx(0.1, 1.3), {{kS, kT}, {kT * kS, kS}}, pts);
        CHECK(rep.pass);
        rep = verify_basepoint_change(F, kS, cplx(0.1, 1.3), cplx(-0.4, 0.9), pts);
        CHECK(rep.pass);
        CHECK(rep.max_residual() <= 1e-8);
    }

    TEST_CASE("Mellin integral") {
        // 30-digit references.
        CHECK(rel_err(I_integral(1.0, 1.0).value, 1.66288589105862108) < 1e-12);
        CHECK(rel_err(I_integral(12.0, 6.0).value, 0.00154487936039502721) < 1e-12);
        // eta^{2r}(i/y) = y^r eta^{2r}(iy) gives I(r,s) = I(r,r-s); Direct does not use it.
        const cplx r(2.5, 0.3), s(0.9, 0.2);
        const cplx a = I_integral(r, s, IMethod::Direct).value;
        CHECK(rel_err(a, I_integral(r, r - s, IMethod::Direct).value) < 1e-10);
        CHECK(rel_err(a, I_integral(r, s, IMethod::Split).value) < 1e-10);
    }

    TEST_CASE("L-series") {
        // I(r,s) = (2 pi)^{-s} Gamma(s) L(s).
        for (double s : {6.0, 8.0}) {
            const auto L = L_eta(12.0, s);
            CHECK(rel_err(std::pow(2.0 * kPi, -s) * std::tgamma(s) * L.value, I_integral(12.0, s).value) < 1e-11);
        }
        const auto d = L_eta(12.0, 8.0, LMethod::Direct);
        const auto sm = L_eta(12.0, 8.0, LMethod::Smoothed);
        CHECK(std::abs(d.value - sm.value) <= d.tail_bound + 1e-12 * std::abs(sm.value));
        // 20 more terms move the direct sum by less than the reported tail.
        const auto more = L_eta(12.0, 8.0, LMethod::Direct, d.terms + 20);
        CHECK(std::abs(more.value - d.value) <= d.tail_bound);
        CHECK_THROWS_AS(L_eta(12.0, 6.0, LMethod::Direct), ConvergenceError);
    }

    TEST_CASE("period series coefficients") {
        // sum c_n t^n is asymptotic to psi(t) as t -> 0 in the lower half-plane:
        // the truncation error after N terms scales like |t|^N.
        const cplx r = 2.5;
        const auto c = period_series_coeffs(r, 10);
        auto err = [&](cplx t, int N) {
            cplx sum = 0.0, tn = 1.0;
            for (int n = 0; n < N; ++n, tn *= t) sum += c[n] * tn;
            return std::abs(sum - period_function(r, t));
        };
        const cplx dir(0.5, -1.0);
        CHECK(err(0.02 * dir, 10) < 1e-12);
        const double ratio = err(0.02 * dir, 4) / err(0.01 * dir, 4);
        CHECK(ratio > 12.0);
        CHECK(ratio < 20.0);
    }

    TEST_CASE("rational cocycle") {
        CHECK(rational_cocycle_wt2(kT, cplx(0.3, -1.0)) == cplx(0.0));
        const cplx t(0.4, -0.8);
        CHECK(std::abs(rational_cocycle_wt2(kS, t) + 1.0 / t) < 1e-15);
        Sampler s;
        for (int k = 0; k < 20; ++k) {
            Word w;
            for (int j = 0; j < 1 + k % 6; ++j) w.push_back(static_cast<Gen>(s.gen() % 4));
            const GroupElement g = GroupElement::from_word(w);
            CHECK(rational_coboundary_residual(g, s.upper(), s.lower()) <= 1e-12);
        }
    }

    TEST_CASE("newform L-values") {
        const std::vector<double> zeros(400, 0.0);
        CHECK(newform_L1(zeros, 37) == 0.0);
        const auto a = load_coefficients_csv(EICHLER_FIXTURE);
        REQUIRE(a.size() >= 200);
        CHECK(a[0] == 1.0);
        CHECK(a[1] == -2.0);
        CHECK(std::abs(newform_L1(a, 37, 1)) < 1e-12);
        const auto g = goldfeld_lprime(a, 37, 1);
        // 2 sum a_n/n E_1(2 pi n/sqrt 37), 30 digits.
        CHECK(std::abs(g.lprime_oracle - 0.305999773834052302) < 1e-10);
        CHECK(std::abs(g.L1) < 1e-12);
        CHECK_THROWS(load_coefficients_csv("/nonexistent/coefficients.csv"));
    }
}
