#include "eichler/averages.hpp"
#include "helpers.hpp"

using namespace eichler;
using eichler::test::rel_err;

namespace {

const cplx kLam7 = std::exp(2.0 * kPi * kI / 7.0);

Fn g_r(cplx r, const Fn& h) {
    return [=](cplx t) { return power_branch(kI - t, r - 2.0, ArgInterval::cut_down()) * h(t); };
}

}  // namespace

TEST_SUITE("averages") {
    TEST_CASE("zero and closed forms") {
        const AverageSpec zero{2.0, AvSign::Plus, 1.5, [](cplx) { return cplx(0.0); }};
        CHECK(one_sided_average(zero, cplx(0.3, -0.2)).value == cplx(0.0));

        // Geometric: sum 2^{-n} = 2, -sum_{n>=1} (1/2)^n = -1.
        const Fn one = [](cplx) { return cplx(1.0); };
        CHECK(std::abs(one_sided_average({2.0, AvSign::Plus, 2.0, one}, 0.4).value - 2.0) < 1e-13);
        CHECK(std::abs(one_sided_average({0.5, AvSign::Minus, 2.0, one}, 0.4).value + 1.0) < 1e-13);

        // Telescoping 1/((t+i)(t+1+i)): both sides sum to 1/(t+i).
        const Fn tel = [](cplx t) { return 1.0 / ((t + kI) * (t + 1.0 + kI)); };
        for (cplx t : {cplx(0.3, 0.1), cplx(-2.0, 0.5), cplx(4.0, 0.0)}) {
            CHECK(std::abs(one_sided_average({1.0, AvSign::Plus, 0.0, tel}, t).value - 1.0 / (t + kI)) < 1e-9);
            CHECK(std::abs(one_sided_average({1.0, AvSign::Minus, 0.0, tel}, t).value - 1.0 / (t + kI)) < 1e-9);
        }
    }

    TEST_CASE("difference equation in every convergent cell") {
        const Fn h = [](cplx z) { return (z - kI) / (z - kI + 0.5); };
        struct Cell {
            cplx lambda;
            AvSign sign;
            cplx r;
        };
        for (const Cell& c : {Cell{2.0, AvSign::Plus, 2.7}, Cell{0.5, AvSign::Minus, cplx(2.7, 0.4)},
                              Cell{kLam7, AvSign::Plus, 0.4}, Cell{kLam7, AvSign::Minus, cplx(0.2, -0.3)},
                              Cell{1.0, AvSign::Plus, 0.4}, Cell{1.0, AvSign::Minus, 0.4}}) {
            const AverageSpec sp{c.lambda, c.sign, c.r, g_r(c.r, h)};
            for (cplx t : {cplx(0.3, -0.5), cplx(-1.2, -0.1), cplx(2.5, 0.0)})
                CHECK(average_difference_residual(sp, t) < 1e-8);
        }
        // Outside the convergent cells.
        const AverageSpec bad{0.5, AvSign::Plus, 2.7, g_r(2.7, h)};
        CHECK_THROWS_AS(one_sided_average(bad, 0.3), ConvergenceError);
        const AverageSpec slow{kLam7, AvSign::Plus, 1.5, g_r(1.5, h)};
        CHECK_THROWS_AS(one_sided_average(slow, 0.3), ConvergenceError);
    }

    TEST_CASE("expansion at infinity") {
        // (z-i)/(z-i+1/2) = sum (-1/2)^k (z-i)^{-k}.
        const auto hk = expansion_at_infinity([](cplx z) { return (z - kI) / (z - kI + 0.5); }, 8);
        // Contour extraction at radius 4 scales roundoff by 4^k.
        cplx expect = 1.0;
        double scale = 1.0;
        for (const cplx& c : hk) {
            CHECK(std::abs(c - expect) < 1e-14 * scale);
            expect *= -0.5;
            scale *= 4.0;
        }
    }

    TEST_CASE("continuation agrees with the direct average") {
        const Fn h = [](cplx z) { return (z - kI) / (z - kI + 0.5); };
        for (cplx r : {cplx(0.5), cplx(0.2, 0.3)}) {
            for (AvSign sg : {AvSign::Plus, AvSign::Minus}) {
                const AverageSpec sp{kLam7, sg, r, g_r(r, h)};
                for (cplx t : {cplx(0.3, -0.5), cplx(-1.2, 0.2)}) {
                    const cplx direct = one_sided_average(sp, t).value;
                    CHECK(rel_err(average_continued(h, r, kLam7, sg, t).value, direct) < 1e-8);
                }
            }
        }
        // More expansion terms do not change the value.
        const cplx t(0.7, -0.3);
        const cplx a4 = average_continued(h, 1.6, kLam7, AvSign::Plus, t, 4).value;
        const cplx a8 = average_continued(h, 1.6, kLam7, AvSign::Plus, t, 8).value;
        CHECK(rel_err(a4, a8) < 1e-9);
        CHECK_THROWS_AS(average_continued([](cplx) { return cplx(1.0); }, 2.0, kLam7, AvSign::Plus, t), PoleError);
        CHECK_THROWS_AS(average_continued(h, 1.6, 2.0, AvSign::Plus, t), DomainError);
    }

    TEST_CASE("asymptotic coefficient table") {
        const cplx a0(0.7, 0.2), a1(-0.3, 1.1), a2(0.5, -0.4), r(0.3, 0.1);
        const auto q = average_asymptotic_coeffs(a0, a1, a2, r, kLam7);
        CHECK(q.c_m1 == cplx(0.0));
        CHECK(std::abs(q.c0 - kLam7 * a0 / (kLam7 - 1.0)) < 1e-15);
        const auto p = average_asymptotic_coeffs(a0, a1, a2, r, 1.0);
        CHECK(std::abs(p.c_m1 - a0 / (1.0 - r)) < 1e-15);
        CHECK(std::abs(p.c0 - a1 / (2.0 - r)) < 1e-15);
        for (double k : {1.0, 2.0, 3.0}) CHECK_THROWS_AS(average_asymptotic_coeffs(a0, a1, a2, k, 1.0), PoleError);
        CHECK_THROWS_AS(average_asymptotic_coeffs(a0, a1, a2, r, 2.0), DomainError);
        CHECK_THROWS_AS(average_asymptotic_fit({1.0, AvSign::Plus, r, [](cplx) { return cplx(1.0); }}, {50, 100}),
                        DomainError);
    }

    TEST_CASE("parabolic solutions") {
        const cplx z0(0.2, 1.1);
        for (cplx r : {cplx(3.0), cplx(1.0), cplx(0.4, 0.3)}) {
            const auto p = ParabolicProblem::constant(r, z0);
            for (cplx t : {cplx(0.3, -0.6), cplx(-2.0, -0.2), cplx(5.0, 0.0)}) CHECK(parabolic_residual(p, t) <= 1e-10);
        }
        // r = 3: h(t) = -(z0-t)^2/2 exactly.
        const cplx t(0.3, -0.6);
        CHECK(std::abs(solve_parabolic(ParabolicProblem::constant(3.0, z0), t) + 0.5 * (z0 - t) * (z0 - t)) < 1e-14);

        // eta^{2r}: incomplete-gamma series against quadrature on the vertical ray.
        const cplx r = 2.5;
        const auto pe = ParabolicProblem::eta(r, z0);
        const auto pc = ParabolicProblem::cuspidal(FormEvaluator::eta_power(r), std::exp(kI * kPi * r / 6.0), z0);
        for (cplx tt : {cplx(0.3, -0.6), cplx(-1.4, -0.1)}) {
            CHECK(rel_err(solve_parabolic(pe, tt), solve_parabolic(pc, tt)) < 1e-6);
            CHECK(parabolic_residual(pe, tt) < 1e-9);
        }
        CHECK_THROWS_AS(solve_parabolic(ParabolicProblem::constant(2.0, cplx(0.2, -1.0)), t), DomainError);
        CHECK_THROWS_AS(solve_parabolic(ParabolicProblem::eta(-0.5, z0), t), UnsupportedError);
    }
}
