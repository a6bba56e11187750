#include "eichler/quantum.hpp"
#include "eichler/specfun.hpp"
#include "helpers.hpp"

using namespace eichler;
using eichler::test::rel_err;
using eichler::test::Sampler;

TEST_SUITE("quantum") {
    TEST_CASE("rationals and scaling matrices") {
        const Rational a = Rational::make(6, -4);
        CHECK(a.p == -3);
        CHECK(a.q == 2);
        CHECK_THROWS(Rational::make(1, 0));
        for (auto [p, q] : {std::pair{1L, 1L}, {0L, 1L}, {-3L, 2L}, {5L, 7L}, {-13L, 8L}}) {
            const Rational x = Rational::make(p, q);
            const GroupElement s = scaling_matrix(x);
            const IntMatrix& m = s.int_matrix();
            CHECK(m.a * m.d - m.b * m.c == 1);
            CHECK(m.a == x.p);
            CHECK(m.c == x.q);
        }
        const Rational b = act_rational(GroupElement::S(), Rational::make(2, 3));
        CHECK(b.p == -3);
        CHECK(b.q == 2);
        const Rational c = act_rational(GroupElement(IntMatrix{2, 1, 1, 1}), Rational::make(1, 2));
        CHECK(c.p == 4);
        CHECK(c.q == 3);
        CHECK_THROWS_AS(act_rational(GroupElement::S(), Rational::make(0, 1)), DomainError);
    }

    TEST_CASE("weight-zero quantum function") {
        const Rational a = Rational::make(2, 5);
        CHECK(weight0_quantum(a, GroupElement(IntMatrix{}), cplx(0.3, -0.4)) == 0.0);
        CHECK(weight0_quantum(a, GroupElement::S(), cplx(0.3, -0.4)) <= 1e-14);
        Sampler s;
        for (int k = 0; k < 30; ++k) {
            Word w;
            for (int j = 0; j < 1 + k % 5; ++j) w.push_back(static_cast<Gen>(s.gen() % 4));
            const GroupElement g = GroupElement::from_word(w);
            const Rational x = Rational::make(static_cast<long>(s.gen() % 21) - 10, 1 + static_cast<long>(s.gen() % 9));
            const IntMatrix& m = g.int_matrix();
            if (m.c * x.p + m.d * x.q == 0) continue;  // g x = infinity
            CHECK(weight0_quantum(x, g, s.lower()) <= 1e-12);
        }
    }

    TEST_CASE("quantum value at 0 from the folded integral") {
        // p(0) = int_i^0 eta^{2r}(z) z^{r-2} dz = -e^{pi i (r-1)/2} int_1^inf eta^{2r}(iy) dy.
        for (cplx r : {cplx(3.0), cplx(1.5, -0.4)}) {
            const auto ray = integrate_to_infinity([&](double y) { return eta_power_eval(r, cplx(0.0, y)); }, 1.0);
            const cplx expect = -std::exp(kI * kPi * (r - 1.0) / 2.0) * ray.value;
            const auto q = quantum_value_eta(r, Rational::make(0, 1), kI);
            CHECK(rel_err(q.value, expect) < 1e-10);
        }
    }

    TEST_CASE("cusp integral does not depend on the path") {
        const cplx r(0.7, 0.3);
        const Rational a = Rational::make(1, 2);
        const cplx z0 = kI, t(0.4, -0.3);
        const cplx direct = eta_cusp_integral(r, a, z0, t).value;
        CHECK(rel_err(eta_cusp_integral(r, a, z0, t, cplx(-0.6, 0.9)).value, direct) < 1e-10);
        CHECK(rel_err(eta_cusp_integral(r, a, z0, t, cplx(1.3, 2.1)).value, direct) < 1e-10);
        CHECK_THROWS_AS(eta_cusp_integral(r, a, z0, cplx(0.4, 0.3)), DomainError);
        CHECK_THROWS_AS(eta_cusp_integral(r, a, cplx(0.2, -1.0), t), DomainError);
    }

    TEST_CASE("defect of the quantum function") {
        const Rational one = Rational::make(1, 1);
        const auto d = quantum_defect(3.0, one, GroupElement::S(), kI);
        CHECK(d.residual <= 1e-5);

        const cplx z1(0.3, 1.2);
        const GroupElement S = GroupElement::S(), T = GroupElement::T();
        for (cplx r : {cplx(3.0), cplx(0.7, 0.3)}) {
            for (const GroupElement& g : {S, T, S * T}) {
                const auto q = quantum_defect(r, one, g, z1);
                CHECK(q.residual <= 1e-5);
                CHECK(std::abs(q.rhs) > 1e-3);
            }
        }
        // p depends on z0 only through a coboundary: the defect is base-point free.
        const cplx r(1.5, -0.4);
        const Rational h = Rational::make(1, 2);
        const auto a0 = quantum_defect(r, h, S, kI);
        const auto a1 = quantum_defect(r, h, S, z1);
        CHECK(a0.residual <= 2e-5);
        CHECK(a1.residual <= 2e-5);
    }

    TEST_CASE("limit ladder") {
        const auto L = quantum_ladder(3.0, Rational::make(1, 1), kI);
        CHECK(L.pass);
        REQUIRE(L.values.size() == 3);
        for (std::size_t k = 0; k < 3; ++k) CHECK(std::abs(L.values[k] - L.limit) <= 10.0 * L.eps[k]);
        // Successive gaps shrink with eps.
        CHECK(std::abs(L.values[2] - L.limit) < std::abs(L.values[0] - L.limit));
    }

    TEST_CASE("refusals") {
        CHECK_THROWS_AS(quantum_value_eta(-0.5, Rational::make(1, 1), kI), DomainError);
        CHECK_THROWS_AS(quantum_value_eta(cplx(0.0, 1.0), Rational::make(1, 1), kI), DomainError);
        // S sends 0 to infinity.
        CHECK_THROWS_AS(quantum_defect(3.0, Rational::make(0, 1), GroupElement::S(), kI), DomainError);
    }
}
