#include "verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "eichler/averages.hpp"
#include "eichler/cocycles.hpp"
#include "eichler/harmonic.hpp"
#include "eichler/quantum.hpp"
#include "eichler/specfun.hpp"

namespace eichler::verify {

bool Criterion::pass() const {
    if (!error.empty() || checks.empty()) return false;
    for (const Check& c : checks)
        if (!c.informational && !c.pass) return false;
    return true;
}

double Criterion::worst_ratio() const {
    double w = 0.0;
    for (const Check& c : checks) {
        if (c.informational) continue;
        const double q = c.tolerance > 0.0 ? c.value / c.tolerance : c.value;
        w = std::isnan(q) ? q : std::max(w, q);
        if (std::isnan(w)) return w;
    }
    return w;
}

namespace {

void add(Criterion& c, std::string name, double value, double tol, bool info = false) {
    c.checks.push_back({std::move(name), value, tol, value <= tol, info});
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

std::vector<cplx> lower_points(const Config& cfg) { return default_lower_points(cfg.quick ? 4 : 10); }

const GroupElement S = GroupElement::S();
const GroupElement T = GroupElement::T();

Criterion cocycle_relation(const Config& cfg) {
    Criterion c{1, "cocycle relation", {}, {}};
    const std::vector<std::pair<GroupElement, GroupElement>> pairs = {{S, T}, {T, S}, {S * T, T * S}};
    for (cplx r : {cplx(2.5), cplx(1.3, 0.4)}) {
        const auto rep = verify_cocycle_relation(FormEvaluator::eta_power(r), kI, pairs, lower_points(cfg));
        char nm[64];
        std::snprintf(nm, sizeof nm, "r=%g%+gi max residual", r.real(), r.imag());
        add(c, nm, rep.max_residual(), 1e-7);
    }
    return c;
}

Criterion period_relations(const Config& cfg) {
    Criterion c{2, "period relations", {}, {}};
    for (cplx r : {cplx(2.5), cplx(12.0), cplx(2.5, 0.5)}) {
        const auto rep = verify_period_relations(r, lower_points(cfg));
        char nm[64];
        std::snprintf(nm, sizeof nm, "r=%g%+gi max residual", r.real(), r.imag());
        add(c, nm, rep.max_residual(), 1e-7);
    }
    return c;
}

Criterion l_identity(const Config&) {
    Criterion c{3, "L-series identity", {}, {}};
    for (double s : {6.0, 8.0}) {
        const cplx I = I_integral(12.0, s).value;
        const cplx L = std::pow(2.0 * kPi, -s) * cgamma(s) * L_eta(12.0, s).value;
        add(c, "s=" + std::to_string(static_cast<int>(s)) + " |I - (2pi)^-s Gamma L|/|I|", rel(L, I), 1e-8);
    }
    const cplx a = I_integral(12.0, 3.7, IMethod::Direct).value;
    const cplx b = I_integral(12.0, 12.0 - 3.7, IMethod::Direct).value;
    add(c, "s=3.7 |I(s) - I(12-s)|/|I(s)|", rel(b, a), 1e-9);
    return c;
}

Criterion period_taylor(const Config&) {
    Criterion c{4, "period Taylor coefficients", {}, {}};
    const cplx r = 2.5;
    constexpr int kPts = 8, kDeg = 5;
    Eigen::MatrixXcd A(kPts, kDeg + 1);
    Eigen::VectorXcd b(kPts);
    for (int i = 0; i < kPts; ++i) {
        const cplx t = std::polar(i % 2 ? 0.05 : 0.03, -kPi * (i + 0.5) / kPts);
        cplx p = 1.0;
        for (int j = 0; j <= kDeg; ++j, p *= t) A(i, j) = p;
        b(i) = period_function(r, t);
    }
    const Eigen::VectorXcd x = A.colPivHouseholderQr().solve(b);
    const auto cn = period_series_coeffs(r, 2);
    add(c, "c0 rel", rel(x(0), cn[0]), 1e-5);
    add(c, "c1 rel", rel(x(1), cn[1]), 1e-5);
    return c;
}

// sum_{n<N} lambda^n (z+n)^{-s} with the first-order tail lambda^N (z+N)^{-s}/(1-lambda).
cplx lerch_direct(cplx s, double a, cplx z, long N) {
    const cplx lambda = std::exp(2.0 * kPi * kI * a);
    cplx sum = 0.0, ln = 1.0;
    for (long n = 0; n < N; ++n) {
        sum += ln * std::pow(z + static_cast<double>(n), -s);
        ln *= lambda;
    }
    return sum + ln * std::pow(z + static_cast<double>(N), -s) / (1.0 - lambda);
}

Criterion hurwitz_lerch_suite(const Config& cfg) {
    Criterion c{5, "Hurwitz-Lerch zeta", {}, {}};
    const cplx s = 2.5;
    const cplx cont = hurwitz_lerch(s, 0.3, 1.7);
    add(c, "continuation vs direct sum at (2.5,0.3,1.7)", std::abs(cont - lerch_direct(s, 0.3, 1.7, cfg.quick ? 20000 : 200000)),
        1e-9);

    auto kat_err = [&](double z) {
        return std::abs(hurwitz_lerch(s, 0.2, 0.5 + z) - lerch_asymptotic(s, 0.2, z, 3).value);
    };
    const double e40 = kat_err(40.0), e80 = kat_err(80.0);
    add(c, "K=3 error at z=40 / (10 z^-5.5)", e40 / (10.0 * std::pow(40.0, -5.5)), 1.0);
    const double expect = std::pow(2.0, 5.5), ratio = e40 / e80;
    add(c, "halving ratio e(40)/e(80) vs 2^5.5, factor", std::max(ratio / expect, expect / ratio), 4.0);

    const cplx lam = std::exp(2.0 * kPi * kI / 5.0);
    double tab = 0.0;
    tab = std::max(tab, std::abs(lerch_b(0, 1.0, s)));
    tab = std::max(tab, std::abs(lerch_b(1, 1.0, s) + s / 24.0));
    tab = std::max(tab, std::abs(lerch_b(2, 1.0, s)));
    tab = std::max(tab, rel(lerch_b(0, lam, s), 1.0 / (1.0 - lam)));
    tab = std::max(tab, rel(lerch_b(1, lam, s), -(s / 2.0) * (1.0 + lam) / ((1.0 - lam) * (1.0 - lam))));
    tab = std::max(tab, rel(lerch_b(2, lam, s),
                            s * (s + 1.0) * (1.0 + 6.0 * lam + lam * lam) / (8.0 * std::pow(1.0 - lam, 3))));
    add(c, "b_0..b_2 vs closed forms", tab, 1e-13);

    double refl = 0.0;
    for (int k = 0; k <= 5; ++k) {
        const cplx lhs = lerch_b(k, 1.0 / lam, s) / lam;
        const cplx rhs = (k % 2 ? 1.0 : -1.0) * lerch_b(k, lam, s);
        refl = std::max(refl, std::abs(lhs - rhs) / std::abs(rhs));
    }
    add(c, "reflection relation b_0..b_5", refl, 1e-13);
    return c;
}

Criterion averages_suite(const Config& cfg) {
    Criterion c{6, "one-sided averages", {}, {}};
    const auto h = [](cplx z) { return (z - kI) / (z - kI + 0.5); };
    const auto g_of = [&](cplx r) {
        return Fn([=](cplx t) { return power_branch(kI - t, r - 2.0, ArgInterval::cut_down()) * h(t); });
    };
    const cplx lam7 = std::exp(2.0 * kPi * kI / 7.0);
    std::vector<cplx> ts = {cplx(0.3, -0.5), cplx(-1.2, -0.1), cplx(2.5, 0.0)};
    if (cfg.quick) ts.resize(2);

    struct Cell {
        cplx lambda;
        AvSign sign;
        cplx r;
        const char* name;
    };
    for (const Cell& cell : {Cell{2.0, AvSign::Plus, 1.6, "|l|>1 plus"}, Cell{0.5, AvSign::Minus, 1.6, "|l|<1 minus"},
                             Cell{lam7, AvSign::Plus, 0.3, "|l|=1 plus"}, Cell{lam7, AvSign::Minus, 0.3, "|l|=1 minus"},
                             Cell{1.0, AvSign::Plus, 0.3, "l=1 plus"}, Cell{1.0, AvSign::Minus, 0.3, "l=1 minus"}}) {
        const AverageSpec sp{cell.lambda, cell.sign, cell.r, g_of(cell.r)};
        double m = 0.0;
        for (cplx t : ts) m = std::max(m, average_difference_residual(sp, t));
        add(c, std::string("difference equation ") + cell.name, m, 1e-8);
    }

    const cplx r = 1.6;
    for (cplx lam : {lam7, cplx(1.0)}) {
        for (AvSign sg : {AvSign::Plus, AvSign::Minus}) {
            double m = 0.0;
            for (cplx t : ts) {
                const auto av = [&](cplx u) { return average_continued(h, r, lam, sg, u).value; };
                m = std::max(m, std::abs(av(t) - av(t + 1.0) / lam - g_of(r)(t)));
            }
            char nm[80];
            std::snprintf(nm, sizeof nm, "continued r=1.6 arg(l)=%.3f %s", std::arg(lam),
                          sg == AvSign::Plus ? "plus" : "minus");
            add(c, nm, m, 1e-7);
        }
    }

    const cplx ra = 0.3;
    const cplx a0 = std::exp(kI * kPi * (ra - 2.0) / 2.0), a1 = -kI * (ra - 2.0) * a0,
               a2 = -(ra - 2.0) * (ra - 3.0) / 2.0 * a0;
    for (cplx lam : {cplx(1.0), lam7}) {
        const bool one = lam == cplx(1.0);
        const auto th = average_asymptotic_coeffs(a0, a1, a2, ra, lam);
        const std::vector<double> base = one ? std::vector<double>{50, 100, 200}
                                             : std::vector<double>{50, 100, 200, 400, 800};
        cplx c0_side[2];
        for (int side = 0; side < 2; ++side) {
            const AvSign sg = side == 0 ? AvSign::Plus : AvSign::Minus;
            std::vector<double> pts = base;
            if (side == 1)
                for (double& p : pts) p = -p;
            const AverageSpec sp{lam, sg, ra,
                                 [=](cplx t) { return power_branch(kI - t, ra - 2.0, ArgInterval::cut_down()); }};
            const auto fit = average_asymptotic_fit(sp, pts);
            c0_side[side] = fit.c0;
            const std::string tag = std::string(one ? "l=1 " : "l=e(1/7) ") + (side == 0 ? "plus" : "minus");
            if (one)
                add(c, "asymptotic c_-1 rel " + tag, rel(fit.c_m1, th.c_m1), 1e-3);
            else
                add(c, "asymptotic c_-1 abs " + tag, std::abs(fit.c_m1), 1e-3);
            add(c, "asymptotic c_0 rel " + tag, rel(fit.c0, th.c0), 1e-3);
        }
        add(c, std::string("c_0 sign agreement ") + (one ? "l=1" : "l=e(1/7)"), rel(c0_side[1], c0_side[0]), 1e-3);
    }
    return c;
}

Criterion shadow_suite(const Config&) {
    Criterion c{7, "shadow and Laplacian", {}, {}};
    const std::vector<cplx> pts = {cplx(0.3, 0.5), cplx(-0.7, 1.8), cplx(1.4, 0.9)};
    const FDStencil st{1e-3, 4};
    const cplx r(0.6, 0.2);

    for (int mu : {-2, 0, 1}) {
        double m = 0.0;
        const Fn F = [&](cplx w) { return polar_eval({r, mu}, PolarKind::M, w); };
        for (cplx z : pts) m = std::max(m, rel(shadow(F, r, z, st), polar_shadow({r, mu}, PolarKind::M, z)));
        add(c, "shadow M mu=" + std::to_string(mu) + " rel", m, 1e-5);
    }

    {
        const cplx r2 = 2.0 / 3.0;
        const int mu = -3;
        double m = 0.0;
        for (cplx z : pts) {
            const cplx H = polar_eval({r2, mu}, PolarKind::H, z), M = polar_eval({r2, mu}, PolarKind::M, z),
                       P = polar_eval({r2, mu}, PolarKind::P, z);
            m = std::max(m, std::abs(H - static_cast<double>(mu) / (1.0 - r2) * M - 6.0 / pochhammer(1.0 - r2, 3) * P));
        }
        add(c, "Kummer relation mu=-3 r=2/3", m, 1e-10);
    }

    std::vector<cplx> e2pts = pts;
    e2pts.push_back(cplx(0.1, 1.2));
    e2pts.push_back(cplx(-0.4, 0.7));
    {
        double m = 0.0;
        for (cplx z : e2pts) m = std::max(m, std::abs(shadow(E2_star, 2.0, z, st) - 3.0 / kPi) / (3.0 / kPi));
        add(c, "shadow E2* = 3/pi rel", m, 1e-5);
    }

    const cplx tau(0.2, 1.3), z1(0.3, 1.1);
    struct Named {
        const char* name;
        cplx weight;
        Fn f;
    };
    const std::vector<Named> fns = {
        {"P mu=2", r, [&](cplx w) { return polar_eval({r, 2}, PolarKind::P, w); }},
        {"M mu=0", r, [&](cplx w) { return polar_eval({r, 0}, PolarKind::M, w); }},
        {"H mu=-1", r, [&](cplx w) { return polar_eval({r, -1}, PolarKind::H, w); }},
        {"K_r", r, [&](cplx w) { return kernel_K(r, w, tau); }},
        {"Q_r", 0.7, [&](cplx w) { return resolvent_Q(0.7, z1, w); }},
        {"F_{r,n} r=0.4 n=1", 0.4, [](cplx w) { return F_rn(0.4, 1.0, w); }},
        {"E2*", 2.0, E2_star},
        {"y^{1-r}", r, [&](cplx w) { return std::pow(w.imag(), 1.0 - r); }},
    };
    for (const Named& n : fns) {
        double m = 0.0;
        for (cplx z : pts) m = std::max(m, std::abs(laplacian_r(n.f, n.weight, z, st)) / std::max(1.0, std::abs(n.f(z))));
        add(c, std::string("Laplacian ") + n.name, m, 1e-4);
    }
    return c;
}

Criterion kernel_suite(const Config&) {
    Criterion c{8, "kernel identities", {}, {}};
    const cplx r(0.6, 0.2), tau(0.2, 1.3);
    const std::vector<cplx> pts = {cplx(0.3, 0.5), cplx(-0.7, 1.8), cplx(1.4, 0.9)};
    double m = 0.0;
    for (const GroupElement& g : {S, T, GroupElement(IntMatrix{2, 1, 1, 1})}) {
        for (cplx z : pts) {
            const cplx lhs = std::pow(g.denom(z), -r) * std::pow(g.denom(tau), r - 2.0) * kernel_K(r, g.act(z), g.act(tau));
            m = std::max(m, std::abs(lhs - kernel_K(r, z, tau)));
        }
    }
    add(c, "K_r equivariance", m, 1e-9);

    m = 0.0;
    const Fn K = [&](cplx w) { return kernel_K(r, w, tau); };
    for (double t : {-1.3, 0.4, 2.2}) {
        const cplx q = boundary_quotient(K, r, t) * power_branch(kI - t, r - 2.0, ArgInterval::cut_down());
        m = std::max(m, rel(q, kernel_K_restriction(r, tau, t)));
    }
    add(c, "K_r restriction rel", m, 1e-4);

    {
        const cplx rr(0.5, 0.1);
        const auto from_w = [](double a, double th) {
            const cplx w = std::polar(a, th);
            return kI * (1.0 + w) / (1.0 - w);
        };
        const cplx z = from_w(0.8, 0.7), tw = from_w(0.3, -1.1);
        add(c, "polar expansion M=40", std::abs(polar_expansion_partial(rr, z, tw, 40).value - kernel_K(rr, z, tw)), 1e-8);
    }

    m = 0.0;
    for (cplx z : pts) {
        cplx s = std::pow(2.0 * kI / (z - kI), 2.0);
        for (int mu = -2; mu <= -1; ++mu)
            s -= pochhammer(-1.0, -mu - 1) / cgamma(static_cast<double>(-mu)) * polar_eval({3.0, mu}, PolarKind::M, z);
        m = std::max(m, std::abs(s - std::pow(z.imag(), -2.0)));
    }
    add(c, "y^{1-r} identity r=3", m, 1e-10);
    return c;
}

Criterion cauchy_suite(const Config&) {
    Criterion c{9, "Cauchy-type formula", {}, {}};
    const Fn F = [](cplx z) { return z * z + 1.0; };
    const CircleContour C{cplx(0.0, 1.5), 1.0};
    for (cplx zp : {cplx(0.2, 1.3), cplx(0.1, 1.4)}) {
        const auto res = cauchy_formula(F, 0.7, zp, C);
        add(c, "inside rel", std::abs(res.integral - res.expected) / std::abs(res.expected), 1e-6);
    }
    for (cplx zp : {cplx(2.0, 1.5), cplx(0.1, 5.0)}) {
        const auto res = cauchy_formula(F, 0.7, zp, C);
        add(c, "outside abs", std::abs(res.integral - res.expected), 1e-6);
    }
    return c;
}

Criterion qf_suite(const Config& cfg) {
    Criterion c{10, "Q_F identities", {}, {}};
    const cplx r = 2.5;
    const auto F = FormEvaluator::eta_power(r);
    const Fn Q = [&](cplx t) { return Q_F(F, kI, t).value; };
    double m = 0.0;
    for (cplx t : lower_points(cfg)) {
        const cplx lhs = act_dual(Q, F.multiplier(), S, t) - Q(t);
        m = std::max(m, std::abs(lhs - eichler_cocycle(F, S, kI, t).value));
    }
    add(c, "Q_F|(S-1) - psi_S", m, 1e-6);

    for (cplx rr : {cplx(2.5), cplx(1.3, 0.4)}) {
        const auto Fr = FormEvaluator::eta_power(rr);
        const Fn G = [&](cplx w) { return std::conj(Q_F(Fr, kI, std::conj(w)).value); };
        double mr = 0.0;
        for (cplx z : {cplx(0.2, 1.1), cplx(-0.4, 0.8), cplx(0.6, 1.7)}) {
            const cplx expect = std::pow(2.0, rr - 1.0) * std::exp(kI * kPi * (rr - 1.0) / 2.0) * Fr(z);
            mr = std::max(mr, rel(shadow(G, 2.0 - std::conj(rr), z, FDStencil{1e-3, 4}), expect));
        }
        char nm[64];
        std::snprintf(nm, sizeof nm, "shadow of Q_F r=%g%+gi rel", rr.real(), rr.imag());
        add(c, nm, mr, 1e-4);
    }
    return c;
}

Criterion bol_suite(const Config&) {
    Criterion c{11, "Bol's equality", {}, {}};
    const FourierData F{0.0, {0.0, 1.0}};
    const auto b = bol_operator(F, 4, S, cplx(0.3, 0.8));
    add(c, "F=e(z) r=4 g=S rel", rel(b.lhs, b.rhs), 1e-5);
    return c;
}

Criterion quantum_suite(const Config&) {
    Criterion c{12, "quantum values", {}, {}};
    double w = weight0_quantum(Rational::make(1, 1), S, cplx(0.0, -1.0));
    w = std::max(w, weight0_quantum(Rational::make(2, 7), GroupElement(IntMatrix{5, 3, 3, 2}), cplx(0.4, -0.7)));
    w = std::max(w, weight0_quantum(Rational::make(-3, 4), GroupElement(IntMatrix{1, -2, -1, 3}), cplx(-1.1, -0.2)));
    add(c, "weight 0 identity", w, 1e-12);
    add(c, "defect (r,a,delta)=(3,1,S)", quantum_defect(3.0, Rational::make(1, 1), S, kI).residual, 1e-5);
    const auto L = quantum_ladder(3.0, Rational::make(1, 1), kI);
    double lr = 0.0;
    for (size_t k = 0; k < L.eps.size(); ++k) lr = std::max(lr, std::abs(L.values[k] - L.limit) / (10.0 * L.eps[k]));
    add(c, "ladder r=3 a=1, |h(a-ie)-p(a)|/(10e)", lr, 1.0);
    return c;
}

Criterion goldfeld_suite(const Config& cfg) {
    Criterion c{13, "Goldfeld L'(1)", {}, {}};
    if (cfg.fixture.empty()) {
        c.error = "no coefficient fixture given";
        return c;
    }
    const auto a = load_coefficients_csv(cfg.fixture);
    const auto g = goldfeld_lprime(a, 37, 1);
    add(c, "(1/pi) int f u vs series L'(1)", std::abs(g.lprime_scaled - g.lprime_oracle), 1e-4);
    const cplx lit = -kPi * kI * g.lprime_oracle;
    add(c, "slope vs -pi i L'(1), rel", rel(g.psi_slope, lit), 1e-2);
    add(c, "-4 pi int f u vs series L'(1)", std::abs(g.lprime - g.lprime_oracle), 1e-4, true);
    add(c, "slope vs i L'(1)/(4 pi), rel", rel(g.psi_slope, kI * g.lprime_oracle / (4.0 * kPi)), 1e-2, true);
    return c;
}

}  // namespace

Criterion run_criterion(int id, const Config& cfg) {
    using Fnc = Criterion (*)(const Config&);
    static constexpr Fnc table[kCriteria] = {cocycle_relation, period_relations, l_identity,   period_taylor,
                                             hurwitz_lerch_suite, averages_suite, shadow_suite, kernel_suite,
                                             cauchy_suite,     qf_suite,         bol_suite,    quantum_suite,
                                             goldfeld_suite};
    if (id < 1 || id > kCriteria) throw DomainError("unknown criterion " + std::to_string(id));
    try {
        return table[id - 1](cfg);
    } catch (const Error& e) {
        static constexpr const char* titles[kCriteria] = {
            "cocycle relation",    "period relations",   "L-series identity", "period Taylor coefficients",
            "Hurwitz-Lerch zeta",  "one-sided averages", "shadow and Laplacian", "kernel identities",
            "Cauchy-type formula", "Q_F identities",     "Bol's equality",    "quantum values",
            "Goldfeld L'(1)"};
        return Criterion{id, titles[id - 1], {}, e.kind() + ": " + e.what()};
    }
}

std::vector<Criterion> run_all(const Config& cfg, int threads) {
    std::vector<Criterion> out(kCriteria);
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < kCriteria; i = next++) out[i] = run_criterion(i + 1, cfg);
    };
    threads = std::clamp(threads, 1, kCriteria);
    std::vector<std::thread> pool;
    for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return out;
}

std::string summary_line(const Criterion& c) {
    char buf[256];
    if (!c.error.empty())
        std::snprintf(buf, sizeof buf, "FAIL  %2d  %s  (%s)", c.id, c.title.c_str(), c.error.c_str());
    else
        std::snprintf(buf, sizeof buf, "%s  %2d  %s  (worst residual/tolerance %.3g)", c.pass() ? "PASS" : "FAIL", c.id,
                      c.title.c_str(), c.worst_ratio());
    return buf;
}

}  // namespace eichler::verify
