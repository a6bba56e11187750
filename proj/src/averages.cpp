#include "eichler/averages.hpp"

#include <cmath>
#include <functional>

#include "eichler/specfun.hpp"

namespace eichler {

namespace {

using Seq = std::function<cplx(long)>;

// sum_{n>=0} mu^n f(n), |mu| < 1.
AverageValue geometric_sum(const Seq& f, cplx mu, double tol) {
    const double rho = std::abs(mu);
    cplx s = 0.0, w = 1.0;
    for (long n = 0; n < 10000000; ++n) {
        const cplx term = w * f(n);
        s += term;
        w *= mu;
        const double bound = std::abs(term) * rho / (1.0 - rho);
        if (n >= 50 && bound < tol * std::max(std::abs(s), 1e-300)) return {s, bound, n + 1};
    }
    throw ConvergenceError("one-sided average: geometric series did not converge");
}

// Solves S(N_k) = S - sum_{j<m-1} C_j x_k^{e+1-j} for S by Gaussian
// elimination; x_k = x0 + N_k - 1/2.
cplx extrapolate(const std::vector<cplx>& partial, const std::vector<cplx>& x, cplx e, int m) {
    std::vector<std::vector<cplx>> A(m, std::vector<cplx>(m + 1));
    const int off = static_cast<int>(partial.size()) - m;
    const cplx xr = x[off];  // entries stay <= 1 for decaying exponents
    for (int i = 0; i < m; ++i) {
        A[i][0] = 1.0;
        for (int j = 1; j < m; ++j) A[i][j] = std::pow(x[off + i] / xr, e + 2.0 - static_cast<double>(j));
        A[i][m] = partial[off + i];
    }
    for (int c = 0; c < m; ++c) {
        int piv = c;
        for (int i = c + 1; i < m; ++i)
            if (std::abs(A[i][c]) > std::abs(A[piv][c])) piv = i;
        std::swap(A[c], A[piv]);
        for (int i = 0; i < m; ++i) {
            if (i == c) continue;
            const cplx f = A[i][c] / A[c][c];
            for (int j = c; j <= m; ++j) A[i][j] -= f * A[c][j];
        }
    }
    return A[0][m] / A[0][0];
}

// sum_{n>=0} f(n) with f(n) ~ sum_j C_j (x0+n)^{e-j}: partial sums at
// N_k = X0 2^k, X0 >= 2|x0|, extrapolated against the tail exponents e+1-j.
AverageValue richardson_sum(const Seq& f, cplx x0, cplx e) {
    if (!(e.real() < -1.0)) throw ConvergenceError("one-sided average: terms do not decay fast enough");
    constexpr int J = 9;
    const long X0 = std::max<long>(32, static_cast<long>(std::ceil(2.0 * std::abs(x0))));
    std::vector<cplx> partial, x;
    cplx s = 0.0;
    long n = 0;
    for (int k = 0; k < J; ++k) {
        const long Nk = X0 << k;
        for (; n < Nk; ++n) s += f(n);
        partial.push_back(s);
        x.push_back(x0 + static_cast<double>(Nk) - 0.5);
    }
    const cplx best = extrapolate(partial, x, e, J);
    const cplx prev = extrapolate(partial, x, e, J - 1);
    return {best, std::abs(best - prev), n};
}

// sum_{n>=0} mu^n f(n), |mu| = 1, mu != 1: direct part up to N0, then the
// Euler transform sum_k mu^k Delta^k f(N0) / (1-mu)^{k+1}.
AverageValue euler_sum(const Seq& f, cplx mu, double tol) {
    const double gap = std::abs(1.0 - mu);
    const long N0 = std::max<long>(64, static_cast<long>(std::ceil(200.0 / gap)));
    if (N0 > 20000000) throw ConvergenceError("one-sided average: lambda too close to 1");
    cplx s = 0.0, w = 1.0;
    for (long n = 0; n < N0; ++n) {
        s += w * f(n);
        w *= mu;
    }
    constexpr int K = 16;
    std::array<cplx, K + 1> d{};
    for (int j = 0; j <= K; ++j) d[j] = f(N0 + j);
    cplx tail = 0.0, fac = 1.0 / (1.0 - mu);
    double last = std::abs(d[0] * fac), prev = 2 * last;
    for (int k = 0; k <= K; ++k) {
        const cplx term = fac * d[0];
        if (std::abs(term) > prev) break;  // rounding has taken over
        tail += term;
        prev = last = std::abs(term);
        if (last < 1e-3 * tol * std::max(std::abs(s), 1e-300)) break;
        for (int j = 0; j + 1 <= K - k; ++j) d[j] = d[j + 1] - d[j];
        fac *= mu / (1.0 - mu);
    }
    return {s + w * tail, last, N0 + K + 1};
}

bool unimodular(cplx lambda) { return std::abs(std::abs(lambda) - 1.0) < 1e-14; }

// sum_{n>=0} mu^n f(n) by the method matching |mu|; f(n) behaves like
// (x0+n)^e for large n.
AverageValue twisted_sum(const Seq& f, cplx mu, cplx x0, cplx e, double tol) {
    if (unimodular(mu)) {
        if (std::abs(mu - 1.0) < 1e-14) return richardson_sum(f, x0, e);
        if (!(e.real() < -1.0)) throw ConvergenceError("one-sided average: terms do not decay fast enough");
        return euler_sum(f, mu, tol);
    }
    if (std::abs(mu) > 1.0) throw ConvergenceError("one-sided average: outside the convergence region");
    return geometric_sum(f, mu, tol);
}

AverageValue average_with_exponent(const Fn& g, cplx lambda, AvSign sign, cplx t, cplx e, double tol) {
    if (lambda == cplx(0.0, 0.0)) throw DomainError("one-sided average: lambda must be nonzero");
    if (sign == AvSign::Plus)
        return twisted_sum([&](long n) { return g(t + static_cast<double>(n)); }, 1.0 / lambda, t, e, tol);
    AverageValue v =
        twisted_sum([&](long n) { return g(t - 1.0 - static_cast<double>(n)); }, lambda, 1.0 - t, e, tol);
    v.value *= -lambda;
    v.error *= std::abs(lambda);
    return v;
}

}  // namespace

AverageValue one_sided_average(const AverageSpec& spec, cplx t, double tol) {
    return average_with_exponent(spec.g, spec.lambda, spec.sign, t, spec.r - 2.0, tol);
}

double average_difference_residual(const AverageSpec& spec, cplx t) {
    const cplx a0 = one_sided_average(spec, t).value;
    const cplx a1 = one_sided_average(spec, t + 1.0).value;
    return std::abs(a0 - a1 / spec.lambda - spec.g(t));
}

std::vector<cplx> expansion_at_infinity(const Fn& h, int n, double radius) {
    // Trapezoid rule on |z - i| = radius; spectrally accurate for analytic h.
    constexpr int M = 256;
    std::vector<cplx> c(n, 0.0);
    std::vector<cplx> vals(M);
    for (int j = 0; j < M; ++j) vals[j] = h(kI + std::polar(radius, 2.0 * kPi * j / M));
    for (int k = 0; k < n; ++k) {
        cplx s = 0.0;
        for (int j = 0; j < M; ++j) s += vals[j] * std::polar(1.0, 2.0 * kPi * k * j / M);
        c[k] = s / static_cast<double>(M) * std::pow(radius, k);
    }
    return c;
}

AverageValue average_continued(const Fn& h, cplx r, cplx lambda, AvSign sign, cplx t, int N, double radius) {
    if (!unimodular(lambda)) throw DomainError("average_continued: needs |lambda| = 1");
    if (N < 1) throw DomainError("average_continued: needs N >= 1");
    const std::vector<cplx> hk = expansion_at_infinity(h, N, radius);
    const bool r_int = r.imag() == 0.0 && std::nearbyint(r.real()) == r.real();
    if (r_int) {
        const double scale = std::max(1.0, std::abs(h(kI + radius)));
        const bool h_inf_zero = std::abs(hk[0]) <= 1e-13 * scale;
        if (r.real() >= 2.0 || (r.real() >= 1.0 && !h_inf_zero))
            throw PoleError("average_continued: r is at an excluded integer");
    }
    const double alpha = std::arg(lambda) / (2.0 * kPi);
    std::vector<cplx> a(N);
    for (int k = 0; k < N; ++k) a[k] = std::exp(kI * kPi * r) * hk[k];

    auto g = [&](cplx z) { return power_branch(kI - z, r - 2.0, ArgInterval::cut_down()) * h(z); };
    auto remainder = [&](cplx z) {
        cplx s = g(z);
        for (int k = 0; k < N; ++k)
            s -= a[k] * power_branch(z - kI, r - 2.0 - static_cast<double>(k), ArgInterval::cut_up());
        return s;
    };
    AverageValue rem = average_with_exponent(remainder, lambda, sign, t, r - 2.0 - static_cast<double>(N), 1e-13);
    cplx main = 0.0;
    for (int k = 0; k < N; ++k) {
        const cplx s = static_cast<double>(k) + 2.0 - r;
        if (sign == AvSign::Plus)
            main += a[k] * hurwitz_lerch(s, -alpha, t - kI);
        else
            main -= a[k] * lambda * std::exp(kI * kPi * (static_cast<double>(k) - r)) *
                    hurwitz_lerch(s, alpha, 1.0 + kI - t);
    }
    return {main + rem.value, rem.error, rem.terms};
}

AverageAsymptotics average_asymptotic_coeffs(cplx a0, cplx a1, cplx a2, cplx r, cplx lambda) {
    if (!unimodular(lambda)) throw DomainError("average_asymptotic_coeffs: needs |lambda| = 1");
    if (std::abs(lambda - 1.0) < 1e-14) {
        for (double k : {1.0, 2.0, 3.0})
            if (r == cplx(k, 0.0)) throw PoleError("average_asymptotic_coeffs: r in {1,2,3} with lambda = 1");
        return {a0 / (1.0 - r), a1 / (2.0 - r), a2 / (3.0 - r) + (r - 2.0) * a0 / 24.0};
    }
    const cplx l1 = lambda - 1.0;
    return {0.0, lambda * a0 / l1,
            lambda * a1 / l1 + (r - 2.0) * lambda * (lambda + 1.0) * a0 / (2.0 * l1 * l1)};
}

AverageAsymptotics average_asymptotic_fit(const AverageSpec& spec, const std::vector<double>& ts) {
    const int m = static_cast<int>(ts.size());
    if (m < 3) throw DomainError("average_asymptotic_fit: needs at least three points");
    // Solve sum_j c_{j-1} t^{1-j} = Av(1/2 + t) / (it)^{r-2}; columns scaled by t_max^{1-j}.
    const double tm = std::abs(ts.back());
    std::vector<std::vector<cplx>> A(m, std::vector<cplx>(m + 1));
    for (int i = 0; i < m; ++i) {
        const double t = ts[i];
        for (int j = 0; j < m; ++j) A[i][j] = std::pow(t / tm, 1 - j);
        A[i][m] = one_sided_average(spec, 0.5 + t).value / cpow(kI * t, spec.r - 2.0);
    }
    for (int c = 0; c < m; ++c) {
        int piv = c;
        for (int i = c + 1; i < m; ++i)
            if (std::abs(A[i][c]) > std::abs(A[piv][c])) piv = i;
        std::swap(A[c], A[piv]);
        for (int i = 0; i < m; ++i) {
            if (i == c) continue;
            const cplx f = A[i][c] / A[c][c];
            for (int j = c; j <= m; ++j) A[i][j] -= f * A[c][j];
        }
    }
    auto coef = [&](int j) { return A[j][m] / A[j][j] * std::pow(tm, j - 1); };
    return {coef(0), coef(1), coef(2)};
}

// ---------------------------------------------------------------------------

ParabolicProblem ParabolicProblem::constant(cplx r, cplx z0) {
    return {ParabolicKind::Constant, r, z0, FormEvaluator::constant_one(), 1.0};
}

ParabolicProblem ParabolicProblem::cuspidal(FormEvaluator E, cplx lambda, cplx z0) {
    const cplx r = E.weight();
    return {ParabolicKind::Cuspidal, r, z0, std::move(E), lambda};
}

ParabolicProblem ParabolicProblem::eta(cplx r, cplx z0) {
    return {ParabolicKind::Eta, r, z0, FormEvaluator::eta_power(r), std::exp(kI * kPi * r / 6.0)};
}

namespace {

void check_cut(const ParabolicProblem& p, cplx t) {
    if (!(p.z0.imag() > 0)) throw DomainError("parabolic: z0 must lie in the upper half-plane");
    if (t.real() >= p.z0.real() - 1.0 && t.real() <= p.z0.real() && t.imag() >= p.z0.imag())
        throw BranchError("parabolic: t lies in the cut region above [z0-1, z0]");
}

cplx eta_series(cplx r, cplx z0, cplx t, int K) {
    if (!(r.real() > 0)) throw UnsupportedError("parabolic eta solution: Re r <= 0 needs a branch choice");
    if (K <= 0) {
        // e^{2 pi i lam t} Gamma(r-1, 2 pi i lam (t-z0)) ~ e^{2 pi i lam z0}, so terms fall like
        // exp(-2 pi k Im z0).
        K = static_cast<int>(std::ceil(40.0 / (2.0 * kPi * std::max(0.05, z0.imag())))) + 4;
    }
    const EtaPowerSeries ps = eta_power_coeffs(r, K);
    cplx s = 0.0;
    for (int k = 0; k <= K; ++k) {
        const cplx lam = r / 12.0 + static_cast<double>(k);
        s += ps.coeffs[k] * cpow(lam, 1.0 - r) * std::exp(2.0 * kPi * kI * lam * t) *
             incomplete_gamma(r - 1.0, 2.0 * kPi * kI * lam * (t - z0));
    }
    return -kI * std::exp(kI * kPi * r / 2.0) * cpow(2.0 * kPi, 1.0 - r) * s;
}

}  // namespace

cplx solve_parabolic(const ParabolicProblem& p, cplx t, int K) {
    check_cut(p, t);
    switch (p.kind) {
        case ParabolicKind::Constant: {
            if (p.r == cplx(1.0, 0.0)) return -log_branch(p.z0 - t, ArgInterval::cut_down());
            return power_branch(p.z0 - t, p.r - 1.0, ArgInterval::cut_down()) / (1.0 - p.r);
        }
        case ParabolicKind::Cuspidal: {
            if (!p.E.cuspidal()) throw DomainError("precondition: cuspidal solver needs a cusp form");
            const FormEvaluator& E = p.E;
            return contour_integral([&](cplx z) { return omega(E, t, z); },
                                    GeodesicPath{HPoint::at(p.z0), HPoint::inf(), DecayHint::Exponential})
                .value;
        }
        case ParabolicKind::Eta: return eta_series(p.r, p.z0, t, K);
    }
    return 0.0;
}

cplx parabolic_rhs(const ParabolicProblem& p, cplx t) {
    const FormEvaluator& E = p.E;
    return contour_integral(
               [&](cplx z) { return power_branch(z - t, p.r - 2.0, ArgInterval::cut_down()) * E(z); },
               SegmentPath{p.z0 - 1.0, p.z0})
        .value;
}

double parabolic_residual(const ParabolicProblem& p, cplx t) {
    const cplx lhs = solve_parabolic(p, t + 1.0) / p.lambda - solve_parabolic(p, t);
    return std::abs(lhs - parabolic_rhs(p, t));
}

}  // namespace eichler
