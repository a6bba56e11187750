#include "eichler/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace eichler {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
constexpr double kLanczosG = 7.0;

bool is_nonpos_int(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && std::nearbyint(z.real()) == z.real();
}

cplx clog1p(cplx w) {
    if (std::abs(w) < 1e-4) return w * (1.0 - w * (0.5 - w * (1.0 / 3.0 - 0.25 * w)));
    return std::log(1.0 + w);
}

// Compensated complex summation.
struct KahanSum {
    cplx sum{0.0, 0.0};
    cplx comp{0.0, 0.0};
    void add(cplx x) {
        const cplx y = x - comp;
        const cplx t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

cplx cgamma(cplx z) {
    if (is_nonpos_int(z)) throw PoleError("gamma: pole at a non-positive integer");
    if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * cgamma(1.0 - z));
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + kLanczosG + 0.5;
    return std::sqrt(2.0 * kPi) * std::exp((z + 0.5) * std::log(t) - t) * x;
}

cplx rgamma(cplx z) {
    if (is_nonpos_int(z)) return 0.0;
    return 1.0 / cgamma(z);
}

cplx clgamma(cplx z) {
    if (!(z.real() > 0)) throw DomainError("clgamma: requires Re z > 0");
    if (z.real() < 0.5) return clgamma(z + 1.0) - std::log(z);
    z -= 1.0;
    cplx x = kLanczos[0];
    for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + static_cast<double>(i));
    const cplx t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx pochhammer(cplx a, int n) {
    cplx p = 1.0;
    for (int i = 0; i < n; ++i) p *= a + static_cast<double>(i);
    return p;
}

cplx binom(cplx x, int n) {
    cplx p = 1.0;
    for (int i = 0; i < n; ++i) p *= (x - static_cast<double>(i)) / static_cast<double>(i + 1);
    return p;
}

double sigma1(long n) {
    double s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            s += static_cast<double>(d);
            if (d * d != n) s += static_cast<double>(n / d);
        }
    }
    return s;
}

double sigma_m1(long n) { return sigma1(n) / static_cast<double>(n); }

// ---------------------------------------------------------------------------

EtaPowerSeries eta_power_coeffs(cplx r, int K) {
    if (K < 0) throw DomainError("eta_power_coeffs: K must be >= 0");
    std::vector<double> s1(K + 1);
    for (int j = 1; j <= K; ++j) s1[j] = sigma1(j);
    std::vector<cplx> p(K + 1);
    p[0] = 1.0;
    for (int k = 1; k <= K; ++k) {
        cplx acc = 0.0;
        for (int j = 1; j <= k; ++j) acc += s1[j] * p[k - j];
        p[k] = -2.0 * r * acc / static_cast<double>(k);
    }
    return {r, std::move(p)};
}

cplx log_eta_direct(cplx z) {
    if (!(z.imag() > 0)) throw DomainError("eta: z must lie in the upper half-plane");
    const cplx q = std::exp(2.0 * kPi * kI * z);
    cplx s = kI * kPi * z / 12.0;
    cplx qm = q;
    for (int m = 1; m < 100000; ++m) {
        if (std::abs(qm) < 1e-18) break;
        s += clog1p(-qm);
        qm *= q;
    }
    return s;
}

cplx eta_power_eval(cplx r, cplx z) {
    if (!(z.imag() > 0)) throw DomainError("eta_power_eval: z must lie in the upper half-plane");
    if (r == cplx(0.0, 0.0)) return 1.0;
    if (z.imag() >= 0.5) return std::exp(2.0 * r * log_eta_direct(z));
    const MultiplierSystem ms = MultiplierSystem::modular(r);
    // Accumulate log j along the reduction so large factors do not overflow.
    cplx logj = 0.0;
    cplx w = z;
    for (int it = 0; it < 10000; ++it) {
        const double n = std::nearbyint(w.real());
        if (n != 0.0) {
            logj += -n * kI * kPi * r / 6.0;
            w -= n;
        }
        if (std::norm(w) >= 1.0 - 1e-15) break;
        logj += std::log(ms.vS) + r * std::log(w);
        w = -1.0 / w;
    }
    return std::exp(2.0 * r * log_eta_direct(w) - logj);
}

double log_eta_imag(double y) {
    if (!(y > 0)) throw DomainError("log_eta_imag: y must be positive");
    if (y >= 1.0) return log_eta_direct(cplx(0.0, y)).real();
    return -0.5 * std::log(y) + log_eta_imag(1.0 / y);
}

cplx eisenstein_e2(cplx z) {
    if (!(z.imag() > 0)) throw DomainError("eisenstein_e2: z must lie in the upper half-plane");
    const double n = std::nearbyint(z.real());
    const cplx w = z - n;
    if (w.imag() < 0.5 && std::norm(w) < 1.0 - 1e-15) {
        const cplx e = eisenstein_e2(-1.0 / w);
        return (e + 6.0 * kI * w / kPi) / (w * w);
    }
    const cplx q = std::exp(2.0 * kPi * kI * w);
    cplx qn = 1.0;
    KahanSum s;
    for (long k = 1; k < 100000; ++k) {
        qn *= q;
        const cplx term = sigma1(k) * qn;
        s.add(term);
        if (std::abs(qn) * k * k < 1e-18) break;
    }
    return 1.0 - 24.0 * s.sum;
}

// ---------------------------------------------------------------------------

namespace {

// Lower incomplete gamma gamma(a,u) = u^a e^{-u} sum u^n/(a)_{n+1}.
cplx lower_gamma_series(cplx a, cplx u) {
    cplx term = 1.0 / a;
    KahanSum s;
    s.add(term);
    for (int n = 1; n < 100000; ++n) {
        term *= u / (a + static_cast<double>(n));
        s.add(term);
        if (std::abs(term) < kEps * 0.25 * std::abs(s.sum) && n > 2) break;
    }
    return std::exp(a * std::log(u) - u) * s.sum;
}

// E_1(u) = Gamma(0,u) by its power series.
cplx e1_series(cplx u) {
    constexpr double euler_gamma = 0.57721566490153286060651209;
    cplx term = 1.0;
    KahanSum s;
    for (int n = 1; n < 100000; ++n) {
        term *= -u / static_cast<double>(n);
        const cplx t = term / static_cast<double>(n);
        s.add(t);
        if (std::abs(t) < kEps * 0.25 * std::abs(s.sum) && n > 2) break;
    }
    return -euler_gamma - std::log(u) - s.sum;
}

// Legendre continued fraction, modified Lentz.
cplx upper_gamma_cf(cplx a, cplx u) {
    constexpr double tiny = 1e-300;
    cplx b = u + 1.0 - a;
    cplx c = 1.0 / tiny;
    cplx d = 1.0 / b;
    cplx h = d;
    for (int i = 1; i < 200000; ++i) {
        const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const cplx del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return std::exp(a * std::log(u) - u) * h;
    }
    throw ConvergenceError("incomplete_gamma: continued fraction did not converge");
}

}  // namespace

cplx incomplete_gamma(cplx a, cplx u) {
    if (u == cplx(0.0, 0.0)) {
        if (a.real() > 0) return cgamma(a);
        throw PoleError("incomplete_gamma: Gamma(a,0) diverges for Re a <= 0");
    }
    if (u.imag() == 0.0 && u.real() < 0.0) throw BranchError("incomplete_gamma: u on the cut (-inf,0]");
    if (std::abs(u) >= 3.0) return upper_gamma_cf(a, u);
    if (is_nonpos_int(a)) {
        // Downward recurrence from E_1: Gamma(b-1,u) = (Gamma(b,u) - u^{b-1} e^{-u})/(b-1).
        cplx g = e1_series(u);
        const int m = static_cast<int>(-a.real());
        for (int k = 0; k < m; ++k) {
            const double b = -static_cast<double>(k);
            g = (g - std::exp((b - 1.0) * std::log(u) - u)) / (b - 1.0);
        }
        return g;
    }
    return cgamma(a) - lower_gamma_series(a, u);
}

// ---------------------------------------------------------------------------

namespace {

cplx terminating_2f1(cplx a, cplx b, cplx c, double x, int k) {
    cplx term = 1.0, sum = 1.0;
    for (int n = 0; n < k; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * x;
        sum += term;
    }
    return sum;
}

}  // namespace

cplx gauss_2f1(cplx a, cplx b, cplx c, double x) {
    if (x < 0.0) throw DomainError("gauss_2f1: x must be in [0, 0.95]");
    if (x > 0.95) throw AccuracyRefusal("gauss_2f1: x > 0.95 is outside the supported range");
    if (x == 0.0) return 1.0;
    if (is_nonpos_int(c)) {
        const int N = static_cast<int>(-c.real());
        auto term_count = [N](cplx p) -> int { return (is_nonpos_int(p) && -p.real() <= N) ? static_cast<int>(-p.real()) : -1; };
        if (int k = term_count(a); k >= 0) return terminating_2f1(a, b, c, x, k);
        if (int k = term_count(b); k >= 0) return terminating_2f1(a, b, c, x, k);
        // Euler transform: 2F1(a,b;c;x) = (1-x)^{c-a-b} 2F1(c-a,c-b;c;x).
        const cplx pre = std::exp((c - a - b) * std::log(1.0 - x));
        if (int k = term_count(c - a); k >= 0) return pre * terminating_2f1(c - a, c - b, c, x, k);
        if (int k = term_count(c - b); k >= 0) return pre * terminating_2f1(c - a, c - b, c, x, k);
        throw PoleError("gauss_2f1: c is a non-positive integer");
    }
    KahanSum s;
    cplx term = 1.0;
    s.add(term);
    for (int n = 0; n < 200000; ++n) {
        const double dn = static_cast<double>(n);
        const cplx ratio = (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * x;
        term *= ratio;
        if (term == cplx(0.0, 0.0)) return s.sum;
        s.add(term);
        if (std::abs(ratio) < 1.0 && std::abs(term) / (1.0 - std::abs(ratio)) < 1e-17 * std::abs(s.sum))
            return s.sum;
    }
    throw ConvergenceError("gauss_2f1: series did not converge");
}

// ---------------------------------------------------------------------------

namespace {

cplx kummer_series(cplx a, cplx b, cplx t) {
    KahanSum s;
    cplx term = 1.0;
    s.add(term);
    for (int n = 0; n < 100000; ++n) {
        const double dn = static_cast<double>(n);
        term *= (a + dn) / ((b + dn) * (dn + 1.0)) * t;
        if (term == cplx(0.0, 0.0)) return s.sum;
        s.add(term);
        if (dn > std::abs(t) && std::abs(term) < kEps * 0.1 * std::abs(s.sum)) return s.sum;
    }
    throw ConvergenceError("kummer_1f1: series did not converge");
}

// Sum of an asymptotic series sum_k (p)_k (q)_k / k! w^k, stopped at its
// smallest term. Returns the sum and the smallest omitted term.
std::pair<cplx, double> asymptotic_sum(cplx p, cplx q, cplx w) {
    cplx term = 1.0, sum = 1.0;
    double last = 1.0;
    for (int k = 0; k < 500; ++k) {
        const double dk = static_cast<double>(k);
        const cplx next = term * (p + dk) * (q + dk) / (dk + 1.0) * w;
        const double an = std::abs(next);
        if (an >= last || an < kEps * 1e-3 * std::abs(sum)) return {sum, an};
        term = next;
        sum += term;
        last = an;
    }
    return {sum, last};
}

}  // namespace

Kummer1F1 kummer_1f1_detailed(cplx a, cplx b, cplx t) {
    if (is_nonpos_int(b)) throw PoleError("kummer_1f1: b is a non-positive integer");
    if (t == cplx(0.0, 0.0)) return {1.0, false, 0.0};
    if (is_nonpos_int(a)) return {kummer_series(a, b, t), false, 0.0};
    if (t.real() < 0.0) {
        // Kummer transformation keeps the working argument in Re >= 0.
        Kummer1F1 k = kummer_1f1_detailed(b - a, b, -t);
        k.value *= std::exp(t);
        return k;
    }
    if (std::abs(t) <= 30.0) return {kummer_series(a, b, t), false, 0.0};
    // Large |t|, Re t >= 0: two-sided asymptotic expansion.
    const auto [s1, e1] = asymptotic_sum(b - a, 1.0 - a, 1.0 / t);
    const auto [s2, e2] = asymptotic_sum(a, a - b + 1.0, -1.0 / t);
    const double sgn = t.imag() >= 0.0 ? 1.0 : -1.0;
    const cplx part1 = std::exp(t + (a - b) * std::log(t)) * rgamma(a);
    const cplx part2 = std::exp(sgn * kI * kPi * a - a * std::log(t)) * rgamma(b - a);
    const cplx val = cgamma(b) * (part1 * s1 + part2 * s2);
    const double err = std::abs(cgamma(b)) * (std::abs(part1) * e1 + std::abs(part2) * e2);
    return {val, true, std::abs(val) > 0 ? err / std::abs(val) : err};
}

cplx kummer_1f1(cplx a, cplx b, cplx t) { return kummer_1f1_detailed(a, b, t).value; }

// ---------------------------------------------------------------------------

std::vector<cplx> generalized_bernoulli(cplx x, cplx y, int K) {
    // G(t) = t e^{xt} / (y e^t - 1) = sum B_k(x,y) t^k / k!.
    std::vector<cplx> num(K + 1), den(K + 1), g(K + 1);
    cplx xp = 1.0;
    double fact = 1.0;
    for (int j = 0; j <= K; ++j) {
        if (j > 0) fact *= j;
        num[j] = xp / fact;
        xp *= x;
    }
    const bool unit = (y == cplx(1.0, 0.0));
    if (unit) {
        // (e^t - 1)/t = sum t^j/(j+1)!
        double f = 1.0;
        for (int j = 0; j <= K; ++j) {
            f *= (j + 1);
            den[j] = 1.0 / f;
        }
        for (int k = 0; k <= K; ++k) {
            cplx acc = num[k];
            for (int j = 1; j <= k; ++j) acc -= den[j] * g[k - j];
            g[k] = acc / den[0];
        }
    } else {
        double f = 1.0;
        den[0] = y - 1.0;
        for (int j = 1; j <= K; ++j) {
            f *= j;
            den[j] = y / f;
        }
        std::vector<cplx> q(K + 1);
        for (int k = 0; k < K; ++k) {
            cplx acc = num[k];
            for (int j = 1; j <= k; ++j) acc -= den[j] * q[k - j];
            q[k] = acc / den[0];
        }
        g[0] = 0.0;
        for (int k = 1; k <= K; ++k) g[k] = q[k - 1];
    }
    std::vector<cplx> B(K + 1);
    double kf = 1.0;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) kf *= k;
        B[k] = g[k] * kf;
    }
    return B;
}

namespace {

// b_k(lambda,s) for k = 0..K-1.
std::vector<cplx> lerch_b_table(cplx lambda, cplx s, int K) {
    const std::vector<cplx> B = generalized_bernoulli(0.5, lambda, K);
    std::vector<cplx> b(K);
    cplx poch = 1.0;
    double fact = 1.0;  // (k+1)!
    for (int k = 0; k < K; ++k) {
        fact *= (k + 1);
        const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
        b[k] = sign * B[k + 1] / fact * poch;
        poch *= s + static_cast<double>(k);
    }
    return b;
}

cplx lambda_of(cplx a) { return std::exp(2.0 * kPi * kI * a); }

bool lambda_is_one(cplx a) { return a.imag() == 0.0 && std::nearbyint(a.real()) == a.real(); }

}  // namespace

cplx lerch_b(int k, cplx lambda, cplx s) {
    if (k < 0) throw DomainError("lerch_b: k must be >= 0");
    return lerch_b_table(lambda, s, k + 1)[k];
}

LerchAsymptotic lerch_asymptotic(cplx s, cplx a, cplx z, int K) {
    if (K < 0) throw DomainError("lerch_asymptotic: K must be >= 0");
    if (std::abs(std::arg(z)) > kPi - 0.1) throw DomainError("lerch_asymptotic: z outside the sector |arg z| <= pi - 0.1");
    const bool one = lambda_is_one(a);
    const cplx lambda = one ? cplx(1.0, 0.0) : lambda_of(a);
    if (one && s == cplx(1.0, 0.0)) throw PoleError("lerch_asymptotic: s = 1 with lambda = 1");
    const std::vector<cplx> b = lerch_b_table(lambda, s, K + 1);
    const cplx lz = std::log(z);
    cplx v = one ? std::exp((1.0 - s) * lz) / (s - 1.0) : cplx(0.0, 0.0);
    for (int k = 0; k < K; ++k) v += b[k] * std::exp(-(static_cast<double>(k) + s) * lz);
    const double next = std::abs(b[K] * std::exp(-(static_cast<double>(K) + s) * lz));
    return {v, next};
}

LerchEval hurwitz_lerch_eval(cplx s, cplx a, cplx z) {
    if (a.imag() < 0.0) throw DomainError("hurwitz_lerch: requires Im a >= 0");
    if (z.imag() == 0.0 && z.real() <= 0.0) throw DomainError("hurwitz_lerch: z on (-inf, 0]");
    const bool one = lambda_is_one(a);
    if (one && s == cplx(1.0, 0.0)) throw PoleError("hurwitz_lerch: pole at s = 1 for integral a");
    // Only a mod 1 matters for the series.
    const cplx ar(a.real() - std::nearbyint(a.real()), a.imag());
    const cplx lambda = one ? cplx(1.0, 0.0) : lambda_of(ar);
    const double decay = std::abs(lambda);

    // Distance from 0 to the nearest non-removable pole of t e^{t/2}/(lambda e^t - 1).
    double rho = 2.0 * kPi;
    if (!one) rho = 2.0 * kPi * std::min({std::abs(ar), std::abs(ar - 1.0), std::abs(ar + 1.0)});
    const double zt = std::max(16.0 / rho, 2.0 * (std::abs(s) + 24.0) / rho);
    const double shift = std::max(0.0, std::ceil(zt - z.real() + 0.5));

    const double direct_terms = decay < 1.0 ? 40.0 / -std::log(decay) : std::numeric_limits<double>::infinity();
    if (direct_terms < std::max(shift, 1.0) * 4.0 || direct_terms < 200.0) {
        KahanSum sum;
        cplx ln = 1.0;
        int small = 0;
        for (long n = 0; n < 50000000; ++n) {
            const cplx term = ln * std::exp(-s * std::log(z + static_cast<double>(n)));
            sum.add(term);
            ln *= lambda;
            small = std::abs(term) < 1e-18 * std::abs(sum.sum) * (1.0 - decay) ? small + 1 : 0;
            if (small >= 3) break;
        }
        return {s, a, z, sum.sum, LerchMethod::Direct};
    }
    if (shift > 5.0e6) throw ConvergenceError("hurwitz_lerch: lambda too close to 1 for the shifted expansion");

    const long m = static_cast<long>(shift);
    KahanSum sum;
    cplx ln = 1.0;
    for (long n = 0; n < m; ++n) {
        sum.add(ln * std::exp(-s * std::log(z + static_cast<double>(n))));
        ln *= lambda;
    }
    // Tail lambda^m H(s,a,z+m) from the expansion about Z = z + m - 1/2.
    const cplx Z = z + static_cast<double>(m) - 0.5;
    const cplx lZ = std::log(Z);
    constexpr int K = 60;
    const std::vector<cplx> b = lerch_b_table(lambda, s, K);
    cplx tail = one ? std::exp((1.0 - s) * lZ) / (s - 1.0) : cplx(0.0, 0.0);
    // b_k vanishes for odd k when lambda = 1, so require two small terms in a row.
    int small = 0;
    for (int k = 0; k < K; ++k) {
        const cplx t = b[k] * std::exp(-(static_cast<double>(k) + s) * lZ);
        tail += t;
        small = std::abs(t) < 1e-18 * std::abs(tail) ? small + 1 : 0;
        if (k > 2 && small >= 2) break;
    }
    sum.add(ln * tail);
    return {s, a, z, sum.sum, m == 0 ? LerchMethod::Asymptotic : LerchMethod::Shifted};
}

cplx hurwitz_lerch(cplx s, cplx a, cplx z) { return hurwitz_lerch_eval(s, a, z).value; }

}  // namespace eichler
