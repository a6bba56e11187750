#include "eichler/cocycles.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "eichler/specfun.hpp"

namespace eichler {

FormEvaluator FormEvaluator::eta_power(cplx r) {
    FormEvaluator f;
    f.kind_ = Kind::EtaPower;
    f.r_ = r;
    f.ms_ = MultiplierSystem::modular(r);
    f.alpha_ = 0.0;
    return f;
}

FormEvaluator FormEvaluator::constant_one() {
    FormEvaluator f;
    f.kind_ = Kind::ConstantOne;
    return f;
}

FormEvaluator FormEvaluator::fourier_series(cplx r, MultiplierSystem ms, double alpha,
                                            std::vector<cplx> coeffs) {
    FormEvaluator f;
    f.kind_ = Kind::FourierSeries;
    f.r_ = r;
    f.ms_ = ms;
    f.alpha_ = alpha;
    f.coeffs_ = std::move(coeffs);
    return f;
}

FormEvaluator FormEvaluator::quasi_E2() {
    FormEvaluator f;
    f.kind_ = Kind::QuasiE2;
    f.r_ = 2.0;
    f.ms_ = MultiplierSystem::trivial(2.0);
    return f;
}

FormEvaluator FormEvaluator::newform(std::vector<double> a, int level, int fricke_sign) {
    if (level < 1) throw DomainError("newform: level must be positive");
    if (fricke_sign != 1 && fricke_sign != -1) throw DomainError("newform: Fricke sign must be +-1");
    FormEvaluator f;
    f.kind_ = Kind::Newform;
    f.r_ = 2.0;
    f.ms_ = MultiplierSystem::trivial(2.0);
    f.alpha_ = 1.0;
    f.coeffs_.assign(a.begin(), a.end());
    f.level_ = level;
    f.fricke_ = fricke_sign;
    return f;
}

bool FormEvaluator::cuspidal() const {
    switch (kind_) {
        case Kind::EtaPower: return r_.real() > 0;
        case Kind::Newform: return true;
        case Kind::FourierSeries: return alpha_ > 0 || coeffs_.empty() || coeffs_[0] == cplx(0.0, 0.0);
        default: return false;
    }
}

cplx FormEvaluator::series(cplx z) const {
    const cplx q = std::exp(2.0 * kPi * kI * z);
    cplx qn = std::exp(2.0 * kPi * kI * alpha_ * z);
    cplx s = 0.0;
    for (const cplx& c : coeffs_) {
        s += c * qn;
        qn *= q;
    }
    return s;
}

cplx FormEvaluator::operator()(cplx z) const {
    if (!(z.imag() > 0)) throw DomainError("form evaluation: z must lie in the upper half-plane");
    switch (kind_) {
        case Kind::EtaPower: return eta_power_eval(r_, z);
        case Kind::ConstantOne: return 1.0;
        case Kind::FourierSeries: return series(z);
        case Kind::QuasiE2: return eisenstein_e2(z);
        case Kind::Newform: {
            const double N = level_;
            if (z.imag() * std::sqrt(N) < 1.0 && std::norm(z) * N < 1.0) {
                const cplx w = -1.0 / (N * z);
                return (*this)(w) / (fricke_ * N * z * z);
            }
            // a_n grows at most like n; ask for e^{-2 pi K y} K^2 < 1e-17.
            const double K = static_cast<double>(coeffs_.size());
            if (2.0 * kPi * K * z.imag() < 40.0 + 2.0 * std::log(K + 1.0))
                throw AccuracyRefusal("newform: too few coefficients for this Im z");
            // Coefficients are stored from a_1.
            return series(z);
        }
    }
    return 0.0;
}

Fn FormEvaluator::fn() const {
    return [self = *this](cplx z) { return self(z); };
}

cplx omega(const FormEvaluator& F, cplx t, cplx z) {
    return power_branch(z - t, F.weight() - 2.0, ArgInterval::cut_down()) * F(z);
}

// ---------------------------------------------------------------------------

namespace {

void require_lower(cplx t) {
    if (!(t.imag() < 0)) throw DomainError("cocycle: t must lie in the lower half-plane");
}

CocycleSample from_quad(const GroupElement& g, cplx t, std::optional<cplx> z0, const QuadResult& q) {
    return {g, t, q.value, z0, q.error, q.converged};
}

}  // namespace

CocycleSample eichler_cocycle(const FormEvaluator& F, const GroupElement& gamma, cplx z0, cplx t,
                              const QuadOptions& opt) {
    if (!(z0.imag() > 0)) throw DomainError("cocycle: z0 must lie in the upper half-plane");
    require_lower(t);
    const cplx start = gamma.inverse().act(z0);
    if (std::abs(start - z0) <= 1e-15 * std::max(1.0, std::abs(z0))) return {gamma, t, 0.0, z0};
    const auto q = contour_integral([&](cplx z) { return omega(F, t, z); },
                                    GeodesicPath{HPoint::at(start), HPoint::at(z0)}, opt);
    return from_quad(gamma, t, z0, q);
}

CocycleSample cusp_cocycle(const FormEvaluator& F, const GroupElement& gamma, cplx t,
                           const QuadOptions& opt) {
    if (!F.cuspidal()) throw DomainError("precondition: cusp_cocycle needs a cusp form");
    require_lower(t);
    if (gamma.c() == 0.0) return {gamma, t, 0.0, std::nullopt};
    const double start = -gamma.d() / gamma.c();
    const auto q =
        contour_integral([&](cplx z) { return omega(F, t, z); },
                         GeodesicPath{HPoint::at(start), HPoint::inf(), DecayHint::Exponential}, opt);
    return from_quad(gamma, t, std::nullopt, q);
}

cplx period_function(cplx r, cplx t, const QuadOptions& opt) {
    return cusp_cocycle(FormEvaluator::eta_power(r), GroupElement::S(), t, opt).value;
}

cplx act_dual(const Fn& psi, const MultiplierSystem& ms, const GroupElement& g, cplx t) {
    return slash_v(psi, ms, 2.0 - ms.r, g, t, HalfPlane::Lower);
}

// ---------------------------------------------------------------------------

QuadResult I_integral(cplx r, cplx s, IMethod method, const QuadOptions& opt) {
    if (!(r.real() > 0)) throw DomainError("I_integral: needs Re r > 0");
    if (method == IMethod::Split) {
        auto g = [&](double u) {
            const double y = std::exp(u);
            const cplx F = std::exp(2.0 * r * log_eta_imag(y));
            return (std::exp(u * s) + std::exp(u * (r - s))) * F;
        };
        return integrate_to_infinity(g, 0.0, opt);
    }
    auto g = [&](double u) { return std::exp(u * s) * eta_power_eval(r, kI * std::exp(u)); };
    QuadResult q = integrate_to_infinity(g, 0.0, opt);
    q += integrate_to_infinity([&](double v) { return g(-v); }, 0.0, opt);
    return q;
}

LSeriesValue L_eta(cplx r, cplx s, LMethod method, int K) {
    if (!(r.real() > 0)) throw DomainError("L_eta: needs Re r > 0");
    if (method == LMethod::Smoothed) {
        if (K <= 0) K = 16;
        const EtaPowerSeries ps = eta_power_coeffs(r, K);
        cplx acc = 0.0;
        double last = 0.0;
        for (int k = 0; k <= K; ++k) {
            const cplx x = 2.0 * kPi * (r / 12.0 + static_cast<double>(k));
            const cplx term = ps.coeffs[k] * (cpow(x, -s) * incomplete_gamma(s, x) +
                                              cpow(x, s - r) * incomplete_gamma(r - s, x));
            acc += term;
            last = std::abs(term);
        }
        // I(r,s) = (2 pi)^{-s} Gamma(s) L(s).
        return {acc * cpow(2.0 * kPi, s) * rgamma(s), last * std::abs(cpow(2.0 * kPi, s) * rgamma(s)), K + 1};
    }
    const double excess = s.real() - 1.0 - r.real() / 2.0;
    if (!(excess > 0)) throw ConvergenceError("L_eta: direct series needs Re s > 1 + Re r/2");
    if (K <= 0) K = 2000;
    const EtaPowerSeries ps = eta_power_coeffs(r, K);
    cplx acc = 0.0;
    double growth = 0.0;
    for (int k = 0; k <= K; ++k) {
        const cplx lam = r / 12.0 + static_cast<double>(k);
        acc += ps.coeffs[k] * cpow(lam, -s);
        if (k > K / 2) growth = std::max(growth, std::abs(ps.coeffs[k]) / std::pow(k, r.real() / 2.0));
    }
    // Tail with |p_k| <= C k^{Re r/2}, C read off the upper half of the terms.
    const double tail = growth * std::pow(static_cast<double>(K), -excess) / excess;
    return {acc, tail, K + 1};
}

std::vector<cplx> period_series_coeffs(cplx r, int N) {
    std::vector<cplx> c;
    const cplx pre = -kI * std::exp(kI * kPi * r / 2.0);
    cplx in = 1.0;
    for (int n = 0; n < N; ++n) {
        c.push_back(pre * in * binom(r - 2.0, n) * I_integral(r, r - 1.0 - static_cast<double>(n)).value);
        in *= kI;
    }
    return c;
}

// ---------------------------------------------------------------------------

std::vector<cplx> default_lower_points(int n) {
    static const cplx base[] = {{-0.7, -0.4}, {0.0, -2.0}, {3.0, -0.5},  {0.5, -0.8}, {-1.5, -1.0},
                                {1.2, -0.35}, {-0.3, -1.7}, {2.0, -2.0}, {-2.5, -0.6}, {0.1, -0.5}};
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i) out.push_back(base[i % 10] - cplx(0.0, 0.1 * (i / 10)));
    return out;
}

ResidualReport verify_period_relations(cplx r, const std::vector<cplx>& points, double tol) {
    ResidualReport rep;
    rep.operation = "period_relations";
    rep.tolerance = tol;
    const MultiplierSystem ms = MultiplierSystem::modular(r);
    const Fn psi = [r](cplx t) { return period_function(r, t); };
    const GroupElement S = GroupElement::S(), T = GroupElement::T();
    const GroupElement TST = T * S * T;
    for (cplx t : points) {
        const cplx p = psi(t);
        const double e1 = std::abs(act_dual(psi, ms, S, t) + p);
        const double e2 = std::abs(p - act_dual(psi, ms, T, t) - act_dual(psi, ms, TST, t));
        rep.add(t, std::max(e1, e2));
    }
    rep.finish();
    return rep;
}

ResidualReport verify_cocycle_relation(const FormEvaluator& F, cplx z0,
                                       const std::vector<std::pair<GroupElement, GroupElement>>& pairs,
                                       const std::vector<cplx>& points, double tol) {
    ResidualReport rep;
    rep.operation = "cocycle_relation";
    rep.tolerance = tol;
    const MultiplierSystem& ms = F.multiplier();
    for (const auto& [g, d] : pairs) {
        const Fn psi_g = [&](cplx t) { return eichler_cocycle(F, g, z0, t).value; };
        for (cplx t : points) {
            const cplx lhs = eichler_cocycle(F, g * d, z0, t).value;
            const cplx rhs = act_dual(psi_g, ms, d, t) + eichler_cocycle(F, d, z0, t).value;
            rep.add(t, std::abs(lhs - rhs));
        }
    }
    rep.finish();
    return rep;
}

ResidualReport verify_basepoint_change(const FormEvaluator& F, const GroupElement& gamma, cplx z0,
                                       cplx z1, const std::vector<cplx>& points, double tol) {
    ResidualReport rep;
    rep.operation = "basepoint_change";
    rep.tolerance = tol;
    const Fn b = [&](cplx t) {
        return contour_integral([&](cplx z) { return omega(F, t, z); },
                                GeodesicPath{HPoint::at(z0), HPoint::at(z1)})
            .value;
    };
    for (cplx t : points) {
        const cplx lhs = eichler_cocycle(F, gamma, z0, t).value - eichler_cocycle(F, gamma, z1, t).value;
        const cplx rhs = act_dual(b, F.multiplier(), gamma, t) - b(t);
        rep.add(t, std::abs(lhs - rhs));
    }
    rep.finish();
    return rep;
}

cplx rational_cocycle_wt2(const GroupElement& gamma, cplx t) {
    const cplx den = gamma.denom(t);
    if (den == cplx(0.0, 0.0)) throw PoleError("rational cocycle: ct+d = 0");
    return -gamma.c() / den;
}

double rational_coboundary_residual(const GroupElement& gamma, cplx z0, cplx t) {
    const cplx w = gamma.inverse().act(z0);
    const cplx psi = 1.0 / (w - t) - 1.0 / (z0 - t);
    const cplx den = gamma.denom(t);
    const cplx bg = 1.0 / (den * den) / (z0 - gamma.act(t)) - 1.0 / (z0 - t);
    return std::abs(rational_cocycle_wt2(gamma, t) - (psi - bg));
}

// ---------------------------------------------------------------------------

std::vector<double> load_coefficients_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open coefficient file " + path);
    std::string line;
    if (!std::getline(in, line)) throw DomainError("empty coefficient file " + path);
    std::vector<double> a;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw DomainError(path + ":" + std::to_string(lineno) + ": expected n,a_n");
        try {
            const long n = std::stol(line.substr(0, comma));
            const double v = std::stod(line.substr(comma + 1));
            if (n != static_cast<long>(a.size()) + 1)
                throw DomainError(path + ":" + std::to_string(lineno) + ": indices must run 1,2,3,...");
            a.push_back(v);
        } catch (const std::logic_error&) {
            throw DomainError(path + ":" + std::to_string(lineno) + ": malformed number");
        }
    }
    return a;
}

double newform_L1(const std::vector<double>& a, int N, int fricke_sign) {
    const double y0 = 1.2 / std::sqrt(static_cast<double>(N));
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        s += a[i] / n * (std::exp(-2.0 * kPi * n * y0) - fricke_sign * std::exp(-2.0 * kPi * n / (N * y0)));
    }
    return s;
}

namespace {

double u_imag(double y, int N) { return log_eta_imag(y) + log_eta_imag(N * y); }

// int_0^inf g(y) dy in the variable v = log y, split at y = 1/sqrt(N).
QuadResult ray_integral(const std::function<cplx(double)>& g, int N, const QuadOptions& opt) {
    const double v0 = -0.5 * std::log(static_cast<double>(N));
    auto h = [&](double v) {
        const double y = std::exp(v);
        return g(y) * y;
    };
    QuadResult q = integrate_to_infinity(h, v0, opt);
    q += integrate_to_infinity([&](double w) { return h(2.0 * v0 - w); }, v0, opt);
    return q;
}

}  // namespace

cplx goldfeld_psi(const FormEvaluator& f, int N, cplx r, const QuadOptions& opt) {
    const auto q = ray_integral(
        [&](double y) { return f(kI * y) * std::exp(r * u_imag(y, N)) * std::pow(y, r); }, N, opt);
    return kI * std::exp(kI * kPi * r / 2.0) * q.value;
}

GoldfeldResult goldfeld_lprime(const std::vector<double>& a, int N, int fricke_sign, double slope_r,
                               const QuadOptions& opt) {
    GoldfeldResult res{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, slope_r};
    bool all_zero = true;
    for (double x : a)
        if (x != 0.0) all_zero = false;
    if (all_zero) return res;
    if (a.front() != 1.0) throw DomainError("precondition: a_1 must be 1");
    res.L1 = newform_L1(a, N, fricke_sign);
    if (std::abs(res.L1) > 1e-4) throw DomainError("precondition: L_f(1) is not 0");

    const FormEvaluator f = FormEvaluator::newform(a, N, fricke_sign);
    res.integral = ray_integral([&](double y) { return f(kI * y) * u_imag(y, N); }, N, opt).value.real();
    res.lprime = -4.0 * kPi * res.integral;
    res.lprime_scaled = res.integral / kPi;
    double oracle = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double n = static_cast<double>(i + 1);
        oracle += a[i] / n * incomplete_gamma(0.0, 2.0 * kPi * n / std::sqrt(static_cast<double>(N))).real();
    }
    res.lprime_oracle = 2.0 * oracle;
    res.psi_slope = (goldfeld_psi(f, N, slope_r, opt) - goldfeld_psi(f, N, 0.0, opt)) / slope_r;
    return res;
}

}  // namespace eichler
