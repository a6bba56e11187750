#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eichler/core.hpp"
#include "eichler/quadrature.hpp"
#include "eichler/report.hpp"

namespace eichler {

// An automorphic object that can be sampled on the upper half-plane.
class FormEvaluator {
public:
    enum class Kind { EtaPower, ConstantOne, FourierSeries, QuasiE2, Newform };

    // eta^{2r} with the multiplier v_r.
    static FormEvaluator eta_power(cplx r);
    // The constant 1 in weight 0.
    static FormEvaluator constant_one();
    // sum_k coeffs[k] e^{2 pi i (k + alpha) z}, expansion at infinity only.
    static FormEvaluator fourier_series(cplx r, MultiplierSystem ms, double alpha,
                                        std::vector<cplx> coeffs);
    // E2, weight 2, deliberately not invariant under S.
    static FormEvaluator quasi_E2();
    // Weight-2 newform of level N from a_1, a_2, ...; points near 0 are
    // evaluated through f(-1/(Nz)) = eps N z^2 f(z).
    static FormEvaluator newform(std::vector<double> a, int level, int fricke_sign);

    cplx operator()(cplx z) const;
    Fn fn() const;

    Kind kind() const { return kind_; }
    cplx weight() const { return r_; }
    const MultiplierSystem& multiplier() const { return ms_; }
    bool cuspidal() const;

private:
    cplx series(cplx z) const;

    Kind kind_ = Kind::ConstantOne;
    cplx r_ = 0.0;
    MultiplierSystem ms_ = MultiplierSystem::trivial(0.0);
    double alpha_ = 0.0;
    std::vector<cplx> coeffs_;
    int level_ = 1;
    int fricke_ = 1;
};

// omega_r(F; t, z) = (z - t)^{r-2} F(z), arg(z - t) in (-pi/2, 3pi/2).
cplx omega(const FormEvaluator& F, cplx t, cplx z);

struct CocycleSample {
    GroupElement gamma;
    cplx t;
    cplx value;
    std::optional<cplx> z0;  // empty: based at the cusp infinity
    double error = 0.0;
    bool converged = true;
};

// int_{gamma^{-1} z0}^{z0} omega_r(F; t, z) along the geodesic.
CocycleSample eichler_cocycle(const FormEvaluator& F, const GroupElement& gamma, cplx z0, cplx t,
                              const QuadOptions& opt = {});

// int_{gamma^{-1} inf}^{inf} omega_r(F; t, z) for a cusp form F.
CocycleSample cusp_cocycle(const FormEvaluator& F, const GroupElement& gamma, cplx t,
                           const QuadOptions& opt = {});

// psi^infinity_{eta^{2r}, S}(t).
cplx period_function(cplx r, cplx t, const QuadOptions& opt = {});

// The |_{v,2-r} action on a function of the lower half-plane.
cplx act_dual(const Fn& psi, const MultiplierSystem& ms, const GroupElement& g, cplx t);

// ---------------------------------------------------------------------------
// Mellin integral and L-series of eta^{2r}

enum class IMethod { Split, Direct };

// I(r,s) = int_0^inf y^{s-1} eta^{2r}(iy) dy. Split folds (0,1) onto (1,inf)
// with eta^{2r}(i/y) = y^r eta^{2r}(iy); Direct integrates the whole ray.
QuadResult I_integral(cplx r, cplx s, IMethod method = IMethod::Split,
                      const QuadOptions& opt = {});

enum class LMethod { Direct, Smoothed };

struct LSeriesValue {
    cplx value;
    double tail_bound;
    int terms;
};

// L(eta^{2r}, s) = sum_k p_k(r) (r/12 + k)^{-s}. Direct needs
// Re s > 1 + Re r/2; Smoothed uses incomplete gamma and works for all s.
LSeriesValue L_eta(cplx r, cplx s, LMethod method = LMethod::Smoothed, int K = 0);

// c_n = -i e^{pi i r/2} i^n binom(r-2, n) I(r, r-1-n), n < N.
std::vector<cplx> period_series_coeffs(cplx r, int N);

// ---------------------------------------------------------------------------
// Verification

// Fixed sample points in the lower half-plane, at distance >= 0.3 from R.
std::vector<cplx> default_lower_points(int n = 10);

// psi|S + psi and psi - psi|T - psi|TST for psi = psi^infinity_{eta^{2r},S}.
ResidualReport verify_period_relations(cplx r, const std::vector<cplx>& points, double tol = 1e-7);

// psi_{g d} - psi_g|d - psi_d for the Eichler cocycle based at z0.
ResidualReport verify_cocycle_relation(const FormEvaluator& F, cplx z0,
                                       const std::vector<std::pair<GroupElement, GroupElement>>& pairs,
                                       const std::vector<cplx>& points, double tol = 1e-7);

// psi^{z0}_g - psi^{z1}_g - b|(g - 1) with b(t) = int_{z0}^{z1} omega_r.
ResidualReport verify_basepoint_change(const FormEvaluator& F, const GroupElement& gamma, cplx z0,
                                       cplx z1, const std::vector<cplx>& points, double tol = 1e-8);

// -c/(ct + d).
cplx rational_cocycle_wt2(const GroupElement& gamma, cplx t);

// |psi~_g - (psi^{z0}_{1,g} - b|_2(g - 1))| with b(t) = 1/(z0 - t), in closed form.
double rational_coboundary_residual(const GroupElement& gamma, cplx z0, cplx t);

// ---------------------------------------------------------------------------
// L'(1) of a weight-2 newform

// Reads a CSV `n,a_n` (header, 1-indexed, consecutive n). Returns a_1, a_2, ...
std::vector<double> load_coefficients_csv(const std::string& path);

// L_f(1) by the smoothed series with an off-centre split, which does not
// assume the functional equation is satisfied by the data.
double newform_L1(const std::vector<double>& a, int N, int fricke_sign = 1);

struct GoldfeldResult {
    double L1;             // smoothed-series L_f(1)
    double integral;       // int_0^inf f(iy) u(iy) dy, u = log(eta(z) eta(Nz))
    double lprime;         // L'_f(1) = -4 pi * integral
    double lprime_scaled;  // integral / pi
    double lprime_oracle;  // 2 sum a_n/n E_1(2 pi n / sqrt N)
    cplx psi_slope;        // (psi_{f_r}(p;0) - psi_{f_0}(p;0))/r at r = slope_r
    double slope_r;
};

// Throws DomainError if |L_f(1)| > 1e-4.
GoldfeldResult goldfeld_lprime(const std::vector<double>& a, int N, int fricke_sign = 1,
                               double slope_r = 1e-3, const QuadOptions& opt = {});

// psi_{f_r}(p; 0) = i e^{pi i r/2} int_0^inf f(iy) e^{r u(iy)} y^r dy.
cplx goldfeld_psi(const FormEvaluator& f, int N, cplx r, const QuadOptions& opt = {});

}  // namespace eichler
