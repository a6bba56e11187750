// eichler: command-line front end. See docs/cli.md for the output format.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <thread>

#include "eichler/averages.hpp"
#include "eichler/cocycles.hpp"
#include "eichler/harmonic.hpp"
#include "eichler/quantum.hpp"
#include "eichler/specfun.hpp"
#include "verify.hpp"

#ifndef EICHLER_DEFAULT_FIXTURE
#define EICHLER_DEFAULT_FIXTURE ""
#endif

using namespace eichler;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Parsing

double parse_double(const std::string& s) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + s + "'");
    }
    if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
    return v;
}

// RE[,IM]
cplx parse_cplx(const std::string& s) {
    const auto k = s.find(',');
    if (k == std::string::npos) return parse_double(s);
    return {parse_double(s.substr(0, k)), parse_double(s.substr(k + 1))};
}

std::vector<long> parse_ints(const std::string& s, char sep) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        const double v = parse_double(item);
        if (v != std::nearbyint(v)) throw UsageError("not an integer: '" + item + "'");
        out.push_back(static_cast<long>(v));
    }
    return out;
}

// a,b,c,d with ad - bc = 1
GroupElement parse_matrix(const std::string& s) {
    const auto v = parse_ints(s, ',');
    if (v.size() != 4) throw UsageError("matrix needs four entries a,b,c,d: '" + s + "'");
    const IntMatrix m{v[0], v[1], v[2], v[3]};
    if (m.det() != 1) throw UsageError("matrix must have determinant 1: '" + s + "'");
    return GroupElement(m);
}

Rational parse_rational(const std::string& s) {
    const auto v = parse_ints(s, '/');
    if (v.size() == 1) return Rational::make(v[0], 1);
    if (v.size() != 2 || v[1] == 0) throw UsageError("cusp must be p/q: '" + s + "'");
    return Rational::make(v[0], v[1]);
}

std::vector<cplx> parse_points(const std::vector<std::string>& raw) {
    std::vector<cplx> out;
    for (const auto& s : raw) out.push_back(parse_cplx(s));
    return out;
}

void require_lower(const std::vector<cplx>& pts, const char* flag) {
    for (cplx t : pts)
        if (!(t.imag() < 0.0)) throw UsageError(std::string(flag) + " points must have Im < 0");
}

void require_upper(const std::vector<cplx>& pts, const char* flag) {
    for (cplx z : pts)
        if (!(z.imag() > 0.0)) throw UsageError(std::string(flag) + " points must have Im > 0");
}

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

std::string matrix_str(const GroupElement& g) {
    const IntMatrix& m = g.int_matrix();
    return std::to_string(m.a) + "," + std::to_string(m.b) + "," + std::to_string(m.c) + "," + std::to_string(m.d);
}

// ---------------------------------------------------------------------------
// Parallel sample evaluation

int thread_count() {
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("EICHLER_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) n = v;
    }
    return n;
}

template <class R, class F>
std::vector<R> parallel_map(size_t n, F f) {
    std::vector<R> out(n);
    std::atomic<size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (size_t i = next++; i < n; i = next++) {
            if (failed) return;
            try {
                out[i] = f(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
            }
        }
    };
    const size_t threads = std::min<size_t>(static_cast<size_t>(thread_count()), std::max<size_t>(n, 1));
    std::vector<std::thread> pool;
    for (size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    return out;
}

// ---------------------------------------------------------------------------
// Output

struct Output {
    std::string command;
    json params = json::object();
    std::vector<std::pair<json, cplx>> results;
    std::vector<double> residuals;
    double tolerance = 0.0;

    bool pass() const {
        for (double r : residuals)
            if (!(r <= tolerance)) return false;
        return !residuals.empty();
    }
};

void write_json(const json& j, std::string& out) {
    switch (j.type()) {
        case json::value_t::object: {
            out += '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ',';
                first = false;
                out += json(it.key()).dump();
                out += ':';
                write_json(it.value(), out);
            }
            out += '}';
            break;
        }
        case json::value_t::array: {
            out += '[';
            for (size_t i = 0; i < j.size(); ++i) {
                if (i) out += ',';
                write_json(j[i], out);
            }
            out += ']';
            break;
        }
        case json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) {
                out += "null";
            } else {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", v);
                out += buf;
            }
            break;
        }
        default:
            out += j.dump();
    }
}

std::string csv_field(const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + '"';
}

std::string fmt17(double v) {
    if (!std::isfinite(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void emit(const Output& o, const std::string& format) {
    if (format == "csv") {
        const bool per_sample = o.residuals.size() == o.results.size();
        std::cout << "sample,inputs,value_re,value_im,residual,tolerance\n";
        for (size_t i = 0; i < o.results.size(); ++i) {
            std::string in;
            write_json(o.results[i].first, in);
            std::cout << i << ',' << csv_field(in) << ',' << fmt17(o.results[i].second.real()) << ','
                      << fmt17(o.results[i].second.imag()) << ',' << (per_sample ? fmt17(o.residuals[i]) : "") << ','
                      << fmt17(o.tolerance) << '\n';
        }
        return;
    }
    json j;
    j["command"] = o.command;
    j["params"] = o.params;
    json res = json::array();
    for (const auto& [inputs, value] : o.results) res.push_back(json{{"inputs", inputs}, {"value", cj(value)}});
    j["results"] = res;
    j["residuals"] = o.residuals;
    j["tolerance"] = o.tolerance;
    j["pass"] = o.pass();
    std::string out;
    write_json(j, out);
    std::cout << out << '\n';
}

// ---------------------------------------------------------------------------
// Commands

struct Common {
    std::string format = "json";
    double tol = 0.0;  // 0: command default

    double tolerance(double dflt) const {
        const double t = tol > 0.0 ? tol : dflt;
        if (!(t >= 1e-14 && t <= 1e-2)) throw UsageError("--tol must lie in [1e-14, 1e-2]");
        return t;
    }
};

std::vector<cplx> lower_or_default(const std::vector<std::string>& raw, int n) {
    auto pts = raw.empty() ? default_lower_points(n) : parse_points(raw);
    require_lower(pts, "--t");
    return pts;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eichler integrals, period functions, averages and r-harmonic kernels"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--format", common.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--tol", common.tol, "tolerance for the residual checks, in [1e-14, 1e-2]");

    std::string r_s, s_s, a_s, z_s, lambda_s = "1", sign_s = "plus", kind_s = "M", z0_s = "0,1", tau_s, zp_s,
                                     center_s = "0,1.5", fixture = EICHLER_DEFAULT_FIXTURE;
    std::vector<std::string> t_list, z_list, pair_list, criteria_list;
    int points = 10, mu = 0, M = 40, level = 37, fricke = 1;
    double radius = 1.0;
    bool check_relations = false, continued = false, quick = false, full = false;

    auto* period = app.add_subcommand("period", "period function of eta^{2r} on the lower half-plane");
    period->add_option("--r", r_s, "weight RE[,IM]")->required();
    period->add_option("--t", t_list, "sample point RE,IM (repeatable, Im < 0)");
    period->add_option("--points", points, "number of default sample points")->check(CLI::Range(1, 64));
    period->add_flag("--check-relations", check_relations, "also check psi|S + psi = 0 and psi = psi|(T + TST)");

    auto* cocycle = app.add_subcommand("cocycle-check", "cocycle relation for the Eichler cocycle of eta^{2r}");
    cocycle->add_option("--r", r_s, "weight RE[,IM]")->required();
    cocycle->add_option("--z0", z0_s, "base point RE,IM");
    cocycle->add_option("--pair", pair_list, "gamma;delta as a,b,c,d;a,b,c,d (repeatable)");
    cocycle->add_option("--t", t_list, "sample point RE,IM (repeatable, Im < 0)");
    cocycle->add_option("--points", points, "number of default sample points")->check(CLI::Range(1, 64));

    auto* lvalue = app.add_subcommand("l-value", "Mellin integral I(r,s) against (2pi)^{-s} Gamma(s) L(s)");
    lvalue->add_option("--r", r_s, "weight RE[,IM]")->required();
    lvalue->add_option("--s", s_s, "RE[,IM]")->required();

    auto* lerch = app.add_subcommand("lerch", "Hurwitz-Lerch zeta H(s,a,z)");
    lerch->add_option("--s", s_s, "RE[,IM]")->required();
    lerch->add_option("--a", a_s, "RE[,IM], Im >= 0")->required();
    lerch->add_option("--z", z_s, "RE[,IM], not on (-inf,0]")->required();

    auto* average = app.add_subcommand("average", "one-sided average of g(t) = (i-t)^{r-2}");
    average->add_option("--r", r_s, "weight RE[,IM]")->required();
    average->add_option("--lambda", lambda_s, "RE[,IM]");
    average->add_option("--sign", sign_s, "plus or minus")->check(CLI::IsMember({"plus", "minus"}));
    average->add_option("--t", t_list, "sample point RE,IM (repeatable, Im <= 0)");
    average->add_flag("--continued", continued, "use the Hurwitz-Lerch continuation (|lambda| = 1)");

    auto* harmonic = app.add_subcommand("harmonic-check", "Laplacian and shadow of a polar function");
    harmonic->add_option("--r", r_s, "weight RE[,IM]")->required();
    harmonic->add_option("--kind", kind_s, "P, M or H")->check(CLI::IsMember({"P", "M", "H"}));
    harmonic->add_option("--mu", mu, "index");
    harmonic->add_option("--z", z_list, "sample point RE,IM (repeatable, Im > 0)");

    auto* kernel = app.add_subcommand("kernel-expand", "polar expansion of K_r(z;tau)");
    kernel->add_option("--r", r_s, "weight RE[,IM]")->required();
    kernel->add_option("--z", z_s, "RE,IM")->required();
    kernel->add_option("--tau", tau_s, "RE,IM")->required();
    kernel->add_option("--M", M, "number of terms")->check(CLI::Range(1, 400));

    auto* cauchy = app.add_subcommand("cauchy", "Cauchy-type formula for F(z) = z^2 + 1 on a circle");
    cauchy->add_option("--r", r_s, "weight RE[,IM]")->required();
    cauchy->add_option("--zp", zp_s, "evaluation point RE,IM")->required();
    cauchy->add_option("--center", center_s, "circle centre RE,IM");
    cauchy->add_option("--radius", radius, "circle radius (hyperbolic disc must lie in the upper half-plane)");

    auto* quantum = app.add_subcommand("quantum", "quantum value p(a) of eta^{2r}");
    quantum->add_option("--r", r_s, "weight RE[,IM], Re r > 0")->required();
    quantum->add_option("--a", a_s, "cusp p/q")->required();
    quantum->add_option("--z0", z0_s, "base point RE,IM");

    auto* goldfeld = app.add_subcommand("goldfeld", "L'(1) of a weight-2 newform from its coefficients");
    goldfeld->add_option("--fixture", fixture, "CSV n,a_n");
    goldfeld->add_option("--level", level, "level N")->check(CLI::PositiveNumber);
    goldfeld->add_option("--sign", fricke, "Fricke eigenvalue")->check(CLI::IsMember({-1, 1}));

    auto* verify_all = app.add_subcommand("verify-all", "run the acceptance criteria");
    auto* qflag = verify_all->add_flag("--quick", quick, "reduced sample counts");
    verify_all->add_flag("--full", full, "full sample counts (default)")->excludes(qflag);
    verify_all->add_option("--criteria", criteria_list, "subset of criteria (1-13)")->delimiter(',');
    verify_all->add_option("--fixture", fixture, "CSV n,a_n for criterion 13");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Output o;
    try {
        auto* sub = app.get_subcommands().front();
        o.command = sub->get_name();
        if (!r_s.empty()) o.params["r"] = cj(parse_cplx(r_s));

        if (sub == period) {
            const cplx r = parse_cplx(r_s);
            const auto pts = lower_or_default(t_list, points);
            o.tolerance = common.tolerance(1e-7);
            o.params["check_relations"] = check_relations;
            const auto F = FormEvaluator::eta_power(r);
            const auto vals = parallel_map<CocycleSample>(pts.size(), [&](size_t i) {
                return cusp_cocycle(F, GroupElement::S(), pts[i]);
            });
            for (size_t i = 0; i < pts.size(); ++i) {
                o.results.push_back({json{{"t", cj(pts[i])}}, vals[i].value});
                o.residuals.push_back(vals[i].error);
            }
            if (check_relations) {
                const auto rep = verify_period_relations(r, pts, o.tolerance);
                o.residuals.insert(o.residuals.end(), rep.residuals.begin(), rep.residuals.end());
            }
        } else if (sub == cocycle) {
            const cplx r = parse_cplx(r_s), z0 = parse_cplx(z0_s);
            require_upper({z0}, "--z0");
            const auto pts = lower_or_default(t_list, points);
            o.tolerance = common.tolerance(1e-7);
            o.params["z0"] = cj(z0);
            std::vector<std::pair<GroupElement, GroupElement>> pairs;
            if (pair_list.empty()) {
                const auto S = GroupElement::S(), T = GroupElement::T();
                pairs = {{S, T}, {T, S}, {S * T, T * S}};
            }
            for (const auto& p : pair_list) {
                const auto k = p.find(';');
                if (k == std::string::npos) throw UsageError("--pair needs gamma;delta");
                pairs.emplace_back(parse_matrix(p.substr(0, k)), parse_matrix(p.substr(k + 1)));
            }
            const auto F = FormEvaluator::eta_power(r);
            for (const auto& [g, d] : pairs) {
                const auto rep = verify_cocycle_relation(F, z0, {{g, d}}, pts, o.tolerance);
                const auto vals = parallel_map<CocycleSample>(pts.size(), [&](size_t i) {
                    return eichler_cocycle(F, g * d, z0, pts[i]);
                });
                for (size_t i = 0; i < pts.size(); ++i)
                    o.results.push_back(
                        {json{{"gamma", matrix_str(g)}, {"delta", matrix_str(d)}, {"t", cj(pts[i])}}, vals[i].value});
                o.residuals.insert(o.residuals.end(), rep.residuals.begin(), rep.residuals.end());
            }
        } else if (sub == lvalue) {
            const cplx r = parse_cplx(r_s), s = parse_cplx(s_s);
            o.tolerance = common.tolerance(1e-8);
            o.params["s"] = cj(s);
            const cplx I = I_integral(r, s).value;
            const cplx L = std::pow(2.0 * kPi, -s) * cgamma(s) * L_eta(r, s).value;
            o.results.push_back({json{{"quantity", "I(r,s)"}}, I});
            o.results.push_back({json{{"quantity", "(2pi)^-s Gamma(s) L(s)"}}, L});
            o.residuals.push_back(std::abs(I - L) / std::abs(I));
        } else if (sub == lerch) {
            const cplx s = parse_cplx(s_s), a = parse_cplx(a_s), z = parse_cplx(z_s);
            o.tolerance = common.tolerance(1e-12);
            o.params["s"] = cj(s);
            o.params["a"] = cj(a);
            o.params["z"] = cj(z);
            const auto ev = hurwitz_lerch_eval(s, a, z);
            static const char* names[] = {"direct", "shifted", "asymptotic"};
            o.results.push_back({json{{"method", names[static_cast<int>(ev.method)]}}, ev.value});
            // Shift identity with m = 7.
            const cplx lambda = std::exp(2.0 * kPi * kI * a);
            cplx head = 0.0, ln = 1.0;
            for (int n = 0; n < 7; ++n, ln *= lambda) head += ln * std::pow(z + static_cast<double>(n), -s);
            o.residuals.push_back(std::abs(ev.value - head - ln * hurwitz_lerch(s, a, z + 7.0)) /
                                  std::max(1.0, std::abs(ev.value)));
        } else if (sub == average) {
            const cplx r = parse_cplx(r_s), lambda = parse_cplx(lambda_s);
            const AvSign sg = sign_s == "plus" ? AvSign::Plus : AvSign::Minus;
            auto pts = t_list.empty() ? std::vector<cplx>{cplx(0.3, -0.5), cplx(-1.2, -0.1), cplx(2.5, 0.0)}
                                      : parse_points(t_list);
            for (cplx t : pts)
                if (t.imag() > 0.0) throw UsageError("--t points must have Im <= 0");
            o.tolerance = common.tolerance(continued ? 1e-7 : 1e-8);
            o.params["lambda"] = cj(lambda);
            o.params["sign"] = sign_s;
            o.params["continued"] = continued;
            const Fn g = [=](cplx t) { return power_branch(kI - t, r - 2.0, ArgInterval::cut_down()); };
            const Fn one = [](cplx) { return cplx(1.0); };
            const AverageSpec sp{lambda, sg, r, g};
            auto av = [&](cplx t) {
                return continued ? average_continued(one, r, lambda, sg, t).value : one_sided_average(sp, t).value;
            };
            const auto vals = parallel_map<std::pair<cplx, double>>(pts.size(), [&](size_t i) {
                const cplx v = av(pts[i]);
                return std::make_pair(v, std::abs(v - av(pts[i] + 1.0) / lambda - g(pts[i])));
            });
            for (size_t i = 0; i < pts.size(); ++i) {
                o.results.push_back({json{{"t", cj(pts[i])}}, vals[i].first});
                o.residuals.push_back(vals[i].second);
            }
        } else if (sub == harmonic) {
            const cplx r = parse_cplx(r_s);
            auto pts = z_list.empty() ? std::vector<cplx>{cplx(0.3, 0.5), cplx(-0.7, 1.8), cplx(1.4, 0.9)}
                                      : parse_points(z_list);
            require_upper(pts, "--z");
            o.tolerance = common.tolerance(1e-4);
            o.params["kind"] = kind_s;
            o.params["mu"] = mu;
            const PolarKind kind = kind_s == "P" ? PolarKind::P : kind_s == "M" ? PolarKind::M : PolarKind::H;
            const PolarIndex idx{r, mu};
            const Fn F = [&](cplx z) { return polar_eval(idx, kind, z); };
            const FDStencil st{1e-3, 4};
            for (cplx z : pts) {
                const cplx v = F(z);
                o.results.push_back({json{{"z", cj(z)}}, v});
                o.residuals.push_back(std::abs(laplacian_r(F, r, z, st)) / std::max(1.0, std::abs(v)));
                const cplx sh = polar_shadow(idx, kind, z), fd = shadow(F, r, z, st);
                o.residuals.push_back(std::abs(fd - sh) / std::max(1.0, std::abs(sh)));
            }
        } else if (sub == kernel) {
            const cplx r = parse_cplx(r_s), z = parse_cplx(z_s), tau = parse_cplx(tau_s);
            require_upper({z, tau}, "--z/--tau");
            o.tolerance = common.tolerance(1e-8);
            o.params["z"] = cj(z);
            o.params["tau"] = cj(tau);
            o.params["M"] = M;
            const auto e = polar_expansion_partial(r, z, tau, M);
            o.results.push_back(
                {json{{"regime", e.regime == PolarRegime::Outer ? "outer" : "inner"}, {"terms", e.terms}}, e.value});
            const cplx K = kernel_K(r, z, tau);
            o.results.push_back({json{{"quantity", "K_r(z;tau)"}}, K});
            o.residuals.push_back(std::abs(e.value - K));
        } else if (sub == cauchy) {
            const cplx r = parse_cplx(r_s), zp = parse_cplx(zp_s), c = parse_cplx(center_s);
            o.tolerance = common.tolerance(1e-6);
            o.params["zp"] = cj(zp);
            o.params["center"] = cj(c);
            o.params["radius"] = radius;
            const Fn F = [](cplx z) { return z * z + 1.0; };
            const auto res = cauchy_formula(F, r, zp, CircleContour{c, radius}, std::min(o.tolerance, 1e-12));
            o.results.push_back({json{{"quantity", "integral"}, {"inside", res.inside}, {"nodes", res.nodes}},
                                 res.integral});
            o.results.push_back({json{{"quantity", "expected"}}, res.expected});
            const double err = std::abs(res.integral - res.expected);
            o.residuals.push_back(res.inside ? err / std::abs(res.expected) : err);
        } else if (sub == quantum) {
            const cplx r = parse_cplx(r_s), z0 = parse_cplx(z0_s);
            require_upper({z0}, "--z0");
            const Rational a = parse_rational(a_s);
            o.tolerance = common.tolerance(1e-5);
            o.params["a"] = std::to_string(a.p) + "/" + std::to_string(a.q);
            o.params["z0"] = cj(z0);
            const auto q = quantum_value_eta(r, a, z0);
            o.results.push_back({json{{"quantity", "p(a)"}, {"quad_error", q.error}}, q.value});
            for (const auto& g : {GroupElement::S(), GroupElement::T()}) {
                if (g.c() * a.value() + g.d() == 0.0) continue;
                const auto d = quantum_defect(r, a, g, z0);
                o.results.push_back({json{{"quantity", "psi_delta(a)"}, {"delta", matrix_str(g)}}, d.rhs});
                o.residuals.push_back(d.residual);
            }
        } else if (sub == goldfeld) {
            if (fixture.empty()) throw UsageError("--fixture is required");
            o.tolerance = common.tolerance(1e-4);
            o.params["fixture"] = fixture;
            o.params["level"] = level;
            o.params["sign"] = fricke;
            const auto a = load_coefficients_csv(fixture);
            const auto g = goldfeld_lprime(a, level, fricke);
            o.results.push_back({json{{"quantity", "L(1)"}}, g.L1});
            o.results.push_back({json{{"quantity", "int f u dy"}}, g.integral});
            o.results.push_back({json{{"quantity", "L'(1) = -4 pi int f u dy"}}, g.lprime});
            o.results.push_back({json{{"quantity", "L'(1) series"}}, g.lprime_oracle});
            o.results.push_back({json{{"quantity", "psi slope"}, {"r", g.slope_r}}, g.psi_slope});
            o.residuals.push_back(std::abs(g.lprime - g.lprime_oracle));
        } else if (sub == verify_all) {
            verify::Config cfg{quick, fixture};
            o.tolerance = 1.0;
            o.params["mode"] = quick ? "quick" : "full";
            std::vector<int> ids;
            for (const auto& s : criteria_list) {
                const auto v = parse_ints(s, ',');
                for (long id : v) {
                    if (id < 1 || id > verify::kCriteria) throw UsageError("criteria are numbered 1-13");
                    ids.push_back(static_cast<int>(id));
                }
            }
            std::vector<verify::Criterion> crit;
            if (ids.empty()) {
                crit = verify::run_all(cfg, thread_count());
            } else {
                for (int id : ids) crit.push_back(verify::run_criterion(id, cfg));
            }
            for (const auto& c : crit) {
                std::cerr << verify::summary_line(c) << '\n';
                if (!c.error.empty()) {
                    o.results.push_back({json{{"criterion", c.id}, {"title", c.title}, {"error", c.error}}, NAN});
                    o.residuals.push_back(NAN);
                }
                for (const auto& k : c.checks) {
                    o.results.push_back({json{{"criterion", c.id},
                                              {"title", c.title},
                                              {"check", k.name},
                                              {"tolerance", k.tolerance},
                                              {"informational", k.informational}},
                                         k.value});
                    if (!k.informational) o.residuals.push_back(k.value / k.tolerance);
                }
            }
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help() << '\n';
        return 2;
    } catch (const Error& e) {
        json j{{"command", o.command}, {"error", json{{"kind", e.kind()}, {"message", e.what()}}}};
        std::string out;
        write_json(j, out);
        std::cout << out << '\n';
        return 3;
    }
    emit(o, common.format);
    return o.pass() ? 0 : 1;
}
