#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eichler {

using cplx = std::complex<double>;
using Fn = std::function<cplx(cplx)>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr cplx kI{0.0, 1.0};

// All library failures derive from Error; kind() is a short stable tag
// ("domain", "pole", ...) that the CLI reports verbatim.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& w) : Error("domain", w) {}
};
struct PoleError : Error {
    explicit PoleError(const std::string& w) : Error("pole", w) {}
};
struct BranchError : Error {
    explicit BranchError(const std::string& w) : Error("branch", w) {}
};
struct ConvergenceError : Error {
    explicit ConvergenceError(const std::string& w) : Error("convergence", w) {}
};
struct UnsupportedError : Error {
    explicit UnsupportedError(const std::string& w) : Error("unsupported", w) {}
};
struct AccuracyRefusal : Error {
    explicit AccuracyRefusal(const std::string& w) : Error("accuracy", w) {}
};

// ---------------------------------------------------------------------------
// Branched powers

// A half-open (or open) interval of length 2*pi for the argument of a
// complex number.
struct ArgInterval {
    enum class Ends { OpenClosed, ClosedOpen, Open };
    double lo;
    Ends ends;

    double hi() const { return lo + 2.0 * kPi; }

    static ArgInterval principal() { return {-kPi, Ends::OpenClosed}; }   // (-pi, pi]
    static ArgInterval lower() { return {-kPi, Ends::ClosedOpen}; }       // [-pi, pi)
    static ArgInterval cut_down() { return {-kPi / 2, Ends::Open}; }      // (-pi/2, 3pi/2)
    static ArgInterval cut_up() { return {-1.5 * kPi, Ends::Open}; }      // (-3pi/2, pi/2)
};

// Argument of `z` inside `iv`. Throws DomainError for z == 0 and
// BranchError when z lies on an excluded endpoint ray.
double arg_in(cplx z, const ArgInterval& iv);

cplx log_branch(cplx z, const ArgInterval& iv);

// base^exponent = exp(exponent * (log|base| + i arg)), arg taken in `iv`.
cplx power_branch(cplx base, cplx exponent, const ArgInterval& iv);

// Principal power; zero base with positive real exponent gives 0.
cplx cpow(cplx base, cplx exponent);

// ---------------------------------------------------------------------------
// SL2 elements

enum class Gen { T, Tinv, S, Sinv };

using Word = std::vector<Gen>;

struct IntMatrix {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator-() const { return {-a, -b, -c, -d}; }
    bool operator==(const IntMatrix& o) const = default;
    std::int64_t det() const { return a * d - b * c; }
    IntMatrix inverse() const { return {d, -b, -c, a}; }
};

IntMatrix gen_matrix(Gen g);
IntMatrix word_to_matrix(const Word& w);
std::string word_to_string(const Word& w);

// Euclidean reduction on the bottom row. The returned word multiplies to g
// exactly (a trailing S,S is appended when the reduction lands on -g).
Word matrix_to_word(const IntMatrix& g);

class GroupElement {
public:
    GroupElement() = default;
    GroupElement(double a, double b, double c, double d);
    explicit GroupElement(const IntMatrix& m);
    static GroupElement from_word(const Word& w);

    static GroupElement identity() { return GroupElement(IntMatrix{1, 0, 0, 1}); }
    static GroupElement T() { return GroupElement(IntMatrix{1, 1, 0, 1}); }
    static GroupElement S() { return GroupElement(IntMatrix{0, -1, 1, 0}); }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }

    bool integral() const { return int_.has_value(); }
    const IntMatrix& int_matrix() const;
    // Word in T,S (integral elements only).
    const Word& word() const;

    GroupElement operator*(const GroupElement& o) const;
    GroupElement inverse() const;

    cplx act(cplx z) const;                 // (az+b)/(cz+d)
    cplx denom(cplx z) const { return c_ * z + d_; }

private:
    double a_ = 1, b_ = 0, c_ = 0, d_ = 1;
    std::optional<IntMatrix> int_;
    std::optional<Word> word_;
};

// ---------------------------------------------------------------------------
// Multiplier systems

struct MultiplierSystem {
    cplx r;
    cplx vT;
    cplx vS;

    // v_r(T) = e^{pi i r/6}, v_r(S) = e^{-pi i r/2}: the system of eta^{2r}.
    static MultiplierSystem modular(cplx r);
    static MultiplierSystem trivial(cplx r) { return {r, 1.0, 1.0}; }
};

// j_{v,r}(g, z) = v(g)(cz+d)^r, evaluated by composing generator factors
// along the word of g. z must lie in the upper half-plane.
cplx automorphy_factor(const MultiplierSystem& ms, const GroupElement& g, cplx z);

// v(g), normalised against arg(ci+d) in (-pi, pi].
cplx multiplier_eval(const MultiplierSystem& ms, const GroupElement& g);

// ---------------------------------------------------------------------------
// Actions

// Lower and LowerClosed share the convention [-pi,pi); LowerClosed also
// admits real points (functions on the lower half-plane union R).
enum class HalfPlane { Upper, Lower, LowerClosed };

// (cz+d)^{-r} f(gz) with arg(cz+d) in (-pi,pi] (upper) or [-pi,pi) (lower).
cplx slash(const Fn& f, cplx r, const GroupElement& g, cplx z, HalfPlane hp);

// v(g)^{-1} (cz+d)^{-p} f(gz): the action |_{v,p}.
cplx slash_v(const Fn& f, const MultiplierSystem& ms, cplx p, const GroupElement& g, cplx z,
             HalfPlane hp);

enum class Direction { Forward, Inverse };

// Forward: (i-t)^{2-r} phi(t), arg(i-t) in (-pi/2, 3pi/2). Inverse divides.
cplx proj_map(const Fn& phi, cplx r, cplx t, Direction dir);

// conj(f(conj z)).
cplx iota_involution(const Fn& f, cplx z);

Fn iota(Fn f);

}  // namespace eichler
