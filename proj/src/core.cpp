#include "eichler/core.hpp"

#include <cmath>
#include <sstream>

namespace eichler {

double arg_in(cplx z, const ArgInterval& iv) {
    if (z == cplx(0.0, 0.0)) throw DomainError("argument of zero");
    double a = std::arg(z);
    const double lo = iv.lo, hi = iv.hi();
    while (a < lo) a += 2.0 * kPi;
    while (a > hi) a -= 2.0 * kPi;
    if (a == lo) {
        switch (iv.ends) {
            case ArgInterval::Ends::ClosedOpen: return a;
            case ArgInterval::Ends::OpenClosed: return hi;
            case ArgInterval::Ends::Open: throw BranchError("point on the branch cut");
        }
    }
    if (a == hi) {
        switch (iv.ends) {
            case ArgInterval::Ends::OpenClosed: return a;
            case ArgInterval::Ends::ClosedOpen: return lo;
            case ArgInterval::Ends::Open: throw BranchError("point on the branch cut");
        }
    }
    return a;
}

cplx log_branch(cplx z, const ArgInterval& iv) {
    const double a = arg_in(z, iv);
    return {std::log(std::abs(z)), a};
}

cplx power_branch(cplx base, cplx exponent, const ArgInterval& iv) {
    if (base == cplx(0.0, 0.0)) throw DomainError("power of zero base");
    if (exponent == cplx(0.0, 0.0)) return 1.0;
    return std::exp(exponent * log_branch(base, iv));
}

cplx cpow(cplx base, cplx exponent) {
    if (base == cplx(0.0, 0.0)) {
        if (exponent.real() > 0) return 0.0;
        throw DomainError("power of zero base");
    }
    if (exponent == cplx(0.0, 0.0)) return 1.0;
    return std::exp(exponent * std::log(base));
}

// ---------------------------------------------------------------------------

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

IntMatrix gen_matrix(Gen g) {
    switch (g) {
        case Gen::T: return {1, 1, 0, 1};
        case Gen::Tinv: return {1, -1, 0, 1};
        case Gen::S: return {0, -1, 1, 0};
        case Gen::Sinv: return {0, 1, -1, 0};
    }
    return {};
}

IntMatrix word_to_matrix(const Word& w) {
    IntMatrix m;
    for (Gen g : w) m = m * gen_matrix(g);
    return m;
}

std::string word_to_string(const Word& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) os << ' ';
        switch (w[i]) {
            case Gen::T: os << "T"; break;
            case Gen::Tinv: os << "T^-1"; break;
            case Gen::S: os << "S"; break;
            case Gen::Sinv: os << "S^-1"; break;
        }
    }
    return os.str();
}

namespace {

void push_tpow(Word& w, std::int64_t n) {
    const Gen g = n >= 0 ? Gen::T : Gen::Tinv;
    for (std::int64_t i = 0; i < (n >= 0 ? n : -n); ++i) w.push_back(g);
}

}  // namespace

Word matrix_to_word(const IntMatrix& g) {
    if (g.det() != 1) throw DomainError("matrix_to_word: determinant is not 1");
    // Right multiplications applied so far: T-powers (stored as exponent) or S.
    struct Op {
        bool is_s;
        std::int64_t k;
    };
    std::vector<Op> ops;
    IntMatrix m = g;
    while (m.c != 0) {
        std::int64_t q = m.d / m.c;
        const std::int64_t rem = m.d - q * m.c;
        if (2 * std::llabs(rem) > std::llabs(m.c)) q += ((rem > 0) == (m.c > 0)) ? 1 : -1;
        if (q != 0) {
            m = m * IntMatrix{1, -q, 0, 1};
            ops.push_back({false, -q});
        }
        m = m * gen_matrix(Gen::S);
        ops.push_back({true, 0});
    }
    // m = a * T^n with a = +-1.
    const std::int64_t sign = m.a;
    const std::int64_t n = m.b * m.a;
    Word w;
    push_tpow(w, n);
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        if (it->is_s)
            w.push_back(Gen::Sinv);
        else
            push_tpow(w, -it->k);
    }
    if (sign == -1) {
        w.push_back(Gen::S);
        w.push_back(Gen::S);
    }
    return w;
}

GroupElement::GroupElement(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
    if (std::abs(a * d - b * c - 1.0) > 1e-12) throw DomainError("group element: determinant is not 1");
    auto is_int = [](double x) { return std::nearbyint(x) == x && std::abs(x) < 9.0e15; };
    if (is_int(a) && is_int(b) && is_int(c) && is_int(d)) {
        int_ = IntMatrix{static_cast<std::int64_t>(a), static_cast<std::int64_t>(b),
                         static_cast<std::int64_t>(c), static_cast<std::int64_t>(d)};
        word_ = matrix_to_word(*int_);
    }
}

GroupElement::GroupElement(const IntMatrix& m)
    : a_(static_cast<double>(m.a)), b_(static_cast<double>(m.b)), c_(static_cast<double>(m.c)),
      d_(static_cast<double>(m.d)), int_(m) {
    if (m.det() != 1) throw DomainError("group element: determinant is not 1");
    word_ = matrix_to_word(m);
}

GroupElement GroupElement::from_word(const Word& w) {
    GroupElement g(word_to_matrix(w));
    g.word_ = w;
    return g;
}

const IntMatrix& GroupElement::int_matrix() const {
    if (!int_) throw UnsupportedError("group element is not integral");
    return *int_;
}

const Word& GroupElement::word() const {
    if (!word_) throw UnsupportedError("group element is not integral");
    return *word_;
}

GroupElement GroupElement::operator*(const GroupElement& o) const {
    if (int_ && o.int_) return GroupElement(*int_ * *o.int_);
    return GroupElement(a_ * o.a_ + b_ * o.c_, a_ * o.b_ + b_ * o.d_, c_ * o.a_ + d_ * o.c_,
                        c_ * o.b_ + d_ * o.d_);
}

GroupElement GroupElement::inverse() const {
    if (int_) return GroupElement(int_->inverse());
    return GroupElement(d_, -b_, -c_, a_);
}

cplx GroupElement::act(cplx z) const {
    const cplx den = c_ * z + d_;
    if (den == cplx(0.0, 0.0)) throw PoleError("group action: cz+d = 0");
    return (a_ * z + b_) / den;
}

// ---------------------------------------------------------------------------

MultiplierSystem MultiplierSystem::modular(cplx r) {
    return {r, std::exp(kI * kPi * r / 6.0), std::exp(-kI * kPi * r / 2.0)};
}

namespace {

cplx gen_factor(const MultiplierSystem& ms, Gen g, cplx z) {
    switch (g) {
        case Gen::T: return ms.vT;
        case Gen::Tinv: return 1.0 / ms.vT;
        case Gen::S: return ms.vS * power_branch(z, ms.r, ArgInterval::principal());
        case Gen::Sinv: return power_branch(-z, ms.r, ArgInterval::principal()) / ms.vS;
    }
    return 1.0;
}

cplx gen_act(Gen g, cplx z) {
    switch (g) {
        case Gen::T: return z + 1.0;
        case Gen::Tinv: return z - 1.0;
        case Gen::S: return -1.0 / z;
        case Gen::Sinv: return -1.0 / z;
    }
    return z;
}

}  // namespace

cplx automorphy_factor(const MultiplierSystem& ms, const GroupElement& g, cplx z) {
    if (!(z.imag() > 0)) throw DomainError("automorphy factor: z must lie in the upper half-plane");
    const Word& w = g.word();
    cplx j = 1.0;
    cplx zc = z;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        j *= gen_factor(ms, *it, zc);
        zc = gen_act(*it, zc);
    }
    return j;
}

cplx multiplier_eval(const MultiplierSystem& ms, const GroupElement& g) {
    const cplx z = kI;
    return automorphy_factor(ms, g, z) / power_branch(g.denom(z), ms.r, ArgInterval::principal());
}

// ---------------------------------------------------------------------------

namespace {

ArgInterval check_half_plane(cplx z, HalfPlane hp) {
    switch (hp) {
        case HalfPlane::Upper:
            if (!(z.imag() > 0)) throw DomainError("point is not in the upper half-plane");
            return ArgInterval::principal();
        case HalfPlane::Lower:
            if (!(z.imag() < 0)) throw DomainError("point is not in the lower half-plane");
            return ArgInterval::lower();
        case HalfPlane::LowerClosed:
            if (z.imag() > 0) throw DomainError("point is above the real axis");
            return ArgInterval::lower();
    }
    return ArgInterval::principal();
}

}  // namespace

cplx slash(const Fn& f, cplx r, const GroupElement& g, cplx z, HalfPlane hp) {
    const ArgInterval iv = check_half_plane(z, hp);
    const cplx den = g.denom(z);
    if (den == cplx(0.0, 0.0)) throw PoleError("slash: cz+d = 0");
    return power_branch(den, -r, iv) * f(g.act(z));
}

cplx slash_v(const Fn& f, const MultiplierSystem& ms, cplx p, const GroupElement& g, cplx z,
             HalfPlane hp) {
    return slash(f, p, g, z, hp) / multiplier_eval(ms, g);
}

cplx proj_map(const Fn& phi, cplx r, cplx t, Direction dir) {
    if (t == kI) throw DomainError("proj_map: t = i is singular");
    const cplx fac = power_branch(kI - t, 2.0 - r, ArgInterval::cut_down());
    return dir == Direction::Forward ? fac * phi(t) : phi(t) / fac;
}

cplx iota_involution(const Fn& f, cplx z) { return std::conj(f(std::conj(z))); }

Fn iota(Fn f) {
    return [f = std::move(f)](cplx z) { return std::conj(f(std::conj(z))); };
}

}  // namespace eichler
