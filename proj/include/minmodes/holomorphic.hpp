#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <sstream>
#include <string>

#include "minmodes/errors.hpp"

namespace minmodes {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(Complex z, const char* what) {
    if (!is_finite(z)) throw InvalidParamsError(std::string(what) + ": non-finite complex value");
}

namespace detail {
inline std::string complex_str(Complex z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real();
    if (z.imag() != 0.0) {
        if (z.imag() > 0) os << "+";
        os << z.imag() << "i";
    }
    return os.str();
}
}  // namespace detail

/// Moebius map h(w) = (aw+b)/(cw+d), ad-bc != 0. Coefficients are stored
/// canonically: |a|^2+|b|^2+|c|^2+|d|^2 = 1 with the first nonzero coefficient
/// real and positive, so maps compare by coefficients.
struct Mobius {
    Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

    Mobius() = default;

    Mobius(Complex a_, Complex b_, Complex c_, Complex d_) : a(a_), b(b_), c(c_), d(d_) {
        require_finite(a, "mobius a");
        require_finite(b, "mobius b");
        require_finite(c, "mobius c");
        require_finite(d, "mobius d");
        if (std::abs(a * d - b * c) == 0.0)
            throw DegenerateMoebiusError("mobius: ad - bc = 0");
        canonicalize();
    }

    static Mobius identity() { return Mobius(1.0, 0.0, 0.0, 1.0); }

    /// h(w) = (aw - conj(c)) / (cw + conj(a)): a rigid rotation of the Riemann sphere.
    static Mobius special(Complex a_, Complex c_) {
        return Mobius(a_, -std::conj(c_), c_, std::conj(a_));
    }

    static Mobius scaling(Complex kappa) {
        if (std::abs(kappa) == 0.0) throw InvalidParamsError("mobius scaling: kappa = 0");
        return Mobius(kappa, 0.0, 0.0, 1.0);
    }

    Complex det() const { return a * d - b * c; }

    Complex operator()(Complex w) const {
        require_finite(w, "mobius eval");
        const Complex den = c * w + d;
        if (std::abs(den) < 1e-300)
            throw SingularPointError("mobius: pole at w = " + detail::complex_str(w));
        return (a * w + b) / den;
    }

    Complex derivative_at(Complex w) const {
        const Complex den = c * w + d;
        if (std::abs(den) < 1e-300)
            throw SingularPointError("mobius derivative: pole at w = " + detail::complex_str(w));
        return det() / (den * den);
    }

    Mobius inverse() const { return Mobius(d, -b, -c, a); }

    /// (*this) after `inner`: coefficients multiply as 2x2 matrices.
    Mobius compose_after(const Mobius& inner) const {
        return Mobius(a * inner.a + b * inner.c, a * inner.b + b * inner.d,
                      c * inner.a + d * inner.c, c * inner.b + d * inner.d);
    }

    bool has_finite_pole() const { return std::abs(c) > 0.0; }
    Complex pole() const {
        if (!has_finite_pole()) throw InvalidParamsError("mobius: no finite pole");
        return -d / c;
    }

    bool approx_equal(const Mobius& o, double tol = 1e-12) const {
        return std::abs(a - o.a) <= tol && std::abs(b - o.b) <= tol &&
               std::abs(c - o.c) <= tol && std::abs(d - o.d) <= tol;
    }

  private:
    void canonicalize() {
        const double n = std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
        Complex lead = a;
        if (std::abs(lead) == 0.0) lead = b;
        if (std::abs(lead) == 0.0) lead = c;
        if (std::abs(lead) == 0.0) lead = d;
        const Complex phase = std::conj(lead) / std::abs(lead);
        const Complex s = phase / n;
        a *= s;
        b *= s;
        c *= s;
        d *= s;
    }
};

/// An evaluable holomorphic expression with exact symbolic derivatives.
/// Immutable; nodes are shared. Singularities surface as SingularPointError
/// at evaluation time.
class HolomorphicFn {
    enum class Kind {
        constant,
        identity,
        power,       // f^n, integer n
        reciprocal,  // 1/f
        exp_fn,
        log_fn,  // principal branch
        scaled,  // s*f
        sum,
        product,
        quotient,
        compose,  // lhs(rhs)
        mobius
    };

    struct Node {
        Kind kind;
        Complex scalar{};  // constant / scale factor
        int ipow = 0;
        Mobius mob;
        std::shared_ptr<const Node> lhs, rhs;
    };

    std::shared_ptr<const Node> node_;

    explicit HolomorphicFn(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static HolomorphicFn make(Node n) {
        return HolomorphicFn(std::make_shared<const Node>(std::move(n)));
    }

    bool is_const() const { return node_->kind == Kind::constant; }
    bool is_identity() const { return node_->kind == Kind::identity; }
    Complex const_value() const { return node_->scalar; }

  public:
    HolomorphicFn() : HolomorphicFn(identity()) {}

    static HolomorphicFn constant(Complex z) {
        require_finite(z, "constant");
        Node n;
        n.kind = Kind::constant;
        n.scalar = z;
        return make(std::move(n));
    }

    static HolomorphicFn identity() {
        Node n;
        n.kind = Kind::identity;
        return make(std::move(n));
    }

    static HolomorphicFn power(HolomorphicFn f, int n) {
        if (n == 0) return constant(1.0);
        if (n == 1) return f;
        Node nd;
        nd.kind = Kind::power;
        nd.ipow = n;
        nd.lhs = f.node_;
        return make(std::move(nd));
    }

    static HolomorphicFn reciprocal(HolomorphicFn f) {
        if (f.is_const()) return constant(1.0 / f.const_value());
        Node n;
        n.kind = Kind::reciprocal;
        n.lhs = f.node_;
        return make(std::move(n));
    }

    static HolomorphicFn exp_of(HolomorphicFn f) {
        Node n;
        n.kind = Kind::exp_fn;
        n.lhs = f.node_;
        return make(std::move(n));
    }

    static HolomorphicFn log_of(HolomorphicFn f) {
        Node n;
        n.kind = Kind::log_fn;
        n.lhs = f.node_;
        return make(std::move(n));
    }

    static HolomorphicFn scaled(Complex s, HolomorphicFn f) {
        require_finite(s, "scale");
        if (s == Complex(1.0)) return f;
        if (s == Complex(0.0)) return constant(0.0);
        if (f.is_const()) return constant(s * f.const_value());
        if (f.node_->kind == Kind::scaled)
            return scaled(s * f.node_->scalar, HolomorphicFn(f.node_->lhs));
        Node n;
        n.kind = Kind::scaled;
        n.scalar = s;
        n.lhs = f.node_;
        return make(std::move(n));
    }

    static HolomorphicFn sum(HolomorphicFn f, HolomorphicFn g) {
        if (f.is_const() && g.is_const()) return constant(f.const_value() + g.const_value());
        if (f.is_const() && f.const_value() == Complex(0.0)) return g;
        if (g.is_const() && g.const_value() == Complex(0.0)) return f;
        Node n;
        n.kind = Kind::sum;
        n.lhs = f.node_;
        n.rhs = g.node_;
        return make(std::move(n));
    }

    static HolomorphicFn product(HolomorphicFn f, HolomorphicFn g) {
        if (f.is_const()) return scaled(f.const_value(), g);
        if (g.is_const()) return scaled(g.const_value(), f);
        Node n;
        n.kind = Kind::product;
        n.lhs = f.node_;
        n.rhs = g.node_;
        return make(std::move(n));
    }

    static HolomorphicFn quotient(HolomorphicFn f, HolomorphicFn g) {
        if (g.is_const()) return scaled(Complex(1.0) / g.const_value(), f);
        Node n;
        n.kind = Kind::quotient;
        n.lhs = f.node_;
        n.rhs = g.node_;
        return make(std::move(n));
    }

    static HolomorphicFn compose(HolomorphicFn outer, HolomorphicFn inner) {
        if (inner.is_identity()) return outer;
        if (outer.is_identity()) return inner;
        if (outer.is_const()) return outer;
        Node n;
        n.kind = Kind::compose;
        n.lhs = outer.node_;
        n.rhs = inner.node_;
        return make(std::move(n));
    }

    static HolomorphicFn mobius(const Mobius& m) {
        Node n;
        n.kind = Kind::mobius;
        n.mob = m;
        return make(std::move(n));
    }

    Complex operator()(Complex w) const {
        require_finite(w, "eval");
        return eval_node(*node_, w);
    }

    HolomorphicFn derivative() const { return derivative_node(*node_); }

    std::string to_string() const { return str_node(*node_); }

  private:
    static Complex eval_node(const Node& n, Complex w) {
        switch (n.kind) {
            case Kind::constant: return n.scalar;
            case Kind::identity: return w;
            case Kind::power: {
                const Complex f = eval_node(*n.lhs, w);
                if (n.ipow < 0 && std::abs(f) < 1e-300)
                    throw SingularPointError("power: zero base at w = " + detail::complex_str(w));
                return ipow(f, n.ipow);
            }
            case Kind::reciprocal: {
                const Complex f = eval_node(*n.lhs, w);
                if (std::abs(f) < 1e-300)
                    throw SingularPointError("reciprocal: zero at w = " + detail::complex_str(w));
                return 1.0 / f;
            }
            case Kind::exp_fn: return std::exp(eval_node(*n.lhs, w));
            case Kind::log_fn: {
                const Complex f = eval_node(*n.lhs, w);
                if (std::abs(f) < 1e-300)
                    throw SingularPointError("log: zero argument at w = " + detail::complex_str(w));
                return std::log(f);
            }
            case Kind::scaled: return n.scalar * eval_node(*n.lhs, w);
            case Kind::sum: return eval_node(*n.lhs, w) + eval_node(*n.rhs, w);
            case Kind::product: return eval_node(*n.lhs, w) * eval_node(*n.rhs, w);
            case Kind::quotient: {
                const Complex den = eval_node(*n.rhs, w);
                if (std::abs(den) < 1e-300)
                    throw SingularPointError("quotient: zero denominator at w = " +
                                             detail::complex_str(w));
                return eval_node(*n.lhs, w) / den;
            }
            case Kind::compose: return eval_node(*n.lhs, eval_node(*n.rhs, w));
            case Kind::mobius: return n.mob(w);
        }
        throw Error("eval: bad node");
    }

    static Complex ipow(Complex z, int n) {
        if (n < 0) return 1.0 / ipow(z, -n);
        Complex r = 1.0;
        Complex base = z;
        for (int e = n; e > 0; e >>= 1) {
            if (e & 1) r *= base;
            base *= base;
        }
        return r;
    }

    static HolomorphicFn derivative_node(const Node& n) {
        switch (n.kind) {
            case Kind::constant: return constant(0.0);
            case Kind::identity: return constant(1.0);
            case Kind::power: {
                HolomorphicFn f(n.lhs);
                return scaled(double(n.ipow), product(power(f, n.ipow - 1), f.derivative()));
            }
            case Kind::reciprocal: {
                HolomorphicFn f(n.lhs);
                return scaled(-1.0, quotient(f.derivative(), power(f, 2)));
            }
            case Kind::exp_fn: {
                HolomorphicFn f(n.lhs);
                return product(f.derivative(), exp_of(f));
            }
            case Kind::log_fn: {
                HolomorphicFn f(n.lhs);
                return quotient(f.derivative(), f);
            }
            case Kind::scaled: return scaled(n.scalar, derivative_node(*n.lhs));
            case Kind::sum: return sum(derivative_node(*n.lhs), derivative_node(*n.rhs));
            case Kind::product: {
                HolomorphicFn f(n.lhs), g(n.rhs);
                return sum(product(f.derivative(), g), product(f, g.derivative()));
            }
            case Kind::quotient: {
                HolomorphicFn f(n.lhs), g(n.rhs);
                return quotient(
                    sum(product(f.derivative(), g), scaled(-1.0, product(f, g.derivative()))),
                    power(g, 2));
            }
            case Kind::compose: {
                HolomorphicFn f(n.lhs), g(n.rhs);
                return product(compose(f.derivative(), g), g.derivative());
            }
            case Kind::mobius: {
                // h' = (ad-bc)/(cw+d)^2
                const Mobius& m = n.mob;
                HolomorphicFn den = sum(scaled(m.c, identity()), constant(m.d));
                return scaled(m.det(), reciprocal(power(den, 2)));
            }
        }
        throw Error("derivative: bad node");
    }

    static std::string str_node(const Node& n) {
        using detail::complex_str;
        switch (n.kind) {
            case Kind::constant: return "const(" + complex_str(n.scalar) + ")";
            case Kind::identity: return "id";
            case Kind::power:
                return "pow(" + str_node(*n.lhs) + "," + std::to_string(n.ipow) + ")";
            case Kind::reciprocal: return "recip(" + str_node(*n.lhs) + ")";
            case Kind::exp_fn: return "exp(" + str_node(*n.lhs) + ")";
            case Kind::log_fn: return "log(" + str_node(*n.lhs) + ")";
            case Kind::scaled:
                return "scale(" + complex_str(n.scalar) + "," + str_node(*n.lhs) + ")";
            case Kind::sum: return "sum(" + str_node(*n.lhs) + "," + str_node(*n.rhs) + ")";
            case Kind::product: return "prod(" + str_node(*n.lhs) + "," + str_node(*n.rhs) + ")";
            case Kind::quotient: return "quot(" + str_node(*n.lhs) + "," + str_node(*n.rhs) + ")";
            case Kind::compose:
                return "compose(" + str_node(*n.lhs) + "," + str_node(*n.rhs) + ")";
            case Kind::mobius:
                return "mobius(" + complex_str(n.mob.a) + "," + complex_str(n.mob.b) + "," +
                       complex_str(n.mob.c) + "," + complex_str(n.mob.d) + ")";
        }
        return "?";
    }
};

inline HolomorphicFn operator+(const HolomorphicFn& f, const HolomorphicFn& g) {
    return HolomorphicFn::sum(f, g);
}
inline HolomorphicFn operator*(const HolomorphicFn& f, const HolomorphicFn& g) {
    return HolomorphicFn::product(f, g);
}
inline HolomorphicFn operator*(Complex s, const HolomorphicFn& f) {
    return HolomorphicFn::scaled(s, f);
}
inline HolomorphicFn operator/(const HolomorphicFn& f, const HolomorphicFn& g) {
    return HolomorphicFn::quotient(f, g);
}

/// max(|h_{u,u}-h_{v,v}|, |h_{u,v}+h_{v,u}|) by central differences with the given step.
inline double cauchy_riemann_residual(const HolomorphicFn& f, Complex w, double step) {
    if (!(step > 0)) throw InvalidParamsError("cauchy_riemann_residual: step must be > 0");
    const Complex fu = (f(w + step) - f(w - step)) / (2.0 * step);
    const Complex fv = (f(w + Complex(0, step)) - f(w - Complex(0, step))) / (2.0 * step);
    return std::max(std::abs(fu.real() - fv.imag()), std::abs(fu.imag() + fv.real()));
}

/// Default finite-difference settings used throughout the checks.
constexpr double kFdTol = 1e-6;
inline double fd_step(Complex w) { return 1e-5 * std::max(1.0, std::abs(w)); }

}  // namespace minmodes
