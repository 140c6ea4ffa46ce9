#include "fc/gaussfn.hpp"

#include <cmath>
#include <random>

#include "fc/quad.hpp"

namespace fc {

namespace {

constexpr double singular_gap = 1e-12;

const Interval& sqrt2() {
    static const Interval v = sqrt(Interval(2.0));
    return v;
}
const Interval& inv_2pi() {
    static const Interval v = 1.0 / (2.0 * pi_i<double>());
    return v;
}
const Interval& two_over_sqrt_pi() {
    static const Interval v = 2.0 / sqrt(pi_i<double>());
    return v;
}
const Interval& inv_sqrt_2pi() {
    static const Interval v = 1.0 / sqrt(2.0 * pi_i<double>());
    return v;
}

Interval unit(const Interval& x) { return intersect(x, Interval(0.0, 1.0)); }

// ---- fast (non-rigorous) kernels -------------------------------------------

double qbar(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// theta form: int_0^{asin rho} exp(-(h^2 - 2hk sin t + k^2) / (2 cos^2 t)) dt
double rectangle_fast(double rho, double t1, double t2) {
    double h = std::sqrt(2.0) * t1, k = std::sqrt(2.0) * t2;
    double base = qbar(h) * qbar(k);
    if (rho == 0) return base;
    double top = std::asin(std::clamp(rho, -1.0, 1.0));
    auto integrand = [&](double t) {
        double s = std::sin(t), c2 = std::cos(t) * std::cos(t);
        if (c2 <= 0) return 0.0;
        return std::exp(-(h * h - 2 * h * k * s + k * k) / (2 * c2));
    };
    double I = gauss_legendre(integrand, 0.0, top, 16, 20);
    return std::clamp(base + I / (2 * M_PI), 0.0, 1.0);
}

double orthant_fast(double beta, double s) {
    if (beta >= 1) return qbar(std::sqrt(2.0) * s);
    if (beta <= 0) return std::max(0.0, 2 * qbar(std::sqrt(2.0) * s) - 1);
    return rectangle_fast(2 * beta - 1, s, s);
}

// ---- certified point kernels -----------------------------------------------

// Integrand of the one-dimensional representation and its second derivative.
// Equal thresholds: g(x) = D^{-1/2} exp(-a/(1+x)), a = h^2, D = 1 - x^2.
Integrand equal_integrand(const Interval& a) {
    Integrand f;
    f.eval = [a](const Interval& x) {
        Interval D = (1.0 - x) * (1.0 + x);
        return exp(-(a / (1.0 + x))) / sqrt(D);
    };
    f.d2 = [a](const Interval& x) {
        Interval xp = 1.0 + x, D = (1.0 - x) * xp;
        Interval g = exp(-(a / xp)) / sqrt(D);
        Interval u1 = x / D + a / sqr(xp);
        Interval u2 = (1.0 + sqr(x)) / sqr(D) - 2.0 * a / (sqr(xp) * xp);
        return g * (u2 + sqr(u1));
    };
    return f;
}

// General thresholds: g(x) = D^{-1/2} exp(-Q/(2D)), Q = h^2 - 2 x h k + k^2.
Integrand general_integrand(const Interval& h, const Interval& k) {
    Interval h2 = sqr(h), k2 = sqr(k), hk = h * k;
    Integrand f;
    f.eval = [=](const Interval& x) {
        Interval D = (1.0 - x) * (1.0 + x);
        Interval Q = h2 - 2.0 * x * hk + k2;
        return exp(-(Q / (2.0 * D))) / sqrt(D);
    };
    f.d2 = [=](const Interval& x) {
        Interval D = (1.0 - x) * (1.0 + x), D2 = sqr(D);
        Interval Q = h2 - 2.0 * x * hk + k2;
        Interval g = exp(-(Q / (2.0 * D))) / sqrt(D);
        Interval w1 = (x + hk) / D - x * Q / D2;
        Interval w2 = (1.0 + sqr(x) + 4.0 * hk * x - Q) / D2 - 4.0 * sqr(x) * Q / (D2 * D);
        return g * (w2 + sqr(w1));
    };
    return f;
}

// int_0^rho g for rho in the interval r; g >= 0.
Interval signed_integral(const Integrand& g, const Interval& r, double target) {
    double r0 = r.lo();
    Interval base(0.0);
    if (r0 > 0) {
        base = integrate_finite(g, 0.0, r0, target).value;
    } else if (r0 < 0) {
        base = -integrate_finite(g, r0, 0.0, target).value;
    }
    if (r.is_point()) return base;
    Interval sliver = Interval(r.hi()) - Interval(r0);
    return base + Interval(0.0, (sliver * g.eval(r)).hi());
}

// Near x = +-1 substitute x = +-(1 - t^2); with v = 2 - t^2 the integrand
// becomes 2 v^{-1/2} exp(-a/v) (upper end) or 2 v^{-1/2} exp(-a/t^2) (lower end).
Integrand upper_end_integrand(const Interval& a) {
    Integrand f;
    f.eval = [a](const Interval& t) {
        Interval v = 2.0 - sqr(t);
        return 2.0 * exp(-(a / v)) / sqrt(v);
    };
    f.d2 = [a](const Interval& t) {
        Interval t2 = sqr(t), v = 2.0 - t2, v2 = sqr(v);
        Interval phi = 2.0 * exp(-(a / v)) / sqrt(v);
        Interval p1 = t / v - 2.0 * a * t / v2;
        Interval p2 = (v + 2.0 * t2) / v2 - 2.0 * a * (v + 4.0 * t2) / (v2 * v);
        return phi * (p2 + sqr(p1));
    };
    return f;
}

Integrand lower_end_integrand(const Interval& a) {
    Integrand f;
    f.eval = [a](const Interval& t) {
        Interval v = 2.0 - sqr(t);
        return 2.0 * exp(-(a / sqr(t))) / sqrt(v);
    };
    f.d2 = [a](const Interval& t) {
        Interval t2 = sqr(t), v = 2.0 - t2, v2 = sqr(v);
        Interval psi = 2.0 * exp(-(a / t2)) / sqrt(v);
        Interval q1 = t / v + 2.0 * a / (t2 * t);
        Interval q2 = (v + 2.0 * t2) / v2 - 6.0 * a / sqr(t2);
        return psi * (q2 + sqr(q1));
    };
    return f;
}

// int over t in [T0, T1] with interval endpoints, integrand >= 0
Interval nonneg_between(const Integrand& g, const Interval& T0, const Interval& T1, double target) {
    Interval core = integrate_finite(g, T0.hi(), T1.lo(), target).value;
    Interval slop = (T0.hi() - T0) * g.eval(T0) + (T1 - T1.lo()) * g.eval(T1);
    return core + Interval(0.0, slop.hi());
}

constexpr double switch_point = 0.5;

// int_0^rho D^{-1/2} exp(-a/(1+x)) dx for rho in r
Interval equal_integral(const Interval& a, const Interval& r, double target) {
    if (r.mag() <= switch_point) return signed_integral(equal_integrand(a), r, target);
    const Interval T1 = sqrt(Interval(1.0 - switch_point));
    if (r.lo() >= switch_point) {
        Interval head = integrate_finite(equal_integrand(a), 0.0, switch_point, target / 2).value;
        return head + nonneg_between(upper_end_integrand(a), sqrt(1.0 - r), T1, target / 2);
    }
    if (r.hi() <= -switch_point) {
        Interval head = integrate_finite(equal_integrand(a), -switch_point, 0.0, target / 2).value;
        return -(head + nonneg_between(lower_end_integrand(a), sqrt(1.0 + r), T1, target / 2));
    }
    return signed_integral(equal_integrand(a), r, target);
}

void check_rho(const Interval& r) {
    if (r.lo() < -1.0 + singular_gap || r.hi() > 1.0 - singular_gap)
        throw SingularCorrelation("correlation within 1e-12 of +-1");
}

Interval rho_of(double beta) { return 2.0 * Interval(beta) - 1.0; }

// O at a single beta over a narrow s enclosure
Interval orthant_point(double beta, const Interval& S, double target) {
    Interval hs = sqrt2() * S;
    if (beta == 1.0) return unit(normal_tail(hs));
    if (beta == 0.0) {
        Interval v = 2.0 * normal_tail(hs) - 1.0;
        return {std::max(0.0, v.lo()), std::max(0.0, v.hi())};
    }
    if (!(beta > 0 && beta < 1)) throw DomainViolation("beta outside [0,1]");
    Interval r = rho_of(beta);
    check_rho(r);
    Interval q = normal_tail(hs);
    Interval base = sqr(q);
    if (r.lo() == 0 && r.hi() == 0) return unit(base);
    Interval a = 2.0 * sqr(S);
    return unit(base + equal_integral(a, r, target) * inv_2pi());
}

Interval rectangle_point(const Interval& r, double t1, double t2, double target) {
    check_rho(r);
    Interval h = sqrt2() * Interval(t1), k = sqrt2() * Interval(t2);
    Interval base = normal_tail(h) * normal_tail(k);
    if (r.lo() == 0 && r.hi() == 0) return unit(base);
    if (t1 == t2) return unit(base + equal_integral(sqr(h), r, target) * inv_2pi());
    return unit(base + signed_integral(general_integrand(h, k), r, target) * inv_2pi());
}

Interval point_of(double v) { return Interval(v); }

}  // namespace

Interval orthant(const Interval& beta, const Interval& s, Mode mode, double quad_target) {
    if (beta.lo() < 0 || beta.hi() > 1) throw DomainViolation("beta outside [0,1]");
    if (mode == Mode::fast) return point_of(orthant_fast(beta.mid(), s.mid()));
    if (beta.is_point() && s.width() <= 0x1p-50 * (1 + s.mag()))
        return orthant_point(beta.lo(), s, quad_target);
    Interval lo = orthant_point(beta.lo(), Interval(s.hi()), quad_target);
    Interval hi = orthant_point(beta.hi(), Interval(s.lo()), quad_target);
    return {lo.lo(), hi.hi()};
}

Interval rectangle(const Interval& rho, const Interval& t1, const Interval& t2, Mode mode,
                   double quad_target) {
    if (mode == Mode::fast) return point_of(rectangle_fast(rho.mid(), t1.mid(), t2.mid()));
    Interval lo = rectangle_point(Interval(rho.lo()), t1.hi(), t2.hi(), quad_target);
    Interval hi = rectangle_point(Interval(rho.hi()), t1.lo(), t2.lo(), quad_target);
    return {lo.lo(), hi.hi()};
}

Interval f_eval(const OrthantParams& p, Mode mode) { return orthant(p.beta, p.c(), mode); }

Interval orthant_ds(const Interval& beta, const Interval& s, Mode mode) {
    if (!(beta.lo() > 0 && beta.hi() < 1)) throw DomainViolation("d/dalpha needs beta in (0,1)");
    if (mode == Mode::fast) {
        double b = beta.mid(), x = s.mid(), k = std::sqrt(2 * (1 - b) / b);
        return point_of(-(2 / std::sqrt(M_PI)) * std::exp(-x * x) * qbar(x * k));
    }
    Interval k = sqrt(2.0 * (1.0 - beta) / beta);
    Interval v = -two_over_sqrt_pi() * exp(-sqr(s)) * normal_tail(s * k);
    return {v.lo(), std::min(v.hi(), 0.0)};
}

Interval f_dalpha(const OrthantParams& p, Mode mode) { return orthant_ds(p.beta, p.c(), mode); }

namespace {

struct RhoParts {
    Interval rho, D, fb;
};

RhoParts dbeta_parts(const OrthantParams& p) {
    Interval r = p.rho();
    check_rho(r);
    Interval D = (1.0 - r) * (1.0 + r);
    Interval a = 2.0 * sqr(p.c());
    Interval fb = exp(-(a / (1.0 + r))) / (pi_i<double>() * sqrt(D));
    return {r, D, fb};
}

}  // namespace

Interval f_dbeta(const OrthantParams& p, DerivOrder order) {
    if (!(p.beta.lo() > 0 && p.beta.hi() < 1)) throw DomainViolation("d/dbeta needs beta in (0,1)");
    RhoParts q = dbeta_parts(p);
    if (order == DerivOrder::first) return {std::max(q.fb.lo(), 0.0), q.fb.hi()};
    Interval a = 2.0 * sqr(p.c());
    Interval u1 = q.rho / q.D + a / sqr(1.0 + q.rho);
    return q.fb * (2.0 * p.beta * u1 + 2.0);
}

Interval f_dbeta_dalpha(const OrthantParams& p) {
    if (!(p.beta.lo() > 0 && p.beta.hi() < 1)) throw DomainViolation("d/dbeta needs beta in (0,1)");
    RhoParts q = dbeta_parts(p);
    return q.fb * (-4.0 * p.c() / (1.0 + q.rho));
}

Interval f_dalpha2(const OrthantParams& p) {
    if (!(p.beta.lo() > 0 && p.beta.hi() < 1)) throw DomainViolation("d/dalpha needs beta in (0,1)");
    Interval c = p.c();
    Interval k = sqrt(2.0 * (1.0 - p.beta) / p.beta);
    Interval ck = c * k;
    Interval phi = exp(-sqr(ck) * 0.5) * inv_sqrt_2pi();
    return two_over_sqrt_pi() * exp(-sqr(c)) * (2.0 * c * normal_tail(ck) + k * phi);
}

std::pair<Interval, Interval> g_thresholds(const GParams& p) {
    Interval u = (p.a3 - p.a1) * p.beta * 0.5;
    Interval v = (p.a4 - p.a2) * (1.0 - p.beta) * 0.5;
    return {p.gamma + (u + v), p.gamma + (u - v)};
}

Interval g_eval(const GParams& p, Mode mode) {
    if (!(p.beta.lo() > 0 && p.beta.hi() < 1)) throw DomainViolation("g needs beta in (0,1)");
    auto [t1, t2] = g_thresholds(p);
    return rectangle(2.0 * p.beta - 1.0, t1, t2, mode);
}

Interval envelope(const OrthantParams& p, Side side, Branch branch, Mode mode) {
    double e1 = p.beta.lo(), e2 = p.beta.hi();
    if (!(e1 > 0 && e2 <= 1)) throw DomainViolation("envelope needs [eta1,eta2] inside (0,1]");
    Interval c = p.c();
    double at = side == Side::upper ? e2 : e1;
    if (branch == Branch::plain) {
        if (c.hi() < 0) throw BranchMismatch("plain envelope requested with alpha < -gamma");
        return orthant(Interval(at), c, mode);
    }
    if (c.hi() > 0) throw BranchMismatch("scaled envelope requested with alpha > -gamma");
    Interval ratio = side == Side::upper ? Interval(e2) / Interval(e1) : Interval(e1) / Interval(e2);
    return orthant(Interval(at), sqrt(ratio) * c, mode);
}

MonteCarloEstimate rectangle_monte_carlo(double beta, double t1, double t2, std::size_t samples,
                                         std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z;
    double sa = std::sqrt(beta / 2), sb = std::sqrt((1 - beta) / 2);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        double z1 = z(rng), z2 = z(rng);
        double x = sa * z1, y = sb * z2;
        hits += (x + y >= t1 && x - y >= t2);
    }
    double m = double(hits) / samples;
    return {m, std::sqrt(m * (1 - m) / samples)};
}

}  // namespace fc
