#include "fc/rint.hpp"

#include <array>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdio>
#include <cstdlib>
#include <regex>

namespace fc {

const char* to_string(Mode m) { return m == Mode::fast ? "fast" : "certified"; }

Mode parse_mode(const std::string& s) {
    if (s == "fast") return Mode::fast;
    if (s == "certified") return Mode::certified;
    throw std::invalid_argument("unknown mode: " + s);
}

namespace {

LInterval literal(const char* s) {
    long double v = std::strtold(s, nullptr);
    return {detail::next_dn(v), detail::next_up(v)};
}

LInterval recip(long n) { return LInterval(1.0L) / LInterval(static_cast<long double>(n)); }

}  // namespace

const LInterval& pi_l() {
    static const LInterval v = literal("3.14159265358979323846264338327950288419716939937510");
    return v;
}

const LInterval& ln2_l() {
    static const LInterval v = literal("0.69314718055994530941723212145817656807550013436026");
    return v;
}

namespace {

// Point evaluations below run in x87 extended precision (unit roundoff
// u = 2^-64). Horner on a polynomial with coefficients c_k lands within
// gamma_{2N+1} * sum|c_k||x|^k of the exact value. For exp on |r| <= 0.35
// that is about 101u relative (below 2^-57); for the atanh series about
// 38u (below 2^-58).
constexpr int exp_deg = 24;
constexpr int log_deg = 16;

const std::array<long double, exp_deg + 1>& exp_coef() {
    static const auto c = [] {
        std::array<long double, exp_deg + 1> t{};
        LInterval f(1.0L);
        for (int n = 0; n <= exp_deg; ++n) {
            if (n > 0) f = f / LInterval(static_cast<long double>(n));
            t[n] = f.mid();
        }
        return t;
    }();
    return c;
}

long double horner_exp(long double r) {
    const auto& c = exp_coef();
    long double p = c[exp_deg];
    for (int n = exp_deg - 1; n >= 0; --n) p = p * r + c[n];
    return p;
}

LInterval widen_rel(long double v, int bits) {
    long double d = std::ldexp(std::fabs(v), -bits);
    return {detail::next_dn(v - d), detail::next_up(v + d)};
}

}  // namespace

LInterval exp_point(long double x) {
    if (std::isnan(x)) throw DomainViolation("exp of NaN");
    if (x == 0) return {1.0L, 1.0L};
    if (x > 11356.0L) throw NonFiniteResult("exp overflow");
    if (x < -11355.0L) return {0.0L, std::numeric_limits<long double>::denorm_min()};

    long double k = std::nearbyint(x * 1.44269504088896340736L);
    LInterval r = LInterval(x) - LInterval(k) * ln2_l();
    if (r.mag() > 0.35L) throw DomainViolation("exp argument reduction failed");

    // |r| <= 0.35: sum |c_n| |r|^n <= e^0.35 < 1.42, e^r >= 0.70, and the
    // degree-24 remainder is below 1e-36.
    LInterval lo = widen_rel(horner_exp(r.lo()), 57);
    LInterval hi = widen_rel(horner_exp(r.hi()), 57);
    int e = static_cast<int>(k);
    return {ldexp(lo, e).lo(), ldexp(hi, e).hi()};
}

LInterval log_point(long double x) {
    if (!(x > 0) || !std::isfinite(x))
        throw DomainViolation("log of non-positive endpoint " + std::to_string(static_cast<double>(x)));
    if (x == 1) return {0.0L, 0.0L};

    int e;
    long double m = std::frexp(x, &e);
    if (m < 0.70710678118654752440L) {
        m *= 2;
        e -= 1;
    }
    // log m = 2 atanh z = 2 z sum_k z^(2k)/(2k+1), |z| <= 0.1716, z^2 <= 0.0295
    static const auto inv_odd = [] {
        std::array<long double, log_deg + 1> t{};
        for (int k = 0; k <= log_deg; ++k)
            t[k] = (LInterval(1.0L) / LInterval(2.0L * k + 1)).mid();
        return t;
    }();
    LInterval z = LInterval(m - 1.0L) / (LInterval(m) + 1.0L);
    auto series = [&](long double zz) {
        long double w = zz * zz, s = inv_odd[log_deg];
        for (int k = log_deg - 1; k >= 0; --k) s = s * w + inv_odd[k];
        // tail below 0.0295^17 < 1e-25 relative to s >= 1
        return widen_rel(2.0L * zz * s, 58);
    };
    LInterval lm = hull(series(z.lo()), series(z.hi()));
    if (e == 0) return lm;
    return LInterval(static_cast<long double>(e)) * ln2_l() + lm;
}

namespace {

const LInterval& inv_sqrt_2pi() {
    static const LInterval v = 1.0L / sqrt(2.0L * pi_l());
    return v;
}

LInterval density(const LInterval& x) { return exp(-sqr(x) * 0.5L) * inv_sqrt_2pi(); }

// 0 <= x <= 2: P[Z >= x] = 1/2 - phi(x) sum_n x^(2n+1)/(2n+1)!!
LInterval tail_series(long double x) {
    if (x == 0) return {0.5L, 0.5L};
    LInterval X(x), x2 = sqr(X);
    LInterval t = X, s = X;
    const long double rel = std::ldexp(1.0L, -72);
    for (int n = 1; n < 400; ++n) {
        t = t * x2 * recip(2 * n + 1);
        s = s + t;
        LInterval r = x2 * recip(2 * n + 3);
        if (r.hi() < 0.5L && t.hi() < s.lo() * rel) {
            // remaining terms shrink at least geometrically with ratio r
            LInterval tail = t * r / (1.0L - r);
            s = s + LInterval(0.0L, tail.hi());
            return 0.5L - density(X) * s;
        }
    }
    throw DomainViolation("normal tail series did not converge");
}

// Mills ratio continued fraction 1/(x+1/(x+2/(x+3/(x+...)))); consecutive
// convergents bracket the limit.
LInterval mills_convergent(long double x, int n) {
    LInterval X(x), v(x);
    for (int k = n; k >= 1; --k) v = X + static_cast<long double>(k) / v;
    return 1.0L / v;
}

LInterval tail_cf(long double x) {
    const long double rel = std::ldexp(1.0L, -62);
    for (int n = 16;; n *= 2) {
        LInterval a = mills_convergent(x, n), b = mills_convergent(x, n + 1);
        LInterval r = hull(a, b);
        // stop once the convergent gap is below the rounding noise
        long double gap = r.width() - a.width() - b.width();
        if (gap <= r.lo() * rel || n >= (1 << 14)) return density(LInterval(x)) * r;
    }
}

LInterval tail_positive(long double x) {
    if (x <= 2) return tail_series(x);
    if (x <= 150) return tail_cf(x);
    static const LInterval cap = tail_cf(150.0L);
    return {0.0L, cap.hi()};
}

}  // namespace

LInterval normal_tail_point(long double x) {
    if (!std::isfinite(x)) throw DomainViolation("normal_tail of non-finite input");
    if (x < 0) return 1.0L - tail_positive(-x);
    return tail_positive(x);
}

Interval normal_tail(const Interval& x, Mode mode) {
    if (mode == Mode::fast) return Interval(0.5 * std::erfc(x.mid() / std::sqrt(2.0)));
    return normal_tail<double>(x);
}

Interval arith(const Interval& a, const Interval& b, ArithKind kind) {
    switch (kind) {
        case ArithKind::add: return a + b;
        case ArithKind::sub: return a - b;
        case ArithKind::mul: return a * b;
        case ArithKind::div: return a / b;
    }
    throw std::invalid_argument("arith kind");
}

Interval elem(const Interval& a, ElemKind kind) {
    switch (kind) {
        case ElemKind::exp: return exp(a);
        case ElemKind::log: return log(a);
        case ElemKind::sqrt: return sqrt(a);
        case ElemKind::neg_square: return neg_square(a);
    }
    throw std::invalid_argument("elem kind");
}

Interval parse_decimal(const std::string& s) {
    static const std::regex re(R"(\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(s, m, re) || (m[2].length() == 0 && m[3].length() == 0))
        throw std::invalid_argument("not a decimal literal: " + s);
    using boost::multiprecision::cpp_int;
    std::string digits = m[2].str() + m[3].str();
    // cpp_int reads a leading 0 as an octal prefix
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
    long exp10 = -static_cast<long>(m[3].length()) + (m[4].matched ? std::stol(m[4].str()) : 0);
    cpp_int num(digits.empty() ? std::string("0") : digits);
    cpp_int den = 1;
    if (exp10 >= 0)
        num *= boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(exp10));
    else
        den = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(-exp10));
    if (m[1].str() == "-") num = -num;

    double d = std::strtod(s.c_str(), nullptr);
    if (!std::isfinite(d)) throw std::invalid_argument("decimal out of range: " + s);
    // compare d against num/den exactly: d = M * 2^E
    auto cmp = [&](double v) {
        int e;
        double fr = std::frexp(v, &e);
        cpp_int M(static_cast<long long>(std::ldexp(fr, 53)));
        e -= 53;
        cpp_int lhs = M * den, rhs = num;
        if (e >= 0) lhs <<= e; else rhs <<= -e;
        return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
    };
    int c = cmp(d);
    if (c == 0) return Interval(d);
    return c < 0 ? Interval(d, detail::next_up(d)) : Interval(detail::next_dn(d), d);
}

std::string render(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace fc
