#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace fc {

enum class Mode { fast, certified };

const char* to_string(Mode m);
Mode parse_mode(const std::string& s);

struct EmptyConstruction : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DivisionByIntervalContainingZero : std::domain_error {
    using std::domain_error::domain_error;
};
struct DomainViolation : std::domain_error {
    using std::domain_error::domain_error;
};
struct NonFiniteResult : std::overflow_error {
    using std::overflow_error::overflow_error;
};

namespace testhook {
// Fault injection: every directed rounding lands one ulp inward.
inline std::atomic<bool> narrow_rounding{false};
}  // namespace testhook

namespace detail {

template <class T>
struct fp_traits;

template <>
struct fp_traits<double> {
    static constexpr double split = 134217729.0;  // 2^27 + 1
};

template <>
struct fp_traits<long double> {
    static constexpr long double split = 4294967297.0L;  // 2^32 + 1
};

// Magnitudes for which Dekker products and residuals are exact.
template <class T>
inline bool safe_mag(T x) {
    using L = std::numeric_limits<T>;
    static const T lo = std::ldexp(T(1), L::min_exponent + 2 * L::digits + 8);
    static const T hi = std::ldexp(T(1), L::max_exponent - L::digits - 4);
    T a = std::fabs(x);
    return a == 0 || (a >= lo && a <= hi);
}

template <class T>
inline T next_up(T x) {
    return std::nextafter(x, std::numeric_limits<T>::infinity());
}
template <class T>
inline T next_dn(T x) {
    return std::nextafter(x, -std::numeric_limits<T>::infinity());
}

inline bool narrowed() { return testhook::narrow_rounding.load(std::memory_order_relaxed); }

// err carries the sign of (exact - s).
template <class T>
inline T settle_dn(T s, T err) {
    if (narrowed()) return next_up(s);
    return err < 0 ? next_dn(s) : s;
}
template <class T>
inline T settle_up(T s, T err) {
    if (narrowed()) return next_dn(s);
    return err > 0 ? next_up(s) : s;
}

template <class T>
inline void check_finite(T s) {
    if (!std::isfinite(s)) throw NonFiniteResult("interval endpoint overflow");
}

template <class T>
inline T two_sum_err(T a, T b, T s) {
    T bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

template <class T>
inline void split(T a, T& hi, T& lo) {
    T c = fp_traits<T>::split * a;
    hi = c - (c - a);
    lo = a - hi;
}

template <class T>
inline T two_prod_err(T a, T b, T p) {
    T ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl;
}

template <class T>
inline T add_dn(T a, T b) {
    T s = a + b;
    check_finite(s);
    return settle_dn(s, two_sum_err(a, b, s));
}
template <class T>
inline T add_up(T a, T b) {
    T s = a + b;
    check_finite(s);
    return settle_up(s, two_sum_err(a, b, s));
}

template <class T>
inline T mul_err(T a, T b, T p, bool& exact_path) {
    exact_path = safe_mag(a) && safe_mag(b) && safe_mag(p) && (p != 0 || a == 0 || b == 0);
    return exact_path ? two_prod_err(a, b, p) : T(0);
}

template <class T>
inline T mul_dn(T a, T b) {
    T p = a * b;
    check_finite(p);
    bool ok;
    T e = mul_err(a, b, p, ok);
    if (!ok) return narrowed() ? next_up(p) : next_dn(p);
    return settle_dn(p, e);
}
template <class T>
inline T mul_up(T a, T b) {
    T p = a * b;
    check_finite(p);
    bool ok;
    T e = mul_err(a, b, p, ok);
    if (!ok) return narrowed() ? next_dn(p) : next_up(p);
    return settle_up(p, e);
}

// sign of (a/b - q), or 2 when the residual is not exactly available
template <class T>
inline int div_dir(T a, T b, T q) {
    if (a == 0) return 0;
    if (!(safe_mag(a) && safe_mag(b) && safe_mag(q)) || q == 0) return 2;
    T e = two_prod_err(q, b, q * b);
    T r = (a - q * b) - e;
    if (r == 0) return 0;
    return ((r > 0) == (b > 0)) ? 1 : -1;
}

template <class T>
inline T div_dn(T a, T b) {
    T q = a / b;
    check_finite(q);
    int d = div_dir(a, b, q);
    if (narrowed()) return next_up(q);
    return (d < 0 || d == 2) ? next_dn(q) : q;
}
template <class T>
inline T div_up(T a, T b) {
    T q = a / b;
    check_finite(q);
    int d = div_dir(a, b, q);
    if (narrowed()) return next_dn(q);
    return (d > 0 || d == 2) ? next_up(q) : q;
}

template <class T>
inline int sqrt_dir(T x, T s) {
    if (x == 0) return 0;
    if (!(safe_mag(x) && safe_mag(s))) return 2;
    T e = two_prod_err(s, s, s * s);
    T r = (x - s * s) - e;
    return r == 0 ? 0 : (r > 0 ? 1 : -1);
}

template <class T>
inline T sqrt_dn(T x) {
    T s = std::sqrt(x);
    int d = sqrt_dir(x, s);
    if (narrowed()) return next_up(s);
    return (d < 0 || d == 2) ? std::max(T(0), next_dn(s)) : s;
}
template <class T>
inline T sqrt_up(T x) {
    T s = std::sqrt(x);
    int d = sqrt_dir(x, s);
    if (narrowed()) return next_dn(s);
    return (d > 0 || d == 2) ? next_up(s) : s;
}

template <class T>
inline T narrow_dn(long double v) {
    if constexpr (std::is_same_v<T, long double>) {
        return v;
    } else {
        T d = static_cast<T>(v);
        check_finite(d);
        if (static_cast<long double>(d) > v) d = next_dn(d);
        return d;
    }
}
template <class T>
inline T narrow_up(long double v) {
    if constexpr (std::is_same_v<T, long double>) {
        return v;
    } else {
        T d = static_cast<T>(v);
        check_finite(d);
        if (static_cast<long double>(d) < v) d = next_up(d);
        return d;
    }
}

}  // namespace detail

template <class T>
class basic_interval {
public:
    using value_type = T;

    constexpr basic_interval() = default;
    basic_interval(T x) : lo_(x), hi_(x) {  // NOLINT: points convert implicitly
        if (std::isnan(x)) throw EmptyConstruction("NaN endpoint");
    }
    basic_interval(T lo, T hi) : lo_(lo), hi_(hi) {
        if (std::isnan(lo) || std::isnan(hi) || lo > hi)
            throw EmptyConstruction("interval with lo > hi");
    }

    T lo() const { return lo_; }
    T hi() const { return hi_; }
    T mid() const { return lo_ / 2 + hi_ / 2; }
    T width() const { return detail::add_up(hi_, -lo_); }
    T mag() const { return std::max(std::fabs(lo_), std::fabs(hi_)); }
    T mig() const { return contains(T(0)) ? T(0) : std::min(std::fabs(lo_), std::fabs(hi_)); }
    bool is_point() const { return lo_ == hi_; }
    bool contains(T x) const { return lo_ <= x && x <= hi_; }
    bool contains(const basic_interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool subset_of(T a, T b) const { return a <= lo_ && hi_ <= b; }

private:
    T lo_{0};
    T hi_{0};
};

using Interval = basic_interval<double>;
using LInterval = basic_interval<long double>;

template <class T>
basic_interval<T> operator-(const basic_interval<T>& a) {
    return {-a.hi(), -a.lo()};
}

template <class T>
basic_interval<T> operator+(const basic_interval<T>& a, const basic_interval<T>& b) {
    return {detail::add_dn(a.lo(), b.lo()), detail::add_up(a.hi(), b.hi())};
}

template <class T>
basic_interval<T> operator-(const basic_interval<T>& a, const basic_interval<T>& b) {
    return {detail::add_dn(a.lo(), -b.hi()), detail::add_up(a.hi(), -b.lo())};
}

template <class T>
basic_interval<T> operator*(const basic_interval<T>& a, const basic_interval<T>& b) {
    using detail::mul_dn;
    using detail::mul_up;
    const T al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
    if (al >= 0) {
        if (bl >= 0) return {mul_dn(al, bl), mul_up(ah, bh)};
        if (bh <= 0) return {mul_dn(ah, bl), mul_up(al, bh)};
        return {mul_dn(ah, bl), mul_up(ah, bh)};
    }
    if (ah <= 0) {
        if (bl >= 0) return {mul_dn(al, bh), mul_up(ah, bl)};
        if (bh <= 0) return {mul_dn(ah, bh), mul_up(al, bl)};
        return {mul_dn(al, bh), mul_up(al, bl)};
    }
    if (bl >= 0) return {mul_dn(al, bh), mul_up(ah, bh)};
    if (bh <= 0) return {mul_dn(ah, bl), mul_up(al, bl)};
    return {std::min(mul_dn(al, bh), mul_dn(ah, bl)), std::max(mul_up(al, bl), mul_up(ah, bh))};
}

template <class T>
basic_interval<T> operator/(const basic_interval<T>& a, const basic_interval<T>& b) {
    if (b.contains(T(0))) throw DivisionByIntervalContainingZero("divisor interval contains 0");
    using detail::div_dn;
    using detail::div_up;
    const T al = a.lo(), ah = a.hi(), bl = b.lo(), bh = b.hi();
    if (bl > 0) {
        if (al >= 0) return {div_dn(al, bh), div_up(ah, bl)};
        if (ah <= 0) return {div_dn(al, bl), div_up(ah, bh)};
        return {div_dn(al, bl), div_up(ah, bl)};
    }
    if (al >= 0) return {div_dn(ah, bh), div_up(al, bl)};
    if (ah <= 0) return {div_dn(ah, bl), div_up(al, bh)};
    return {div_dn(ah, bh), div_up(al, bh)};
}

#define FC_MIXED_OP(OP)                                                              \
    template <class T>                                                               \
    basic_interval<T> operator OP(const basic_interval<T>& a, T b) {                 \
        return a OP basic_interval<T>(b);                                            \
    }                                                                                \
    template <class T>                                                               \
    basic_interval<T> operator OP(T a, const basic_interval<T>& b) {                 \
        return basic_interval<T>(a) OP b;                                            \
    }                                                                                \
    template <class T>                                                               \
    basic_interval<T>& operator OP##=(basic_interval<T>& a, const basic_interval<T>& b) { \
        return a = a OP b;                                                           \
    }
FC_MIXED_OP(+)
FC_MIXED_OP(-)
FC_MIXED_OP(*)
FC_MIXED_OP(/)
#undef FC_MIXED_OP

template <class T>
basic_interval<T> hull(const basic_interval<T>& a, const basic_interval<T>& b) {
    return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

template <class T>
basic_interval<T> intersect(const basic_interval<T>& a, const basic_interval<T>& b) {
    T l = std::max(a.lo(), b.lo()), h = std::min(a.hi(), b.hi());
    if (l > h) throw EmptyConstruction("empty intersection");
    return {l, h};
}

// Clamp into [a,b]; the enclosure is known to meet [a,b].
template <class T>
basic_interval<T> clamp(const basic_interval<T>& x, T a, T b) {
    return {std::clamp(x.lo(), a, b), std::clamp(x.hi(), a, b)};
}

template <class T>
basic_interval<T> sqr(const basic_interval<T>& x) {
    using detail::mul_dn;
    using detail::mul_up;
    if (x.lo() >= 0) return {mul_dn(x.lo(), x.lo()), mul_up(x.hi(), x.hi())};
    if (x.hi() <= 0) return {mul_dn(x.hi(), x.hi()), mul_up(x.lo(), x.lo())};
    T m = std::max(-x.lo(), x.hi());
    return {T(0), mul_up(m, m)};
}

template <class T>
basic_interval<T> neg_square(const basic_interval<T>& x) {
    return -sqr(x);
}

template <class T>
basic_interval<T> abs(const basic_interval<T>& x) {
    return {x.mig(), x.mag()};
}

template <class T>
basic_interval<T> sqrt(const basic_interval<T>& x) {
    if (x.lo() < 0) throw DomainViolation("sqrt of negative endpoint " + std::to_string(x.lo()));
    return {detail::sqrt_dn(x.lo()), detail::sqrt_up(x.hi())};
}

template <class T>
basic_interval<T> ldexp(const basic_interval<T>& x, int e) {
    // exact away from the subnormal range; widen otherwise
    T l = std::ldexp(x.lo(), e), h = std::ldexp(x.hi(), e);
    detail::check_finite(l);
    detail::check_finite(h);
    if (std::ldexp(l, -e) != x.lo()) l = detail::next_dn(l);
    if (std::ldexp(h, -e) != x.hi()) h = detail::next_up(h);
    return {l, h};
}

// Long double point kernels with rigorous remainder terms.
LInterval exp_point(long double x);
LInterval log_point(long double x);
LInterval normal_tail_point(long double x);

template <class T>
basic_interval<T> exp(const basic_interval<T>& x) {
    return {detail::narrow_dn<T>(exp_point(x.lo()).lo()),
            detail::narrow_up<T>(exp_point(x.hi()).hi())};
}

template <class T>
basic_interval<T> log(const basic_interval<T>& x) {
    if (!(x.lo() > 0))
        throw DomainViolation("log of non-positive endpoint " + std::to_string(x.lo()));
    return {detail::narrow_dn<T>(log_point(x.lo()).lo()),
            detail::narrow_up<T>(log_point(x.hi()).hi())};
}

// Standard normal upper tail P[Z >= x]; antitone, so endpoints swap.
template <class T>
basic_interval<T> normal_tail(const basic_interval<T>& x) {
    T l = detail::narrow_dn<T>(normal_tail_point(x.hi()).lo());
    T h = detail::narrow_up<T>(normal_tail_point(x.lo()).hi());
    return {std::max(T(0), l), std::min(T(1), h)};
}

Interval normal_tail(const Interval& x, Mode mode);

enum class ArithKind { add, sub, mul, div };
enum class ElemKind { exp, log, sqrt, neg_square };

Interval arith(const Interval& a, const Interval& b, ArithKind kind);
Interval elem(const Interval& a, ElemKind kind);

// Constants as enclosures.
const LInterval& pi_l();
const LInterval& ln2_l();

template <class T>
basic_interval<T> pi_i() {
    return {detail::narrow_dn<T>(pi_l().lo()), detail::narrow_up<T>(pi_l().hi())};
}
template <class T>
basic_interval<T> ln2_i() {
    return {detail::narrow_dn<T>(ln2_l().lo()), detail::narrow_up<T>(ln2_l().hi())};
}

// Enclosure of a decimal literal such as ".24841951".
Interval parse_decimal(const std::string& s);

// Round-trip decimal rendering of an endpoint.
std::string render(double x);

}  // namespace fc
