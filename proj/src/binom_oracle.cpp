#include "fc/binom_oracle.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fc/gaussfn.hpp"
#include "fc/graphsim.hpp"

namespace fc {

namespace {

using boost::multiprecision::cpp_int;

void check_tilt(long n, double a) {
    if (!(n > 0)) throw OutOfRange("n must be positive");
    double p = 0.5 + a / (2 * std::sqrt(double(n)));
    if (!(p > 0 && p < 1)) throw OutOfRange("tilted probability outside (0,1)");
}

dec50 tilt(long n, double a) { return dec50(1) / 2 + dec50(a) / (2 * sqrt(dec50(n))); }

// Bin(m, p) pmf by the ratio recurrence, started at the mode to avoid underflow.
template <class R>
std::vector<R> binomial_pmf(long m, const R& p) {
    std::vector<R> out(m + 1);
    if (m == 0) {
        out[0] = 1;
        return out;
    }
    R q = 1 - p, r = p / q;
    long mode = std::min<long>(m, std::max<long>(0, static_cast<long>(std::floor((m + 1) * static_cast<double>(p)))));
    out[mode] = 1;
    for (long k = mode + 1; k <= m; ++k) out[k] = out[k - 1] * r * R(m - k + 1) / R(k);
    for (long k = mode - 1; k >= 0; --k) out[k] = out[k + 1] / r * R(k + 1) / R(m - k);
    R total = 0;
    for (const auto& v : out) total += v;
    for (auto& v : out) v /= total;
    return out;
}

cpp_int choose(long n, long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    cpp_int c = 1;
    for (long i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace

big_rational exact_middle_ratio(long n, long t) {
    if (n < 0 || n % 2 != 0) throw OutOfRange("n must be a nonnegative even integer");
    if (std::labs(t) > n / 2) throw OutOfRange("|t| must be at most n/2");
    long h = n / 2, u = std::labs(t);
    big_rational r = 1;
    for (long i = 1; i <= u; ++i) r *= big_rational(h - i + 1, h + i);
    return r;
}

std::vector<dec50> diff_pmf_support(const BinDiffSpec& s) {
    if (s.ell < 0 || s.ell > s.n) throw OutOfRange("ell outside [0, n]");
    check_tilt(s.n, s.a1);
    check_tilt(s.n, s.a2);
    auto y = binomial_pmf<dec50>(s.n, tilt(s.n, s.a2));
    auto x = binomial_pmf<dec50>(s.n - s.ell, tilt(s.n, s.a1));
    long m = s.n - s.ell;
    std::vector<dec50> out(s.n + m + 1, dec50(0));
    for (long i = 0; i <= s.n; ++i)
        for (long j = 0; j <= m; ++j) out[i - j + m] += y[i] * x[j];
    return out;
}

dec50 diff_pmf_exact(const BinDiffSpec& s) {
    if (s.ell < 0 || s.ell > s.n) throw OutOfRange("ell outside [0, n]");
    check_tilt(s.n, s.a1);
    check_tilt(s.n, s.a2);
    long m = s.n - s.ell;
    auto y = binomial_pmf<dec50>(s.n, tilt(s.n, s.a2));
    auto x = binomial_pmf<dec50>(m, tilt(s.n, s.a1));
    dec50 sum = 0;
    for (long j = 0; j <= m; ++j) {
        long i = j + s.t;
        if (i >= 0 && i <= s.n) sum += y[i] * x[j];
    }
    return sum;
}

std::optional<big_rational> diff_pmf_dyadic(const BinDiffSpec& s) {
    if (s.a1 != 0 || s.a2 != 0) return std::nullopt;
    if (s.ell < 0 || s.ell > s.n) throw OutOfRange("ell outside [0, n]");
    long m = s.n - s.ell;
    cpp_int num = 0;
    for (long j = 0; j <= m; ++j) num += choose(s.n, j + s.t) * choose(m, j);
    return big_rational(num, cpp_int(1) << (s.n + m));
}

double diff_pmf_leading(const BinDiffSpec& s) {
    double n = double(s.n);
    double z = (s.a2 - s.a1) / 2 + (s.ell / 2.0 - s.t) / std::sqrt(n);
    return std::exp(-z * z) / std::sqrt(M_PI * n);
}

TailCheck first_moment_tail_check(long n, double a1, double a2, long k) {
    if (n < 2) throw OutOfRange("n must be at least 2");
    check_tilt(n, a1);
    check_tilt(n, a2);
    auto x = binomial_pmf<dec50>(n - 1, tilt(n, a1));
    auto y = binomial_pmf<dec50>(n, tilt(n, a2));
    // cy[j] = P[Y <= j]
    std::vector<dec50> cy(n + 1);
    dec50 acc = 0;
    for (long j = 0; j <= n; ++j) cy[j] = (acc += y[j]);
    dec50 tail = 0;
    for (long i = 0; i <= n - 1; ++i) {
        long lim = i - k;  // Y <= i - k
        if (lim < 0) continue;
        tail += x[i] * (lim >= n ? dec50(1) : cy[lim]);
    }
    dec50 z = dec50(k) * sqrt(dec50(2)) / sqrt(dec50(n)) + (dec50(a2) - dec50(a1)) / sqrt(dec50(2));
    dec50 g = boost::math::erfc(z / sqrt(dec50(2))) / 2;
    dec50 e = tail - g;
    TailCheck out;
    out.exact = static_cast<double>(tail);
    out.gaussian = static_cast<double>(g);
    out.signed_err = static_cast<double>(e);
    out.err = std::fabs(out.signed_err);
    return out;
}

namespace {

// pmf of Bin(m1, p1) - Bin(m2, p2), index t + m2
std::vector<long double> difference_pmf(long m1, long double p1, long m2, long double p2) {
    auto u = binomial_pmf<long double>(m1, p1);
    auto v = binomial_pmf<long double>(m2, p2);
    std::vector<long double> out(m1 + m2 + 1, 0.0L);
    for (long i = 0; i <= m1; ++i) {
        if (u[i] == 0) continue;
        for (long j = 0; j <= m2; ++j) out[i - j + m2] += u[i] * v[j];
    }
    return out;
}

long double tilt_ld(long n, double a) { return 0.5L + a / (2 * std::sqrt(static_cast<long double>(n))); }

}  // namespace

JointCheck second_moment_joint_check(long n, long beta_num, long beta_den, const std::array<double, 4>& a,
                                     long Gamma) {
    if (n < 2 || n > joint_n_max) throw OutOfRange("n outside [2, 4096]");
    if (beta_den <= 0 || beta_num <= 0 || beta_num >= beta_den) throw InfeasibleBeta("beta must lie in (0,1)");
    if ((n * beta_num) % beta_den != 0) throw InfeasibleBeta("beta n is not an integer");
    long k = n * beta_num / beta_den;
    if (k < 1 || k >= n) throw InfeasibleBeta("beta n outside [1, n-1]");
    for (double x : a) check_tilt(n, x);

    auto t1 = difference_pmf(k - 1, tilt_ld(n, a[0]), k, tilt_ld(n, a[2]));          // offset k
    auto t2 = difference_pmf(n - k, tilt_ld(n, a[1]), n - k, tilt_ld(n, a[3]));      // offset n - k
    long o1 = k, o2 = n - k;
    // prefix sums of T2 for the window Gamma - t1 <= t2 <= t1 - Gamma
    std::vector<long double> c2(t2.size() + 1, 0.0L);
    for (std::size_t i = 0; i < t2.size(); ++i) c2[i + 1] = c2[i] + t2[i];
    auto window = [&](long lo, long hi) -> long double {
        lo = std::max(lo, -o2);
        hi = std::min(hi, o2);
        if (lo > hi) return 0.0L;
        return c2[hi + o2 + 1] - c2[lo + o2];
    };
    long double total = 0;
    for (long i = 0; i < static_cast<long>(t1.size()); ++i) {
        long v = i - o1;
        total += t1[i] * window(Gamma - v, v - Gamma);
    }

    GParams gp;
    gp.gamma = Interval(double(Gamma)) / sqrt(Interval(double(n)));
    gp.beta = Interval(double(beta_num)) / Interval(double(beta_den));
    gp.a1 = Interval(a[0]);
    gp.a2 = Interval(a[1]);
    gp.a3 = Interval(a[2]);
    gp.a4 = Interval(a[3]);
    double g = g_eval(gp, Mode::certified).mid();
    JointCheck out;
    out.exact = static_cast<double>(total);
    out.g_value = g;
    out.err = std::fabs(out.exact - g);
    return out;
}

std::string rates_csv(const std::vector<RateRow>& rows) {
    std::ostringstream os;
    os << "n,a1,a2,k,exact,approx,err\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%ld,%.17g,%.17g,%.17g\n", r.n, r.a1, r.a2, r.k, r.exact,
                      r.approx, r.err);
        os << buf;
    }
    return os.str();
}

long rate_threshold(long n, long m) {
    long s = static_cast<long>(std::floor(std::sqrt(double(n))));
    long p = m * s;
    // floor division
    return p >= 0 ? p / 10 : -((-p + 9) / 10);
}

bool RateSet::within(double lo, double hi) const {
    for (double r : ratios)
        if (!(r >= lo && r <= hi)) return false;
    return true;
}

std::vector<RateSet> rate_study(int sets, std::uint64_t seed) {
    SplitMix64 rng(seed);
    auto unit = [&] { return double(rng.below(2001)) / 1000.0 - 1.0; };
    std::vector<RateSet> out;
    for (int i = 0; i < sets; ++i) {
        RateSet s;
        s.a1 = unit();
        s.a2 = unit();
        s.m = long(rng.below(21)) - 10;
        const long ns[3] = {100, 400, 1600};
        for (int j = 0; j < 3; ++j) {
            long k = rate_threshold(ns[j], s.m);
            auto t = first_moment_tail_check(ns[j], s.a1, s.a2, k);
            s.rows[j] = {ns[j], s.a1, s.a2, k, t.exact, t.gaussian, t.err};
        }
        for (int j = 0; j < 2; ++j) s.ratios[j] = s.rows[j].err / s.rows[j + 1].err;
        out.push_back(s);
    }
    return out;
}

}  // namespace fc
