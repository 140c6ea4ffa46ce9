#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace fc {

using big_rational = boost::multiprecision::cpp_rational;
using dec50 = boost::multiprecision::cpp_dec_float_50;

struct OutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};
struct InfeasibleBeta : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// C(n, n/2 + t) / C(n, n/2), n even
big_rational exact_middle_ratio(long n, long t);

// P[Bin(n, 1/2 + a2/(2 sqrt n)) - Bin(n - ell, 1/2 + a1/(2 sqrt n)) = t]
struct BinDiffSpec {
    long n = 0;
    long ell = 0;
    double a1 = 0, a2 = 0;
    long t = 0;
    long k_threshold = 0;
};

dec50 diff_pmf_exact(const BinDiffSpec& s);
// Exact value when both tilts are zero.
std::optional<big_rational> diff_pmf_dyadic(const BinDiffSpec& s);
// The full distribution, index i holding t = i - (n - ell).
std::vector<dec50> diff_pmf_support(const BinDiffSpec& s);
// (1/sqrt(pi n)) exp(-((a2-a1)/2 + (ell/2 - t)/sqrt n)^2)
double diff_pmf_leading(const BinDiffSpec& s);

struct TailCheck {
    double exact;     // P[Bin(n-1, p(a1)) - Bin(n, p(a2)) >= k]
    double gaussian;  // Qbar(k sqrt2 / sqrt n + (a2 - a1)/sqrt2)
    double err;       // |exact - gaussian|
    double signed_err;
};

TailCheck first_moment_tail_check(long n, double a1, double a2, long k);

struct JointCheck {
    double exact;
    double g_value;
    double err;
};

inline constexpr long joint_n_max = 4096;

// X1 ~ Bin(k-1, p(a1)), X2 ~ Bin(n-k, p(a2)), X3 ~ Bin(k, p(a3)), X4 ~ Bin(n-k, p(a4)), k = beta n;
// exact P[T1 + T2 >= Gamma, T1 - T2 >= Gamma] with T1 = X1 - X3, T2 = X2 - X4.
JointCheck second_moment_joint_check(long n, long beta_num, long beta_den, const std::array<double, 4>& a,
                                     long Gamma);

struct RateRow {
    long n;
    double a1, a2;
    long k;
    double exact, approx, err;
};

std::string rates_csv(const std::vector<RateRow>& rows);

// k used by the rate study for an integer offset m in [-10, 10]
long rate_threshold(long n, long m);

struct RateSet {
    double a1, a2;
    long m;
    std::array<RateRow, 3> rows;  // n = 100, 400, 1600
    std::array<double, 2> ratios; // err(n) / err(4n)
    bool within(double lo, double hi) const;
};

// a1, a2 uniform on [-1, 1] (three decimals), m uniform on [-10, 10], drawn from SplitMix64(seed)
std::vector<RateSet> rate_study(int sets, std::uint64_t seed);

}  // namespace fc
