#pragma once

#include <cstdint>
#include <utility>

#include "fc/rint.hpp"

namespace fc {

struct SingularCorrelation : std::domain_error {
    using std::domain_error::domain_error;
};
struct BranchMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// T1, T2 jointly normal with variance 1/2 and correlation rho = 2 beta - 1.
// f(beta, alpha) = P[T1 >= gamma + alpha, T2 >= gamma + alpha].
struct OrthantParams {
    Interval gamma;
    Interval beta;
    Interval alpha;

    Interval c() const { return gamma + alpha; }
    Interval rho() const { return 2.0 * beta - 1.0; }
};

struct GParams {
    Interval gamma;
    Interval beta;
    Interval a1, a2, a3, a4;
};

enum class DerivOrder { first, combo };
enum class Side { upper, lower };
enum class Branch { plain, scaled };

constexpr double default_quad_target = 1e-12;

// O(beta, s) = P[T1 >= s, T2 >= s]. Certified mode encloses the value over
// the whole box using monotonicity (isotone in beta, antitone in s).
Interval orthant(const Interval& beta, const Interval& s, Mode mode,
                 double quad_target = default_quad_target);

// P[T1 >= t1, T2 >= t2] with correlation rho, variance 1/2 each.
Interval rectangle(const Interval& rho, const Interval& t1, const Interval& t2, Mode mode,
                   double quad_target = default_quad_target);

Interval f_eval(const OrthantParams& p, Mode mode);
Interval f_dalpha(const OrthantParams& p, Mode mode);
Interval f_dbeta(const OrthantParams& p, DerivOrder order);
Interval f_dalpha2(const OrthantParams& p);
Interval f_dbeta_dalpha(const OrthantParams& p);

// d/ds O(beta, s) = -(2/sqrt(pi)) e^{-s^2} Qbar(s k), k = sqrt(2(1-beta)/beta)
Interval orthant_ds(const Interval& beta, const Interval& s, Mode mode);

std::pair<Interval, Interval> g_thresholds(const GParams& p);
Interval g_eval(const GParams& p, Mode mode);

// p.beta is the segment [eta1, eta2]. plain: f(eta2, alpha) / f(eta1, alpha).
// scaled (requires gamma + alpha <= 0): thresholds multiplied by
// sqrt(eta2/eta1) for the upper side and sqrt(eta1/eta2) for the lower side.
Interval envelope(const OrthantParams& p, Side side, Branch branch, Mode mode);

struct MonteCarloEstimate {
    double mean;
    double stderr_;
};

// Plain sampling of (Z1, Z2) with T1,2 = sqrt(beta/2) Z1 +- sqrt((1-beta)/2) Z2.
MonteCarloEstimate rectangle_monte_carlo(double beta, double t1, double t2, std::size_t samples,
                                         std::uint64_t seed);

}  // namespace fc
