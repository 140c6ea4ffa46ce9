#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "fc/gaussfn.hpp"
#include "fc/manifest.hpp"

namespace fc {

struct LogOfNonpositive : std::domain_error {
    using std::domain_error::domain_error;
};
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonpositiveM : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct CaseMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct F2Point {
    Interval beta, alpha1, alpha2, gamma;
};

// F1(alpha) = log 2 - alpha^2 + log Qbar(sqrt2 (gamma + alpha))
Interval F1_eval(const Interval& gamma, const Interval& alpha, Mode mode);
Interval F1_prime(const Interval& gamma, const Interval& alpha, Mode mode);

// 2log2 - 2b log b - 2(1-b)log(1-b) - 2a1^2 - 2a2^2 + 2b log f(b,a1) + 2(1-b) log f(1-b,a2)
Interval F2_eval(const F2Point& p, Mode mode);

struct FixedPoint {
    double alpha;
    double residual;  // |F1'(alpha)|, certified upper bound
    int iterations;
    bool flagged;     // residual above 100 tol
};

// alpha <- -exp(-c^2) / (2 sqrt(pi) Qbar(sqrt2 c)), c = gamma + alpha
FixedPoint fixed_point_alpha(double gamma, double alpha0, double tol = 1e-13, int max_iter = 1000);

struct SupBoundInput {
    double value_at_z;
    std::vector<double> grad;
    double concavity_M;
};

// value + |grad|^2 / (2M), rounded up
double concave_sup_bound(const SupBoundInput& in);

inline constexpr double inf = std::numeric_limits<double>::infinity();

struct RegionSup {
    double bound;
    bool clipped;  // unconstrained maximizer of the model lies outside [L, U]
};

// sup over [L,U] of A with A'' <= -M, from enclosures of A(z) and A'(z)
RegionSup region_sup(const Interval& value, const Interval& slope, double z, double M, double L,
                     double U);

// A(a) = -2 a^2 + weight * log O(beta, scale * (gamma + a))
struct EnvelopeTerm {
    double weight;
    double beta;
    Interval scale;
};

struct TermSup {
    double z;
    Interval value;  // A(z)
    Interval slope;  // A'(z)
    RegionSup sup;
};

double term_root(const EnvelopeTerm& t, double gamma);
TermSup term_at(const EnvelopeTerm& t, double gamma, double z, double quad_target,
                Mode mode = Mode::certified);
RegionSup term_region(const TermSup& at, double L, double U);

inline constexpr double envelope_M = 4.0;
inline constexpr double sweep_quad_target = 1e-10;

struct Witness {
    double z1, z2;
    Interval G2;
    double grad_sum;  // |dG2/da1| + |dG2/da2| at z, upper bound
};

struct SegmentBound {
    double bound;  // certified upper bound on the sup of F2 over the case region
    Interval entropy;
    int corrections = 0;
    std::optional<Witness> witness;
};

// Local box of the final claim: alpha_i in [-.449, -.441].
inline constexpr double local_lo = -0.449, local_hi = -0.441;

// Fast mode swaps in point kernels; its result is an estimate, not a bound.
SegmentBound segment_envelope_sup(const SegmentPlan& seg, const Interval& gamma,
                                  double quad_target = sweep_quad_target, Mode mode = Mode::certified);

struct F2Hessian {
    Interval bb, ba1, ba2, a1a1, a2a2, a1a2;
};

F2Hessian F2_hessian(const Interval& beta, const Interval& alpha1, const Interval& alpha2,
                     const Interval& gamma);

// x log x over an interval inside [0, 1]
Interval xlogx(const Interval& x);

}  // namespace fc
