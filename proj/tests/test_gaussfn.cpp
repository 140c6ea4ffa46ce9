#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fc/gaussfn.hpp"

using namespace fc;

namespace {

const Interval G = parse_decimal(".2484195");

OrthantParams at(double beta, double alpha) { return {G, Interval(beta), Interval(alpha)}; }

double fmid(double beta, double alpha, Mode m = Mode::certified) { return f_eval(at(beta, alpha), m).mid(); }

// Hull of an enclosure over an n x n split of the box.
template <class Fn>
Interval over_box(Interval beta, Interval alpha, int n, Fn fn) {
    std::optional<Interval> h;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double b0 = beta.lo() + (beta.hi() - beta.lo()) * i / n, b1 = beta.lo() + (beta.hi() - beta.lo()) * (i + 1) / n;
            double a0 = alpha.lo() + (alpha.hi() - alpha.lo()) * j / n,
                   a1 = alpha.lo() + (alpha.hi() - alpha.lo()) * (j + 1) / n;
            Interval v = fn(OrthantParams{G, Interval(b0, b1), Interval(a0, a1)});
            h = h ? hull(*h, v) : v;
        }
    return *h;
}

}  // namespace

TEST(Orthant, FrozenOracleValues) {
    // 20-digit mpmath quadrature of the theta form (tests/oracles/frozen_values.py)
    struct Case {
        double beta, alpha, value;
    } cases[] = {{0.3, -0.4, 0.28032191796749876293},
                 {0.7, -0.2, 0.28868638462121084187},
                 {0.05, -0.6, 0.38179109458333715385}};
    for (auto c : cases) {
        Interval v = f_eval(at(c.beta, c.alpha), Mode::certified);
        EXPECT_TRUE(v.contains(c.value)) << c.beta << " " << c.alpha;
        EXPECT_LE(v.width(), 1e-11);
        EXPECT_NEAR(f_eval(at(c.beta, c.alpha), Mode::fast).mid(), c.value, 1e-13);
    }
}

TEST(Orthant, IndependenceAtHalf) {
    for (double a : {-0.6, -0.45, -0.1, 0.2}) {
        Interval c = G + Interval(a);
        Interval q = normal_tail(sqrt(Interval(2.0)) * c);
        Interval v = f_eval(at(0.5, a), Mode::certified);
        EXPECT_LE(std::fabs(v.mid() - sqr(q).mid()), v.width() + sqr(q).width() + 1e-16);
    }
}

TEST(Orthant, CoincidentEventsAtOne) {
    for (double a : {-0.6, -0.1, 0.3}) {
        Interval q = normal_tail(sqrt(Interval(2.0)) * (G + Interval(a)));
        Interval v = f_eval(at(1.0, a), Mode::certified);
        EXPECT_TRUE(v.contains(q.mid()));
    }
}

TEST(Orthant, SingularCorrelationNearEndpoints) {
    EXPECT_THROW(f_eval(at(1e-14, -0.3), Mode::certified), SingularCorrelation);
    EXPECT_THROW(f_eval(at(1 - 1e-14, -0.3), Mode::certified), SingularCorrelation);
    EXPECT_NO_THROW(f_eval(at(0.0, -0.3), Mode::certified));
}

TEST(Orthant, ProbabilityRange) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> B(0.001, 0.999), A(-3, 3);
    for (int i = 0; i < 200; ++i) {
        Interval v = f_eval(at(B(rng), A(rng)), Mode::certified);
        EXPECT_TRUE(v.subset_of(0.0, 1.0));
        GParams g{G, Interval(B(rng)), Interval(A(rng)), Interval(A(rng)), Interval(A(rng)), Interval(A(rng))};
        EXPECT_TRUE(g_eval(g, Mode::certified).subset_of(0.0, 1.0));
    }
}

TEST(Orthant, Monotonicity) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> B(0.01, 0.99), A(-1.5, 1.0), Neg(-0.2484, 0.0);
    for (int i = 0; i < 1000; ++i) {
        double b = B(rng), a1 = A(rng), a2 = A(rng);
        if (a1 > a2) std::swap(a1, a2);
        Interval f1 = f_eval(at(b, a1), Mode::certified), f2 = f_eval(at(b, a2), Mode::certified);
        EXPECT_GE(f1.hi(), f2.lo()) << b << " " << a1 << " " << a2;
    }
    for (int i = 0; i < 200; ++i) {
        double a = Neg(rng), b1 = B(rng), b2 = B(rng);
        if (b1 > b2) std::swap(b1, b2);
        EXPECT_LE(f_eval(at(b1, a), Mode::certified).lo(), f_eval(at(b2, a), Mode::certified).hi());
    }
}

TEST(Orthant, LogConcaveInAlpha) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> B(0.02, 0.98);
    for (int i = 0; i < 20; ++i) {
        double b = B(rng);
        double prev2 = std::log(fmid(b, -0.8)), prev1 = std::log(fmid(b, -0.799));
        for (int k = 2; k <= 60; ++k) {
            double cur = std::log(fmid(b, -0.8 + 0.001 * k));
            EXPECT_LE(cur - 2 * prev1 + prev2, 1e-9) << b << " " << k;
            prev2 = prev1;
            prev1 = cur;
        }
    }
}

TEST(Derivatives, AlphaAtZeroThreshold) {
    // gamma + a = 0 at beta = 1/2: -(2/sqrt pi) * 1/2
    OrthantParams p{G, Interval(0.5), -G};
    Interval d = f_dalpha(p, Mode::certified);
    EXPECT_TRUE(d.contains(-1.0 / std::sqrt(M_PI)) || std::fabs(d.mid() + 1.0 / std::sqrt(M_PI)) < 1e-15);
    EXPECT_LE(d.width(), 1e-13);
}

TEST(Derivatives, AlphaFiniteDifference) {
    double h = 1e-5;
    double fd = (fmid(0.3, -0.4 + h) - fmid(0.3, -0.4 - h)) / (2 * h);
    EXPECT_NEAR(f_dalpha(at(0.3, -0.4), Mode::certified).mid(), fd, 1e-8);
}

TEST(Derivatives, AlphaNegativeOverBox) {
    OrthantParams box{G, Interval(0.495, 0.505), Interval(-0.45, -0.44)};
    EXPECT_LT(f_dalpha(box, Mode::certified).hi(), 0.0);
}

TEST(Derivatives, DomainAtEndpoints) {
    EXPECT_THROW(f_dalpha(at(0.0, -0.3), Mode::certified), DomainViolation);
    EXPECT_THROW(f_dalpha(at(1.0, -0.3), Mode::certified), DomainViolation);
}

TEST(Derivatives, BetaClosedFormAtHalf) {
    for (double a : {-0.45, -0.2, 0.1}) {
        Interval c = G + Interval(a);
        Interval expect = exp(-2.0 * sqr(c)) / pi_i<double>();
        Interval got = f_dbeta(at(0.5, a), DerivOrder::first);
        EXPECT_LE(std::fabs(got.mid() - expect.mid()), got.width() + expect.width() + 1e-16);
    }
}

TEST(Derivatives, AgreeWithFiniteDifferences) {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> B(0.05, 0.95), A(-0.9, 0.3);
    const double h = 1e-5;
    for (int i = 0; i < 100; ++i) {
        double b = B(rng), a = A(rng);
        auto fast = [](double bb, double aa) { return fmid(bb, aa, Mode::fast); };
        double fa = (fast(b, a + h) - fast(b, a - h)) / (2 * h);
        double fb = (fast(b + h, a) - fast(b - h, a)) / (2 * h);
        Interval da = f_dalpha(at(b, a), Mode::certified);
        Interval db = f_dbeta(at(b, a), DerivOrder::first);
        EXPECT_LE(std::fabs(da.mid() - fa), std::max(1e-7, 10 * da.width())) << b << " " << a;
        EXPECT_LE(std::fabs(db.mid() - fb), std::max(1e-7, 10 * db.width())) << b << " " << a;
    }
}

TEST(BoxClaims, ProbabilityEnclosure) {
    Interval v = over_box(Interval(0.495, 0.505), Interval(-0.45, -0.44), 4,
                          [](const OrthantParams& p) { return f_eval(p, Mode::certified); });
    EXPECT_TRUE(v.subset_of(0.36544, 0.37761)) << v.lo() << " " << v.hi();
    // 10-digit oracle range over the box
    EXPECT_LE(v.lo(), 0.3667033091);
    EXPECT_GE(v.hi(), 0.3762662806);
}

TEST(BoxClaims, FirstDerivativeEnclosure) {
    Interval v = over_box(Interval(0.495, 0.505), Interval(-0.45, -0.44), 4,
                          [](const OrthantParams& p) { return f_dbeta(p, DerivOrder::first); });
    EXPECT_TRUE(v.subset_of(0.2780, 0.3110)) << v.lo() << " " << v.hi();
    EXPECT_LE(v.lo(), 0.2932381556);
    EXPECT_GE(v.hi(), 0.2960108217);
}

TEST(BoxClaims, SecondDerivativeCombination) {
    Interval v = over_box(Interval(0.495, 0.505), Interval(-0.45, -0.44), 4,
                          [](const OrthantParams& p) { return f_dbeta(p, DerivOrder::combo); });
    EXPECT_LE(v.hi(), 0.630);
    EXPECT_GE(v.hi(), 0.6165255354);
}

TEST(GFunction, ReducesToOrthant) {
    for (double b : {0.2, 0.5, 0.8}) {
        GParams zero{G, Interval(b), Interval(0.0), Interval(0.0), Interval(0.0), Interval(0.0)};
        Interval g0 = g_eval(zero, Mode::certified), f0 = f_eval(at(b, 0.0), Mode::certified);
        EXPECT_LE(std::fabs(g0.mid() - f0.mid()), g0.width() + f0.width() + 1e-15);
        double a1 = -0.3;
        GParams one{G, Interval(b), Interval(a1), Interval(0.0), Interval(0.0), Interval(0.0)};
        Interval g1 = g_eval(one, Mode::certified), f1 = f_eval(at(b, -a1 * b / 2), Mode::certified);
        EXPECT_LE(std::fabs(g1.mid() - f1.mid()), g1.width() + f1.width() + 1e-12) << b;
    }
}

TEST(GFunction, MonteCarloAgreement) {
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> B(0.1, 0.9), A(-0.8, 0.8);
    for (int i = 0; i < 3; ++i) {
        GParams g{G, Interval(B(rng)), Interval(A(rng)), Interval(A(rng)), Interval(A(rng)), Interval(A(rng))};
        auto [t1, t2] = g_thresholds(g);
        auto mc = rectangle_monte_carlo(g.beta.mid(), t1.mid(), t2.mid(), 2000000, 77 + i);
        double v = g_eval(g, Mode::certified).mid();
        EXPECT_LE(std::fabs(mc.mean - v), 4 * mc.stderr_) << i;
    }
}

TEST(FastMode, AgreesWithMonteCarlo) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> B(0.05, 0.95), A(-0.8, 0.4);
    for (int i = 0; i < 10; ++i) {
        double b = B(rng), a = A(rng);
        double s = G.mid() + a;
        auto mc = rectangle_monte_carlo(b, s, s, 1000000, 100 + i);
        EXPECT_LE(std::fabs(mc.mean - fmid(b, a, Mode::fast)), 4 * mc.stderr_) << b << " " << a;
    }
}

TEST(Envelope, DegenerateSegmentCollapses) {
    for (double a : {-0.2, -0.1, 0.0}) {
        OrthantParams p{G, Interval(0.37), Interval(a)};
        Interval f = f_eval(p, Mode::certified);
        Interval up = envelope(p, Side::upper, Branch::plain, Mode::certified);
        Interval lo = envelope(p, Side::lower, Branch::plain, Mode::certified);
        EXPECT_LE(std::fabs(up.mid() - f.mid()), up.width() + f.width() + 1e-15);
        EXPECT_LE(std::fabs(lo.mid() - f.mid()), lo.width() + f.width() + 1e-15);
    }
}

TEST(Envelope, UpperDominatesGrid) {
    OrthantParams seg{G, Interval(0.3, 0.4), Interval(-0.2)};
    double up = envelope(seg, Side::upper, Branch::plain, Mode::certified).hi();
    double down = envelope(seg, Side::lower, Branch::plain, Mode::certified).lo();
    for (int i = 0; i < 50; ++i) {
        double b = 0.3 + 0.1 * i / 49;
        EXPECT_LE(fmid(b, -0.2), up);
        EXPECT_GE(fmid(b, -0.2), down);
    }
}

TEST(Envelope, ScaledBranchBelowThreshold) {
    OrthantParams seg{G, Interval(0.495, 0.505), Interval(-0.45)};
    double up = envelope(seg, Side::upper, Branch::scaled, Mode::certified).hi();
    EXPECT_GE(up, fmid(0.495, -0.45));
    EXPECT_GE(up, fmid(0.505, -0.45));
    for (int i = 0; i <= 20; ++i) EXPECT_GE(up, fmid(0.495 + 0.0005 * i, -0.45));
}

TEST(Envelope, BranchMismatch) {
    OrthantParams seg{G, Interval(0.3, 0.4), Interval(-0.1)};
    EXPECT_THROW(envelope(seg, Side::upper, Branch::scaled, Mode::certified), BranchMismatch);
}

TEST(Thresholds, DerivativeInThreshold) {
    double h = 1e-5;
    for (double b : {0.2, 0.5, 0.9})
        for (double s : {-0.3, 0.1}) {
            double fd = (orthant(Interval(b), Interval(s + h), Mode::fast).mid() -
                         orthant(Interval(b), Interval(s - h), Mode::fast).mid()) /
                        (2 * h);
            EXPECT_NEAR(orthant_ds(Interval(b), Interval(s), Mode::certified).mid(), fd, 1e-8);
        }
}
