#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <random>

#include "fc/gaussfn.hpp"
#include "fc/quad.hpp"

using namespace fc;
using dec50 = boost::multiprecision::cpp_dec_float_50;

namespace {

bool contains_decimal(const Interval& v, const char* lit) {
    dec50 x(lit);
    return dec50(v.lo()) <= x && x <= dec50(v.hi());
}

double ulp(double x) { return std::nextafter(std::fabs(x), INFINITY) - std::fabs(x); }

Integrand gaussian_bump() {
    Integrand f;
    f.eval = [](const Interval& x) { return exp(neg_square(x)); };
    f.d2 = [](const Interval& x) { return (4.0 * sqr(x) - 2.0) * exp(neg_square(x)); };
    return f;
}

// A exp(-b (x - c)^2) + p x^2
struct Smooth {
    double A, b, c, p;
    double operator()(double x) const { return A * std::exp(-b * (x - c) * (x - c)) + p * x * x; }
    Integrand integrand(double reach, bool second) const {
        Integrand f;
        Smooth s = *this;
        f.eval = [s](const Interval& x) {
            Interval d = x - s.c;
            return Interval(s.A) * exp(Interval(-s.b) * sqr(d)) + Interval(s.p) * sqr(x);
        };
        if (second)
            f.d2 = [s](const Interval& x) {
                Interval d2 = sqr(x - s.c), b(s.b);
                return Interval(s.A) * (4.0 * sqr(b) * d2 - 2.0 * b) * exp(-(b * d2)) + Interval(2 * s.p);
            };
        else
            f.deriv_bound = std::fabs(A) * std::sqrt(2 * b) + 2 * std::fabs(p) * reach;
        return f;
    }
};

}  // namespace

TEST(Finite, ConstantIsExact) {
    Integrand one;
    one.eval = [](const Interval&) { return Interval(1.0); };
    one.deriv_bound = 0.0;
    for (double target : {1e-3, 1e-12}) {
        auto e = integrate_finite(one, 0, 2, target);
        EXPECT_TRUE(e.value.contains(2.0));
        EXPECT_LE(e.value.width(), 4 * ulp(2.0));
    }
}

TEST(Finite, ErfIntegralMatchesOracle) {
    auto e = integrate_finite(gaussian_bump(), 0, 1, 1e-10);
    EXPECT_TRUE(contains_decimal(e.value, "0.7468241328124270253994674"));
    EXPECT_LE(e.value.width(), 1e-10);
    EXPECT_TRUE(e.width_reached);
}

TEST(Finite, EmptyRangeEnclosesZero) {
    // theta-form integral at rho = 0 has an empty range; the rectangle is the product of tails
    auto e = integrate_finite(gaussian_bump(), 0, 0, 1e-12);
    EXPECT_TRUE(e.value.contains(0.0));
    EXPECT_EQ(e.value.width(), 0.0);
    double s = 0.2484195 - 0.4452;
    Interval t(s);
    auto r = rectangle(Interval(0.0), t, t, Mode::certified);
    auto q = normal_tail(sqrt(Interval(2.0)) * t);
    EXPECT_TRUE(r.contains(sqr(q).mid()));
    EXPECT_LE(r.width(), 1e-14);
}

TEST(Finite, CapReportsIncompleteWidth) {
    auto e = integrate_finite(gaussian_bump(), 0, 1, 1e-15, 4);
    EXPECT_FALSE(e.width_reached);
    EXPECT_TRUE(contains_decimal(e.value, "0.7468241328124270253994674"));
}

TEST(Finite, DomainErrorsPropagate) {
    Integrand bad;
    bad.eval = [](const Interval& x) -> Interval {
        if (x.lo() < 0.5) throw IntegrandDomainError("outside");
        return x;
    };
    bad.deriv_bound = 1.0;
    EXPECT_THROW(integrate_finite(bad, 0, 1, 1e-6), IntegrandDomainError);
}

TEST(SemiInfinite, GaussianHalfLine) {
    auto e = integrate_semiinfinite(gaussian_bump(), 0, 1.0, 1e-11);
    EXPECT_TRUE(contains_decimal(e.value, "0.8862269254527580136490837"));
    EXPECT_LE(e.value.width(), 1e-10);
}

TEST(SemiInfinite, ClosedAntiderivative) {
    Integrand f;
    f.eval = [](const Interval& x) { return x * exp(neg_square(x)); };
    f.d2 = [](const Interval& x) { return (4.0 * sqr(x) * x - 6.0 * x) * exp(neg_square(x)); };
    auto e = integrate_semiinfinite(f, 0, 0.5, 1e-11);
    EXPECT_TRUE(e.value.contains(0.5));
    EXPECT_LE(e.value.width(), 1e-10);
}

TEST(SemiInfinite, DerivativeTailMatchesClosedForm) {
    // d/ds O(1/2, s) = -(2/sqrt pi) e^{-s^2} int_{s sqrt2}^inf phi
    Integrand phi;
    Interval inv_sqrt_2pi = 1.0 / sqrt(2.0 * pi_i<double>());
    phi.eval = [inv_sqrt_2pi](const Interval& x) { return inv_sqrt_2pi * exp(-0.5 * sqr(x)); };
    phi.d2 = [inv_sqrt_2pi](const Interval& x) { return inv_sqrt_2pi * (sqr(x) - 1.0) * exp(-0.5 * sqr(x)); };
    for (double s : {-0.3, -0.19676, 0.0, 0.4}) {
        Interval S(s);
        auto tail = integrate_semiinfinite(phi, (sqrt(Interval(2.0)) * S).lo(), 0.5, 1e-12);
        Interval viaquad = -2.0 / sqrt(pi_i<double>()) * exp(neg_square(S)) * tail.value;
        Interval closed = orthant_ds(Interval(0.5), S, Mode::certified);
        EXPECT_LE(std::fabs(viaquad.mid() - closed.mid()), viaquad.width() + closed.width() + 1e-15) << s;
    }
}

TEST(Reference, RandomSmoothIntegrandsInsideEnclosure) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 20; ++i) {
        Smooth s{0.5 + 2 * U(rng), 0.5 + 4 * U(rng), -1 + 2 * U(rng), -1 + 2 * U(rng)};
        double a = -2 + U(rng), b = a + 0.5 + 2 * U(rng);
        double reach = std::max(std::fabs(a), std::fabs(b));
        bool second = i % 2 == 0;
        auto e = integrate_finite(s.integrand(reach, second), a, b, second ? 1e-8 : 1e-4);
        EXPECT_TRUE(e.width_reached) << i;
        double ref = gauss_legendre(s, a, b, 64);
        EXPECT_TRUE(e.value.contains(ref)) << i << " [" << e.value.lo() << ", " << e.value.hi() << "] ref " << ref;
    }
}

TEST(Nesting, HalvingTargetStaysInside) {
    auto f = gaussian_bump();
    Interval prev = integrate_finite(f, -0.5, 1.5, 1e-4).value;
    for (double t = 5e-5; t > 1e-11; t /= 2) {
        Interval cur = integrate_finite(f, -0.5, 1.5, t).value;
        double slack = 4 * ulp(prev.hi());
        EXPECT_GE(cur.lo(), prev.lo() - slack) << t;
        EXPECT_LE(cur.hi(), prev.hi() + slack) << t;
        prev = cur;
    }
}

TEST(Reference, GaussLegendreIsAccurate) {
    double v = gauss_legendre([](double x) { return std::exp(-x * x); }, 0, 1, 8);
    EXPECT_NEAR(v, 0.74682413281242702540, 1e-15);
}
