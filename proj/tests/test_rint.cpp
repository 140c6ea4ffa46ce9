#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>

#include "fc/rint.hpp"
#include "fc/selftest.hpp"

using namespace fc;
using boost::multiprecision::cpp_rational;
using dec50 = boost::multiprecision::cpp_dec_float_50;

namespace {

double ulp(double x) { return std::nextafter(std::fabs(x), INFINITY) - std::fabs(x); }

bool contains_rational(const Interval& v, const cpp_rational& x) {
    return cpp_rational(v.lo()) <= x && x <= cpp_rational(v.hi());
}

// Oracle constants from a 25-digit mpmath evaluation (tests/oracles/frozen_values.py).
const char* phibar1 = "0.1586552539314570514147675";
const char* phibar2 = "0.02275013194817920720028264";
const char* phibar5 = "0.0000002866515718791939116737523";
const char* one_minus_phibar8 = "0.9999999999999993779039426";

bool contains_decimal(const Interval& v, const char* lit) {
    dec50 x(lit);
    return dec50(v.lo()) <= x && x <= dec50(v.hi());
}

struct FaultGuard {
    FaultGuard() { testhook::narrow_rounding = true; }
    ~FaultGuard() { testhook::narrow_rounding = false; }
};

}  // namespace

TEST(Interval, RejectsInvertedEndpoints) {
    EXPECT_THROW(Interval(2.0, 1.0), EmptyConstruction);
    EXPECT_THROW(Interval(NAN), EmptyConstruction);
    EXPECT_NO_THROW(Interval(1.0, 1.0));
}

TEST(Arith, IntegerEndpointsAreExact) {
    auto r = arith(Interval(1, 2), Interval(3, 4), ArithKind::add);
    EXPECT_EQ(r.lo(), 4.0);
    EXPECT_EQ(r.hi(), 6.0);
}

TEST(Arith, SymmetricProduct) {
    auto r = arith(Interval(-1, 1), Interval(-1, 1), ArithKind::mul);
    EXPECT_EQ(r.lo(), -1.0);
    EXPECT_EQ(r.hi(), 1.0);
}

TEST(Arith, OneThirdIsEnclosedWithinTwoUlp) {
    auto r = arith(Interval(1.0), Interval(3.0), ArithKind::div);
    EXPECT_TRUE(contains_rational(r, cpp_rational(1, 3)));
    EXPECT_LE(r.hi() - r.lo(), 2 * ulp(1.0 / 3));
    EXPECT_LT(r.lo(), r.hi());
}

TEST(Arith, DivisionByZeroIntervalThrows) {
    EXPECT_THROW(arith(Interval(1.0), Interval(-1, 1), ArithKind::div), DivisionByIntervalContainingZero);
}

TEST(Arith, SubtractionIsOutwardRounded) {
    auto r = arith(Interval(1.0), Interval(1e-30), ArithKind::sub);
    EXPECT_TRUE(contains_rational(r, cpp_rational(1) - cpp_rational(1e-30)));
    EXPECT_LT(r.lo(), 1.0);
}

TEST(Elem, ExpOfZero) {
    auto r = elem(Interval(0.0), ElemKind::exp);
    EXPECT_TRUE(r.contains(1.0));
    EXPECT_LE(r.width(), 2 * ulp(1.0));
}

TEST(Elem, LogOfOneToE) {
    Interval e = exp(Interval(1.0));
    auto r = elem(Interval(1.0, e.hi()), ElemKind::log);
    EXPECT_TRUE(r.contains(0.0));
    EXPECT_TRUE(r.contains(1.0));
    EXPECT_LE(r.hi() - 1.0, 1e-15);
}

TEST(Elem, NegSquare) {
    auto r = elem(Interval(-2, 1), ElemKind::neg_square);
    EXPECT_EQ(r.lo(), -4.0);
    EXPECT_EQ(r.hi(), 0.0);
}

TEST(Elem, DomainViolations) {
    EXPECT_THROW(elem(Interval(-1, 1), ElemKind::log), DomainViolation);
    EXPECT_THROW(elem(Interval(-1, 1), ElemKind::sqrt), DomainViolation);
}

TEST(Elem, OverflowIsAnErrorNotInfinity) {
    EXPECT_ANY_THROW(elem(Interval(1000.0), ElemKind::exp));
}

TEST(NormalTail, HalfAtZero) {
    auto r = normal_tail(Interval(0.0));
    EXPECT_TRUE(r.contains(0.5));
    EXPECT_LE(r.width(), 1e-15);
}

TEST(NormalTail, OracleValues) {
    EXPECT_TRUE(contains_decimal(normal_tail(Interval(1.0)), phibar1));
    EXPECT_TRUE(contains_decimal(normal_tail(Interval(2.0)), phibar2));
    EXPECT_TRUE(contains_decimal(normal_tail(Interval(5.0)), phibar5));
    auto r = normal_tail(Interval(-8.0));
    EXPECT_TRUE(contains_decimal(r, one_minus_phibar8));
    EXPECT_LE(std::fabs(r.mid() - 1.0), 1e-14);
}

TEST(NormalTail, ComplementEnclosesOne) {
    for (double x : {0.0, 0.1, 0.5, 1.0, 1.7, 2.5, 4.0, 7.5, 12.0}) {
        auto s = normal_tail(Interval(x)) + normal_tail(Interval(-x));
        EXPECT_TRUE(s.contains(1.0)) << x;
    }
}

TEST(NormalTail, Antitone) {
    auto a = normal_tail(Interval(0.3, 0.4));
    EXPECT_TRUE(a.contains(normal_tail(Interval(0.35))));
    EXPECT_LE(a.lo(), normal_tail(Interval(0.4)).hi());
}

TEST(WidthControl, PointInputsStayNarrow) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int i = 0; i < 200; ++i) {
        double x = u(rng);
        auto e = exp(Interval(x));
        EXPECT_LE(e.width(), 8 * ulp(e.mid())) << x;
        auto t = normal_tail(Interval(x));
        EXPECT_LE(t.width(), 8 * ulp(t.mid())) << x;
        double y = std::fabs(x) + 0.01;
        if (std::fabs(y - 1) > 0.1) {
            auto l = log(Interval(y));
            EXPECT_LE(l.width(), 8 * ulp(l.mid())) << y;
        }
        auto s = sqrt(Interval(y));
        EXPECT_LE(s.width(), 8 * ulp(s.mid())) << y;
    }
}

TEST(ParseDecimal, EnclosesLiteral) {
    auto g = parse_decimal(".24841951");
    EXPECT_TRUE(contains_rational(g, cpp_rational(24841951, 100000000)));
    EXPECT_LT(g.lo(), g.hi());
    auto a = parse_decimal("-0.445183267");
    EXPECT_TRUE(contains_rational(a, cpp_rational(-445183267, 1000000000)));
    auto e = parse_decimal("-1e-5");
    EXPECT_TRUE(contains_rational(e, cpp_rational(-1, 100000)));
    auto exact = parse_decimal("0.5");
    EXPECT_TRUE(exact.is_point());
    EXPECT_THROW(parse_decimal("abc"), std::invalid_argument);
}

TEST(Containment, FuzzAllClassesClean) {
    for (const auto& r : containment_fuzz(3000, 5)) {
        EXPECT_EQ(r.violations, 0u) << r.op << ": " << r.first_violation;
        EXPECT_EQ(r.samples, 3000u) << r.op;
    }
}

TEST(FaultHook, NarrowedRoundingLosesContainment) {
    FaultGuard g;
    EXPECT_THROW(arith(Interval(1.0), Interval(2.0), ArithKind::add), EmptyConstruction);
    auto r = containment_fuzz(200, 5);
    std::size_t total = 0;
    for (const auto& x : r) total += x.violations;
    EXPECT_GT(total, 0u);
}
