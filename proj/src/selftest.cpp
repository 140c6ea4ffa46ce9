#include "fc/selftest.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <functional>

#include "fc/binom_oracle.hpp"
#include "fc/certify.hpp"
#include "fc/functional.hpp"
#include "fc/gaussfn.hpp"
#include "fc/graphsim.hpp"
#include "fc/quad.hpp"
#include "fc/report.hpp"

namespace fc {

namespace {

using boost::multiprecision::cpp_rational;

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    double unit() { return (rng_.next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * unit(); }
    // random sign and binary exponent in [-e, e]
    double wide(int e) {
        double m = 1 + unit();
        int x = static_cast<int>(rng_.below(2 * e + 1)) - e;
        return (rng_.next() & 1 ? -1 : 1) * std::ldexp(m, x);
    }
    Interval around(double x, int e) {
        double w = std::fabs(x) * std::ldexp(unit(), -static_cast<int>(rng_.below(e + 1)));
        double lo = x - w * unit(), hi = x + w * unit();
        return lo <= hi ? Interval(lo, hi) : Interval(hi, lo);
    }
    // endpoint or interior double of x
    double point(const Interval& x) {
        switch (rng_.below(3)) {
            case 0: return x.lo();
            case 1: return x.hi();
            default: return std::min(x.hi(), std::max(x.lo(), x.lo() + (x.hi() - x.lo()) * unit()));
        }
    }

private:
    SplitMix64 rng_;
};

struct Tally {
    FuzzResult r;
    explicit Tally(const std::string& op) { r.op = op; }
    void sample(bool ok, const std::function<std::string()>& what) {
        ++r.samples;
        if (!ok) {
            if (r.violations == 0) r.first_violation = what();
            ++r.violations;
        }
    }
};

bool contains_exact(const Interval& v, const cpp_rational& x) { return cpp_rational(v.lo()) <= x && x <= cpp_rational(v.hi()); }

bool contains_ref(const Interval& v, const dec50& x) { return dec50(v.lo()) <= x && x <= dec50(v.hi()); }

std::string show(const Interval& a) { return format_interval(a); }

}  // namespace

std::vector<FuzzResult> containment_fuzz(std::size_t n, std::uint64_t seed) {
    std::vector<FuzzResult> out;
    const char* names[] = {"add", "sub", "mul", "div"};
    const ArithKind kinds[] = {ArithKind::add, ArithKind::sub, ArithKind::mul, ArithKind::div};
    for (int k = 0; k < 4; ++k) {
        Draw d(SplitMix64::derive(seed, k));
        Tally t(names[k]);
        for (std::size_t i = 0; i < n; ++i) {
            Interval a = d.around(d.wide(40), 30), b = d.around(d.wide(40), 30);
            if (kinds[k] == ArithKind::div && b.contains(0.0)) b = Interval(std::fabs(b.hi()) + 1);
            double x = d.point(a), y = d.point(b);
            std::string err;
            bool ok;
            try {
                Interval r = arith(a, b, kinds[k]);
                cpp_rational X(x), Y(y), e;
                switch (kinds[k]) {
                    case ArithKind::add: e = X + Y; break;
                    case ArithKind::sub: e = X - Y; break;
                    case ArithKind::mul: e = X * Y; break;
                    case ArithKind::div: e = X / Y; break;
                }
                ok = contains_exact(r, e);
                if (!ok) err = show(a) + " " + names[k] + " " + show(b) + " -> " + show(r);
            } catch (const std::exception& ex) {
                ok = false;
                err = std::string("exception: ") + ex.what();
            }
            t.sample(ok, [&] { return err; });
        }
        out.push_back(t.r);
    }

    {
        Draw d(SplitMix64::derive(seed, 10));
        Tally sq("sqrt"), ns("neg_square");
        for (std::size_t i = 0; i < n; ++i) {
            Interval a = d.around(std::fabs(d.wide(40)), 30);
            double x = d.point(a);
            std::string err;
            bool ok;
            try {
                Interval r = elem(a, ElemKind::sqrt);
                cpp_rational X(x), lo(r.lo()), hi(r.hi());
                ok = r.lo() >= 0 && lo * lo <= X && X <= hi * hi;
                if (!ok) err = "sqrt " + show(a) + " -> " + show(r);
            } catch (const std::exception& ex) {
                ok = false;
                err = std::string("exception: ") + ex.what();
            }
            sq.sample(ok, [&] { return err; });

            Interval b = d.around(d.wide(40), 30);
            double y = d.point(b);
            try {
                Interval r = elem(b, ElemKind::neg_square);
                cpp_rational Y(y);
                ok = contains_exact(r, -(Y * Y));
                if (!ok) err = "neg_square " + show(b) + " -> " + show(r);
            } catch (const std::exception& ex) {
                ok = false;
                err = std::string("exception: ") + ex.what();
            }
            ns.sample(ok, [&] { return err; });
        }
        out.push_back(sq.r);
        out.push_back(ns.r);
    }

    {
        Draw d(SplitMix64::derive(seed, 20));
        Tally te("exp"), tl("log"), tn("normal_tail");
        for (std::size_t i = 0; i < n; ++i) {
            std::string err;
            bool ok;
            Interval a = intersect(d.around(d.uniform(-700, 700), 40), Interval(-740.0, 705.0));
            double x = d.point(a);
            try {
                Interval r = elem(a, ElemKind::exp);
                ok = contains_ref(r, exp(dec50(x)));
                if (!ok) err = "exp " + show(a) + " -> " + show(r);
            } catch (const std::exception& ex) {
                ok = false;
                err = std::string("exception: ") + ex.what();
            }
            te.sample(ok, [&] { return err; });

            Interval b = d.around(std::fabs(d.wide(60)), 40);
            double y = d.point(b);
            try {
                Interval r = elem(b, ElemKind::log);
                ok = contains_ref(r, log(dec50(y)));
                if (!ok) err = "log " + show(b) + " -> " + show(r);
            } catch (const std::exception& ex) {
                ok = false;
                err = std::string("exception: ") + ex.what();
            }
            tl.sample(ok, [&] { return err; });

            Interval c = d.around(d.uniform(-12, 37), 40);
            double z = d.point(c);
            try {
                Interval r = normal_tail(c);
                dec50 ref = boost::math::erfc(dec50(z) / sqrt(dec50(2))) / 2;
                ok = contains_ref(r, ref);
                if (!ok) err = "normal_tail " + show(c) + " -> " + show(r);
            } catch (const std::exception& ex) {
                ok = false;
                err = std::string("exception: ") + ex.what();
            }
            tn.sample(ok, [&] { return err; });
        }
        out.push_back(te.r);
        out.push_back(tl.r);
        out.push_back(tn.r);
    }
    return out;
}

std::vector<DerivCheck> derivative_fd_checks(int points, std::uint64_t seed) {
    const Interval gamma(0.2484195);
    // differences use the fast kernel, an independent evaluation path
    auto f = [&](double b, double a) { return f_eval({gamma, Interval(b), Interval(a)}, Mode::fast).mid(); };
    auto fa = [&](double b, double a) { return f_dalpha({gamma, Interval(b), Interval(a)}, Mode::certified); };
    auto fb = [&](double b, double a) { return f_dbeta({gamma, Interval(b), Interval(a)}, DerivOrder::first); };

    struct Case {
        std::string name;
        double tol;
        std::function<std::pair<Interval, double>(double, double)> run;
    };
    const double h = 1e-4;
    std::vector<Case> cases = {
        {"df/dalpha", 1e-6,
         [&](double b, double a) { return std::pair{fa(b, a), (f(b, a + h) - f(b, a - h)) / (2 * h)}; }},
        {"df/dbeta", 1e-6,
         [&](double b, double a) { return std::pair{fb(b, a), (f(b + h, a) - f(b - h, a)) / (2 * h)}; }},
        {"d2f/dalpha2", 1e-6,
         [&](double b, double a) {
             return std::pair{f_dalpha2({gamma, Interval(b), Interval(a)}),
                              (fa(b, a + h).mid() - fa(b, a - h).mid()) / (2 * h)};
         }},
        {"d2f/dbeta dalpha", 1e-6,
         [&](double b, double a) {
             return std::pair{f_dbeta_dalpha({gamma, Interval(b), Interval(a)}),
                              (fb(b, a + h).mid() - fb(b, a - h).mid()) / (2 * h)};
         }},
        {"beta f_bb + 2 f_b", 1e-6,
         [&](double b, double a) {
             double fbb = (fb(b + h, a).mid() - fb(b - h, a).mid()) / (2 * h);
             return std::pair{f_dbeta({gamma, Interval(b), Interval(a)}, DerivOrder::combo),
                              b * fbb + 2 * fb(b, a).mid()};
         }},
        {"dF1/dalpha", 1e-6,
         [&](double, double a) {
             double d = (F1_eval(gamma, Interval(a + h), Mode::fast).mid() -
                         F1_eval(gamma, Interval(a - h), Mode::fast).mid()) /
                        (2 * h);
             return std::pair{F1_prime(gamma, Interval(a), Mode::certified), d};
         }},
        {"d2F2/dbeta2", 1e-4,
         [&](double b, double a) {
             const double k = 1e-3;
             auto F = [&](double bb) {
                 return F2_eval({Interval(bb), Interval(a), Interval(a + 0.01), gamma}, Mode::fast).mid();
             };
             double d = (F(b + k) - 2 * F(b) + F(b - k)) / (k * k);
             return std::pair{F2_hessian(Interval(b), Interval(a), Interval(a + 0.01), gamma).bb, d};
         }},
    };

    std::vector<DerivCheck> out;
    for (std::size_t c = 0; c < cases.size(); ++c) {
        Draw d(SplitMix64::derive(seed, 100 + c));
        DerivCheck r{cases[c].name};
        for (int i = 0; i < points; ++i) {
            double b = d.uniform(0.1, 0.9), a = d.uniform(-0.9, 0.3);
            ++r.points;
            try {
                auto [enc, fd] = cases[c].run(b, a);
                double dev = std::fabs(enc.mid() - fd) / (1 + std::fabs(fd));
                r.worst = std::max(r.worst, dev);
                if (!(dev <= cases[c].tol)) ++r.failures;
            } catch (const std::exception&) {
                ++r.failures;
            }
        }
        out.push_back(r);
    }
    return out;
}

namespace {

struct Runner {
    std::ostream& log;
    int failures = 0;

    void line(bool ok, const std::string& name, const std::string& detail) {
        log << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) log << ": " << detail;
        log << "\n";
        failures += !ok;
    }
    void guard(const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
        try {
            auto [ok, detail] = body();
            line(ok, name, detail);
        } catch (const std::exception& e) {
            line(false, name, std::string("exception: ") + e.what());
        }
    }
};

}  // namespace

int run_selftest(std::ostream& log, const SelftestOptions& opt) {
    struct Restore {
        ~Restore() { testhook::narrow_rounding = false; }
    } restore;
    testhook::narrow_rounding = opt.inject_rounding_fault;
    Runner run{log};
    log << "selftest seed " << opt.seed << (opt.inject_rounding_fault ? " (rounding fault injected)" : "") << "\n";

    for (const auto& r : containment_fuzz(2000, opt.seed)) {
        std::string d = std::to_string(r.samples) + " samples, " + std::to_string(r.violations) + " violations";
        if (r.violations) d += "; containment failure: " + r.first_violation;
        run.line(r.violations == 0, "rint containment " + r.op, d);
    }

    run.guard("quad encloses erf integral", [] {
        Interval v = parse_decimal("0.7468241328124270253994674");
        Integrand g{[](const Interval& x) { return exp(-sqr(x)); },
                    [](const Interval& x) { return (4.0 * sqr(x) - 2.0) * exp(-sqr(x)); }, std::nullopt};
        Enclosure e = integrate_finite(g, 0.0, 1.0, 1e-13);
        return std::pair{e.value.contains(v), format_interval(e.value)};
    });
    run.guard("orthant frozen value f(.3,-.4)", [] {
        Interval v = f_eval({Interval(0.2484195), Interval(0.3), Interval(-0.4)}, Mode::certified);
        return std::pair{v.contains(0.28032191796749876), format_interval(v)};
    });
    run.guard("normal tail frozen value", [] {
        Interval v = normal_tail(Interval(1.0));
        return std::pair{v.contains(0.15865525393145705), format_interval(v)};
    });
    for (const auto& d : derivative_fd_checks(5, opt.seed))
        run.line(d.failures == 0, "derivative " + d.name,
                 std::to_string(d.points) + " points, worst " + render(d.worst));

    run.guard("identity F2(1/2,a,a) = 4 F1(a)", [&] {
        Interval g(0.2484195);
        double worst = 0;
        for (double a : {-0.8, -0.445, -0.1, 0.2}) {
            Interval A(a);
            Interval d = F2_eval({Interval(0.5), A, A, g}, Mode::certified) - 4.0 * F1_eval(g, A, Mode::certified);
            worst = std::max(worst, d.mag());
        }
        return std::pair{worst <= 1e-12, "max |diff| " + render(worst)};
    });
    run.guard("gamma bracket", [] {
        ClaimReport r = certify_gamma_bounds();
        return std::pair{r.verdict == Verdict::certified, std::string(to_string(r.verdict))};
    });
    run.guard("smoke sweep, first 5 segments", [] {
        auto plan = resolve_manifest("smoke");
        plan.resize(std::min<std::size_t>(plan.size(), 5));
        ClaimReport r = certify_sweep("selftest-sweep", plan, sweep_gamma);
        return std::pair{r.verdict == Verdict::certified, std::string(to_string(r.verdict)) + ", worst " + r.worst_segment};
    });
    run.guard("report round trip", [] {
        ClaimReport r;
        r.claim_id = "roundtrip";
        r.gamma = ".2484195";
        r.enclose("x", Interval(0.1, 0.30000000000000004));
        r.check("c", true);
        ClaimReport s = from_json(to_json(r));
        return std::pair{to_json(s) == to_json(r), std::string()};
    });
    run.guard("binomial pmf n=2 equals 3/8", [] {
        auto v = diff_pmf_dyadic({2, 0, 0, 0, 0});
        return std::pair{v && *v == big_rational(3, 8), std::string()};
    });
    run.guard("graph counts K4 = 0, empty = 6", [] {
        auto k4 = count_friendly_exhaustive(complete_graph(4), 0), e4 = count_friendly_exhaustive(empty_graph(4), 0);
        return std::pair{k4 == 0 && e4 == 6, std::to_string(k4) + ", " + std::to_string(e4)};
    });
    run.guard("margin bookkeeping over 1000 swaps", [&] {
        Graph g = sample_gnp_half(40, opt.seed);
        std::vector<std::uint8_t> part(40, 0);
        for (int i = 20; i < 40; ++i) part[i] = 1;
        BisectionState st(g, part);
        SplitMix64 rng(opt.seed);
        for (int i = 0; i < 1000; ++i) {
            std::vector<int> a, b;
            for (int v = 0; v < 40; ++v) (st.part_of()[v] ? b : a).push_back(v);
            st.swap(a[rng.below(a.size())], b[rng.below(b.size())]);
        }
        return std::pair{st.consistent(), std::string()};
    });

    log << (run.failures == 0 ? "selftest passed" : "selftest failed: " + std::to_string(run.failures) + " checks")
        << "\n";
    return run.failures == 0 ? 0 : 1;
}

}  // namespace fc
