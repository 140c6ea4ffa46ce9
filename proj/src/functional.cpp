#include "fc/functional.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>

namespace fc {

namespace {

const Interval& log2_i() {
    static const Interval v = ln2_i<double>();
    return v;
}
const Interval& sqrt2_i() {
    static const Interval v = sqrt(Interval(2.0));
    return v;
}
const Interval& sqrt_pi_i() {
    static const Interval v = sqrt(pi_i<double>());
    return v;
}

double qbar(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

Interval safe_log(const Interval& x, const char* what) {
    if (!(x.lo() > 0)) throw LogOfNonpositive(std::string("log of an enclosure touching 0: ") + what);
    return log(x);
}

}  // namespace

Interval xlogx(const Interval& x) {
    if (x.lo() < 0 || x.hi() > 1) throw DomainViolation("xlogx outside [0,1]");
    auto at = [](double v) { return v == 0 ? Interval(0.0) : Interval(v) * log(Interval(v)); };
    // decreasing on [0, 1/e], increasing on [1/e, 1]
    const double e_inv_lo = 0.36787944117144228, e_inv_hi = 0.36787944117144239;
    Interval a = at(x.lo()), b = at(x.hi());
    double hi = std::max(a.hi(), b.hi());
    double lo;
    if (x.hi() <= e_inv_lo) lo = b.lo();
    else if (x.lo() >= e_inv_hi) lo = a.lo();
    else lo = -(1.0 / exp(Interval(1.0))).hi();
    return {lo, hi};
}

Interval F1_eval(const Interval& gamma, const Interval& alpha, Mode mode) {
    if (mode == Mode::fast) {
        double g = gamma.mid(), a = alpha.mid();
        return Interval(std::log(2.0) - a * a + std::log(qbar(std::sqrt(2.0) * (g + a))));
    }
    Interval q = normal_tail(sqrt2_i() * (gamma + alpha));
    return log2_i() - sqr(alpha) + safe_log(q, "F1 tail");
}

Interval F1_prime(const Interval& gamma, const Interval& alpha, Mode mode) {
    if (mode == Mode::fast) {
        double g = gamma.mid(), a = alpha.mid(), c = g + a;
        return Interval(-2 * a - std::exp(-c * c) / (std::sqrt(M_PI) * qbar(std::sqrt(2.0) * c)));
    }
    Interval c = gamma + alpha;
    Interval q = normal_tail(sqrt2_i() * c);
    if (!(q.lo() > 0)) throw LogOfNonpositive("F1' tail underflow");
    return -2.0 * alpha - exp(-sqr(c)) / (sqrt_pi_i() * q);
}

Interval F2_eval(const F2Point& p, Mode mode) {
    const Interval& b = p.beta;
    if (b.lo() < 0 || b.hi() > 1) throw DomainViolation("beta outside [0,1]");
    Interval u = 1.0 - b;
    Interval ent = 2.0 * log2_i() - 2.0 * xlogx(b) - 2.0 * xlogx(intersect(u, Interval(0.0, 1.0)));
    Interval out = ent - 2.0 * sqr(p.alpha1) - 2.0 * sqr(p.alpha2);

    auto part = [&](const Interval& w, const Interval& tau, const Interval& a) -> Interval {
        if (w.is_point() && w.lo() == 0) return Interval(0.0);
        Interval f = f_eval({p.gamma, tau, a}, mode);
        if (mode == Mode::fast) {
            if (!(f.lo() > 0)) throw LogOfNonpositive("orthant probability is 0");
            return 2.0 * w * Interval(std::log(f.lo()));
        }
        return 2.0 * w * safe_log(f, "orthant probability");
    };
    out = out + part(b, b, p.alpha1) + part(u, u, p.alpha2);
    if (mode == Mode::fast) return Interval(out.mid());
    return out;
}

FixedPoint fixed_point_alpha(double gamma, double alpha0, double tol, int max_iter) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    double a = alpha0;
    for (int i = 1; i <= max_iter; ++i) {
        double c = gamma + a;
        double next = -std::exp(-c * c) / (2 * std::sqrt(M_PI) * qbar(std::sqrt(2.0) * c));
        bool done = std::fabs(next - a) <= tol;
        a = next;
        if (done) {
            double r = F1_prime(Interval(gamma), Interval(a), Mode::certified).mag();
            return {a, r, i, r > 100 * tol};
        }
    }
    throw NoConvergence("fixed point iteration did not settle");
}

double concave_sup_bound(const SupBoundInput& in) {
    if (!(in.concavity_M > 0)) throw NonpositiveM("concavity constant must be positive");
    Interval g2(0.0);
    for (double g : in.grad) g2 = g2 + sqr(Interval(g));
    return (Interval(in.value_at_z) + g2 / (2.0 * Interval(in.concavity_M))).hi();
}

RegionSup region_sup(const Interval& value, const Interval& slope, double z, double M, double L,
                     double U) {
    if (!(M > 0)) throw NonpositiveM("concavity constant must be positive");
    if (!(L <= U)) throw std::invalid_argument("empty region");
    const Interval Mi(M);
    double tl = std::isinf(L) ? -inf : detail::add_dn(L, -z);
    double tu = std::isinf(U) ? inf : detail::add_up(U, -z);

    // model q(t) = d t - (M/2) t^2 with d = slope.hi for t >= 0, slope.lo for t <= 0
    auto at = [&](double t, double d) { return (Interval(d) * t - Mi * 0.5 * sqr(Interval(t))).hi(); };
    auto peak_value = [&](double d) { return (sqr(Interval(d)) / (2.0 * Mi)).hi(); };
    auto side = [&](double a, double b, double d) {
        Interval peak = Interval(d) / Mi;
        if (peak.hi() < a) return at(a, d);
        if (peak.lo() > b) return at(b, d);
        return peak_value(d);
    };

    double best = -inf;
    if (std::max(tl, 0.0) <= tu) best = std::max(best, side(std::max(tl, 0.0), tu, slope.hi()));
    if (tl <= std::min(tu, 0.0)) best = std::max(best, side(tl, std::min(tu, 0.0), slope.lo()));

    double free_peak = slope.mid() / M;
    bool clipped = free_peak < tl || free_peak > tu;
    return {(Interval(value.hi()) + Interval(best)).hi(), clipped};
}

double term_root(const EnvelopeTerm& t, double gamma) {
    Interval B(t.beta);
    double lam = t.scale.mid();
    auto dA = [&](double a) {
        double x = lam * (gamma + a);
        if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
        Interval s(x);
        double O = orthant(B, s, Mode::fast).mid();
        double Os = orthant_ds(B, s, Mode::fast).mid();
        if (!(O > 1e-300)) return std::numeric_limits<double>::quiet_NaN();
        return -4 * a + t.weight * lam * Os / O;
    };
    // the fast kernel is unreliable once O is tiny, so bracket by scanning upward
    double lo = -3, hi = lo;
    double flo = dA(lo);
    if (!(flo > 0)) return lo;
    for (double x = lo + 0.125; x <= 3; x += 0.125) {
        double fx = dA(x);
        if (!std::isfinite(fx)) return lo;
        if (fx <= 0) {
            hi = x;
            break;
        }
        lo = x;
    }
    if (hi <= lo) return lo;
    boost::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(
        dA, lo, hi, boost::math::tools::eps_tolerance<double>(50), iters);
    return r.first / 2 + r.second / 2;
}

TermSup term_at(const EnvelopeTerm& t, double gamma, double z, double quad_target, Mode mode) {
    Interval Z(z), B(t.beta), W(t.weight);
    Interval s = t.scale * (Interval(gamma) + Z);
    Interval O = orthant(B, s, mode, quad_target);
    Interval Os = orthant_ds(B, s, mode);
    TermSup out;
    out.z = z;
    out.value = -2.0 * sqr(Z) + W * safe_log(O, "envelope term");
    out.slope = -4.0 * Z + W * t.scale * Os / O;
    return out;
}

RegionSup term_region(const TermSup& at, double L, double U) {
    return region_sup(at.value, at.slope, at.z, envelope_M, L, U);
}

namespace {

// Region split for a point gamma: plain branch on [-gamma, inf), scaled on (-inf, -gamma].
struct Term {
    EnvelopeTerm env;
    double L, U;
};

double clip(double z, double L, double U) { return std::min(std::max(z, L), U); }

struct Evaluated {
    TermSup at;
    RegionSup all;
};

Evaluated evaluate(const Term& t, double gamma, double quad_target, Mode mode) {
    double z = clip(term_root(t.env, gamma), t.L, t.U);
    TermSup at = term_at(t.env, gamma, z, quad_target, mode);
    return {at, term_region(at, t.L, t.U)};
}

}  // namespace

SegmentBound segment_envelope_sup(const SegmentPlan& seg, const Interval& gamma_box,
                                  double quad_target, Mode mode) {
    if (seg.tag == CaseTag::b1_tail)
        throw CaseMismatch("B1-tail segments are handled by the initial-interval chain");
    // F2 is antitone in gamma, so the lower end of the box covers all of it
    const double gamma = gamma_box.lo();
    Interval e1 = seg.eta1.enclose(), e2 = seg.eta2.enclose();
    if (!(e2.hi() <= 0.5)) throw CaseMismatch("segment must satisfy eta2 <= 1/2");

    SegmentBound out;
    out.entropy = 2.0 * log2_i() - 2.0 * xlogx(e2) - 2.0 * xlogx(1.0 - e2);

    // beta in [eta1, eta2]: 2 beta log f(beta, a1) <= 2 eta1 log U1(a1),
    // 2(1-beta) log f(1-beta, a2) <= 2(1-eta2) log U2(a2)
    double w1 = (2.0 * e1).lo(), w2 = (2.0 * (1.0 - e2)).lo();
    double b1 = e2.hi(), b2 = (1.0 - e1).hi();
    Interval lam1 = sqrt(e2 / e1), lam2 = sqrt((1.0 - e1) / (1.0 - e2));
    Term A1{{w1, b1, Interval(1.0)}, -gamma, inf};
    Term A1s{{w1, b1, lam1}, -inf, -gamma};
    Term A2{{w2, b2, Interval(1.0)}, -gamma, inf};
    Term A2s{{w2, b2, lam2}, -inf, -gamma};

    Interval total = out.entropy;
    auto add = [&](const Evaluated& e) {
        total = total + Interval(e.all.bound);
        out.corrections += e.all.clipped;
    };
    switch (seg.tag) {
        case CaseTag::b2_case1: add(evaluate(A2s, gamma, quad_target, mode)); break;
        case CaseTag::b2_case2: add(evaluate(A2, gamma, quad_target, mode)); break;
        case CaseTag::b2_case3:
            add(evaluate(A1, gamma, quad_target, mode));
            add(evaluate(A2, gamma, quad_target, mode));
            break;
        case CaseTag::b2_case4:
            add(evaluate(A1s, gamma, quad_target, mode));
            add(evaluate(A2, gamma, quad_target, mode));
            break;
        case CaseTag::b2_case5:
            add(evaluate(A1, gamma, quad_target, mode));
            add(evaluate(A2s, gamma, quad_target, mode));
            break;
        case CaseTag::b2_case6:
            add(evaluate(A1s, gamma, quad_target, mode));
            add(evaluate(A2s, gamma, quad_target, mode));
            break;
        case CaseTag::b3_local: {
            if (!(-gamma > local_hi)) throw CaseMismatch("local box must lie below -gamma");
            Evaluated s1 = evaluate(A1s, gamma, quad_target, mode), s2 = evaluate(A2s, gamma, quad_target, mode);
            auto outside = [&](const Evaluated& e) {
                RegionSup left = term_region(e.at, -inf, local_lo);
                RegionSup right = term_region(e.at, local_hi, -gamma);
                return std::max(left.bound, right.bound);
            };
            double o1 = outside(s1), o2 = outside(s2);
            double sup = std::max((Interval(o1) + s2.all.bound).hi(), (Interval(s1.all.bound) + o2).hi());
            total = total + Interval(sup);
            out.corrections += s1.all.clipped + s2.all.clipped;

            Witness w;
            w.z1 = s1.at.z;
            w.z2 = s2.at.z;
            w.G2 = out.entropy + s1.at.value + s2.at.value;
            w.grad_sum = (Interval(s1.at.slope.mag()) + s2.at.slope.mag()).hi();
            out.witness = w;
            break;
        }
        default: throw CaseMismatch("unsupported case tag");
    }
    out.bound = total.hi();
    return out;
}

F2Hessian F2_hessian(const Interval& beta, const Interval& alpha1, const Interval& alpha2,
                     const Interval& gamma) {
    struct Part {
        Interval f, fb, combo, fa, fba, faa;
    };
    auto part = [&](const Interval& tau, const Interval& a) {
        OrthantParams p{gamma, tau, a};
        return Part{f_eval(p, Mode::certified), f_dbeta(p, DerivOrder::first),
                    f_dbeta(p, DerivOrder::combo), f_dalpha(p, Mode::certified),
                    f_dbeta_dalpha(p), f_dalpha2(p)};
    };
    Interval u = 1.0 - beta;
    Part p1 = part(beta, alpha1), p2 = part(u, alpha2);
    auto T = [](const Interval& w, const Part& p) { return p.combo / p.f - w * sqr(p.fb / p.f); };
    auto mixed = [](const Interval& w, const Part& p) {
        Interval ra = p.fa / p.f;
        return ra + w * (p.fba / p.f - (p.fb / p.f) * ra);
    };
    auto aa = [](const Interval& w, const Part& p) {
        return -4.0 + 2.0 * w * (p.faa / p.f - sqr(p.fa / p.f));
    };
    F2Hessian h;
    h.bb = -2.0 / (beta * u) + 2.0 * T(beta, p1) + 2.0 * T(u, p2);
    h.ba1 = 2.0 * mixed(beta, p1);
    h.ba2 = -2.0 * mixed(u, p2);
    h.a1a1 = aa(beta, p1);
    h.a2a2 = aa(u, p2);
    h.a1a2 = Interval(0.0);
    return h;
}

}  // namespace fc
