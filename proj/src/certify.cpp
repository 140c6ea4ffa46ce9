#include "fc/certify.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

namespace fc {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string fmt(double x) { return render(x); }

Interval lit(const char* s) { return parse_decimal(s); }

const Interval& sqrt2() {
    static const Interval v = sqrt(Interval(2.0));
    return v;
}

// Bracket of the critical gamma widened by 1e-7 on each side.
bool gamma_admissible(const Interval& g) { return g.lo() >= 0.24841941 - 1e-12 && g.hi() <= 0.24841969 + 1e-12; }

void finish(ClaimReport& r, Mode mode, clock_type::time_point t0) {
    if (r.verdict == Verdict::not_reached && !r.first_failure() && !r.checks.empty())
        r.verdict = Verdict::certified;
    if (mode == Mode::fast && r.verdict == Verdict::certified) r.verdict = Verdict::estimated;
    r.mode = to_string(mode);
    r.wall_seconds = seconds_since(t0);
}

}  // namespace

ClaimReport certify_gamma_bounds(const GammaBoundsInput& in, Mode mode) {
    auto t0 = clock_type::now();
    ClaimReport r;
    r.claim_id = "gamma-bounds";
    r.gamma = "[" + in.gamma_lo + ", " + in.gamma_hi + "]";
    try {
        Interval glo = parse_decimal(in.gamma_lo), ghi = parse_decimal(in.gamma_hi);
        Interval alo = parse_decimal(in.alpha_lo), ahi = parse_decimal(in.alpha_hi);

        // sup F1 > 0 at gamma_lo, witnessed by a single alpha
        Interval v_lo = F1_eval(glo, alo, mode);
        r.enclose("F1(gamma_lo, alpha_lo)", v_lo);
        r.check("F1 at gamma_lo is positive", v_lo.lo() > 0, format_interval(v_lo));
        r.inform("F1 at gamma_lo >= 4e-8", v_lo.lo() >= 4e-8, format_interval(v_lo));

        // F1'' <= -2, so sup F1 <= F1(z) + F1'(z)^2 / 4
        Interval v_hi = F1_eval(ghi, ahi, mode);
        Interval d_hi = F1_prime(ghi, ahi, mode);
        r.enclose("F1(gamma_hi, alpha_hi)", v_hi);
        r.enclose("F1'(gamma_hi, alpha_hi)", d_hi);
        double sup = concave_sup_bound({v_hi.hi(), {d_hi.mag()}, 2.0});
        r.enclose("sup F1 at gamma_hi", Interval(v_hi.lo(), std::max(v_hi.lo(), sup)));
        r.check("sup F1 at gamma_hi is negative", sup < 0, "bound " + fmt(sup));
        r.inform("F1 at gamma_hi <= -2e-8", v_hi.hi() <= -2e-8, format_interval(v_hi));
        r.inform("|F1'| at gamma_hi <= 1e-5", d_hi.mag() <= 1e-5, format_interval(d_hi));

        Interval bracket = hull(glo, ghi);
        r.enclose("gamma_crit", bracket);
        Interval half = (glo + ghi) / 2.0 / sqrt2();
        r.enclose("gamma_crit midpoint / sqrt2", half);
        r.check("midpoint / sqrt2 near .17566", std::fabs(half.mid() - 0.17566) <= 1e-4, format_interval(half));
    } catch (const std::exception& e) {
        r.notes.push_back(std::string("evaluation error: ") + e.what());
        r.verdict = combine(r.verdict, Verdict::not_reached);
        r.wall_seconds = seconds_since(t0);
        return r;
    }
    finish(r, mode, t0);
    return r;
}

ClaimReport certify_initial_interval(const std::string& gamma_s, Mode mode) {
    auto t0 = clock_type::now();
    ClaimReport r;
    r.claim_id = "claim-b1";
    r.gamma = gamma_s;
    try {
        const Interval g = parse_decimal(gamma_s);
        const Interval b(0.001);
        const Interval ln2 = ln2_i<double>();
        if (!r.check("gamma inside the admissible box", gamma_admissible(g), format_interval(g))) {
            finish(r, mode, t0);
            return r;
        }

        // L1: entropy at beta = .001 (increasing on [0, .001])
        Interval ent = -2.0 * xlogx(b) - 2.0 * xlogx(1.0 - b);
        r.enclose("entropy(.001)", ent);
        r.check("entropy(.001) <= .01582", ent.hi() <= 0.01582, format_interval(ent));

        // H majorizes F2 in alpha2 for beta <= .001
        auto H = [&](double a) {
            Interval A(a);
            Interval q = normal_tail(sqrt2() * (g + A));
            return 2.0 * ln2 + lit(".01582") + lit("1.998") * (-sqr(A) + log(q));
        };
        Interval h45 = H(-0.45), h53 = H(-0.53), h37 = H(-0.37);
        r.enclose("H(-.45)", h45);
        r.enclose("H(-.53)", h53);
        r.enclose("H(-.37)", h37);
        r.check("H(-.45) >= 1e-2", h45.lo() >= 1e-2, format_interval(h45));

        FixedPoint fp = fixed_point_alpha(g.mid(), -0.445);
        Interval f1w = F1_eval(g, Interval(fp.alpha), mode);
        r.enclose("F1(alpha fixed point)", f1w);
        double edge = std::max(h53.hi(), h37.hi());
        r.check("H at -.53 and -.37 below 2 F1(alpha*)", edge < (2.0 * f1w).lo(),
                "edge " + fmt(edge) + ", 2F1 " + format_interval(2.0 * f1w));
        r.inform("H(-.53) <= -1e-3", h53.hi() <= -1e-3, format_interval(h53));
        r.inform("H(-.37) <= -1e-3", h37.hi() <= -1e-3, format_interval(h37));

        // alpha2 in [-.53, -.37], beta <= .001
        Interval f_lower = orthant(Interval(0.999), g + Interval(-0.37), mode);
        r.enclose("f lower", f_lower);
        r.check("f lower >= .538", f_lower.lo() >= 0.538, format_interval(f_lower));
        Interval C = 1.0 - 2.0 * log(Interval(f_lower.lo()));
        r.enclose("C", C);
        r.check("1 - 2 log f_lower <= 2.239", C.hi() <= 2.239, format_interval(C));
        r.inform("-2 log .538 <= 1.239", (-2.0 * log(lit(".538"))).hi() <= 1.239,
                 format_interval(-2.0 * log(lit(".538"))));

        Interval U = normal_tail(sqrt2() * (g + Interval(-0.53)));
        r.enclose("f upper", U);
        r.inform("f upper <= .611", U.hi() <= 0.611, format_interval(U));

        // 2 sqrt(beta) |d/dbeta f(1-beta, a)| >= exp(-c^2/.999)/pi
        Interval slope = exp(-sqr(g + Interval(-0.53)) / lit(".999")) / pi_i<double>();
        r.enclose("2 sqrt(beta) |f_beta| lower", slope);
        r.check("2 sqrt(beta) |f_beta| >= .29", slope.lo() >= 0.29, format_interval(slope));
        Interval kappa = lit(".999") * lit(".29") / Interval(U.hi());
        r.enclose("kappa", kappa);

        // m(b) = 2.239 b - 2(b log b - b) - 2 kappa sqrt b; m/sqrt b increases on (0, .001]
        Interval mono = lit("2.239") - 2.0 - 2.0 * log(b);
        r.check("m / sqrt(beta) increasing", mono.lo() > 0, format_interval(mono));
        Interval m = lit("2.239") * b - 2.0 * (b * log(b) - b) - 2.0 * Interval(kappa.lo()) * sqrt(b);
        r.enclose("integral at .001", m);
        r.check("integral of the derivative majorant is negative", m.hi() < 0, format_interval(m));

        Interval shown = lit("2.239") * b - (b * log(b) - b) - lit(".94") * sqrt(b);
        r.enclose("displayed integral at .001", shown);
        r.inform("displayed integral negative", shown.hi() < 0, format_interval(shown));

        // bound on d/dbeta [2 beta log f(beta, a1)], sampled only
        double worst = -inf;
        for (int i = 1; i <= 10; ++i) {
            double beta = 1e-4 * i;
            for (int j = 0; j <= 40; ++j) {
                double a = -1.0 + 0.05 * j;
                OrthantParams p{Interval(g.mid()), Interval(beta), Interval(a)};
                double f = f_eval(p, Mode::fast).mid();
                if (!(f > 0)) continue;
                double fb = f_dbeta(p, DerivOrder::first).mid();
                worst = std::max(worst, 2 * std::log(f) + 2 * beta * fb / f);
            }
        }
        r.inform("sampled d/dbeta [2 beta log f] <= 1", worst <= 1, "max " + fmt(worst));
    } catch (const std::exception& e) {
        r.notes.push_back(std::string("evaluation error: ") + e.what());
        r.verdict = combine(r.verdict, Verdict::not_reached);
        r.wall_seconds = seconds_since(t0);
        return r;
    }
    finish(r, mode, t0);
    return r;
}

namespace {

SegmentOutcome evaluate_once(const SegmentPlan& seg, const Interval& gamma, Mode mode) {
    SegmentOutcome o;
    o.seg = seg;
    try {
        o.target = seg.target_enclosure().lo();
        SegmentBound b = segment_envelope_sup(seg, gamma, sweep_quad_target, mode);
        o.bound = b.bound;
        o.corrections = b.corrections;
        o.witness = b.witness;
        bool ok = o.bound <= o.target;
        if (ok && seg.tag == CaseTag::b3_local) {
            ok = b.witness && b.witness->G2.hi() <= witness_G2_max && b.witness->grad_sum <= witness_grad_max;
            if (!ok) o.error = "witness outside tolerance";
        }
        o.verdict = ok ? (mode == Mode::fast ? Verdict::estimated : Verdict::certified) : Verdict::failed;
    } catch (const std::exception& e) {
        o.verdict = Verdict::not_reached;
        o.error = e.what();
    }
    return o;
}

}  // namespace

SegmentOutcome evaluate_segment(const SegmentPlan& seg, const Interval& gamma, int refine_depth, Mode mode) {
    SegmentOutcome o = evaluate_once(seg, gamma, mode);
    if (o.verdict == Verdict::certified || o.verdict == Verdict::estimated || refine_depth <= 0) return o;
    if (!(seg.eta2.num * 1.0 / seg.eta2.den - seg.eta1.num * 1.0 / seg.eta1.den > 0)) return o;
    std::pair<SegmentPlan, SegmentPlan> halves;
    try {
        halves = bisect(seg);
    } catch (const std::exception&) {
        return o;
    }
    SegmentOutcome a = evaluate_segment(halves.first, gamma, refine_depth - 1, mode);
    SegmentOutcome b = evaluate_segment(halves.second, gamma, refine_depth - 1, mode);
    SegmentOutcome out;
    out.seg = seg;
    out.target = o.target;
    out.verdict = combine(a.verdict, b.verdict);
    out.bound = std::max(a.bound, b.bound);
    out.corrections = a.corrections + b.corrections;
    out.pieces = a.pieces + b.pieces;
    const SegmentOutcome& w = a.bound >= b.bound ? a : b;
    out.witness = w.witness ? w.witness : (a.witness ? a.witness : b.witness);
    out.error = !a.error.empty() ? a.error : b.error;
    // a failed refinement reports the failed unrefined attempt if worse
    if (out.verdict == Verdict::not_reached && o.verdict == Verdict::failed) out.verdict = Verdict::failed;
    return out;
}

std::vector<SegmentOutcome> sweep_serial(const std::vector<SegmentPlan>& plan, const Interval& gamma,
                                         int refine_depth, Mode mode) {
    std::vector<SegmentOutcome> out;
    out.reserve(plan.size());
    for (const auto& seg : plan) out.push_back(evaluate_segment(seg, gamma, refine_depth, mode));
    return out;
}

std::vector<SegmentOutcome> sweep_parallel(const std::vector<SegmentPlan>& plan, const Interval& gamma,
                                           int threads, int refine_depth, Mode mode) {
    std::vector<SegmentOutcome> out(plan.size());
    const long n = static_cast<long>(plan.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads))
    for (long i = 0; i < n; ++i) out[i] = evaluate_segment(plan[i], gamma, refine_depth, mode);
    return out;
}

ClaimReport certify_sweep(const std::string& claim_id, const std::vector<SegmentPlan>& plan,
                          const std::string& gamma_s, const SweepOptions& opt) {
    auto t0 = clock_type::now();
    ClaimReport r;
    r.claim_id = claim_id;
    r.gamma = gamma_s;
    r.mode = to_string(opt.mode);
    Interval gamma;
    try {
        gamma = parse_decimal(gamma_s);
        for (const auto& s : plan) validate(s);
    } catch (const std::exception& e) {
        r.notes.push_back(std::string("invalid input: ") + e.what());
        r.wall_seconds = seconds_since(t0);
        return r;
    }
    if (plan.empty()) {
        r.notes.push_back("empty plan");
        r.wall_seconds = seconds_since(t0);
        return r;
    }
    if (!r.check("gamma inside the admissible box", gamma_admissible(gamma), format_interval(gamma))) {
        r.wall_seconds = seconds_since(t0);
        return r;
    }

    auto results = opt.parallelism > 1 ? sweep_parallel(plan, gamma, opt.parallelism, opt.refine_depth, opt.mode)
                                       : sweep_serial(plan, gamma, opt.refine_depth, opt.mode);

    Verdict v = opt.mode == Mode::fast ? Verdict::estimated : Verdict::certified;
    std::map<int, const SegmentOutcome*> worst_by_case;
    const SegmentOutcome* worst = nullptr;  // smallest slack target - bound
    int corrections = 0, refined = 0;
    for (const auto& o : results) {
        v = combine(v, o.verdict);
        corrections += o.corrections;
        refined += o.pieces > 1;
        if (o.verdict == Verdict::failed || o.verdict == Verdict::not_reached) {
            std::string what = o.seg.describe() + " bound " + fmt(o.bound) + " target " + o.seg.target;
            if (!o.error.empty()) what += " (" + o.error + ")";
            if (o.verdict == Verdict::failed) r.check("segment " + o.seg.describe(), false, what);
            else r.notes.push_back("not reached: " + what);
        }
        if (o.verdict == Verdict::not_reached) continue;
        int key = static_cast<int>(o.seg.tag);
        auto it = worst_by_case.find(key);
        if (it == worst_by_case.end() || o.bound > it->second->bound) worst_by_case[key] = &o;
        if (!worst || o.bound - o.target > worst->bound - worst->target) worst = &o;
    }
    for (const auto& [key, o] : worst_by_case) {
        r.enclose(std::string("worst ") + to_string(o->seg.tag), Interval(o->bound));
        r.notes.push_back(std::string("worst ") + to_string(o->seg.tag) + ": " + o->seg.describe() + " bound " +
                          fmt(o->bound));
    }
    if (worst) r.worst_segment = worst->seg.describe();

    bool any_b2 = false, any_b3 = false;
    double b2_max = -inf, g2_max = -inf, grad_max = 0;
    for (const auto& o : results) {
        if (o.verdict == Verdict::not_reached) continue;
        if (o.seg.tag == CaseTag::b3_local) {
            any_b3 = true;
            if (o.witness) {
                g2_max = std::max(g2_max, o.witness->G2.hi());
                grad_max = std::max(grad_max, o.witness->grad_sum);
            }
        } else {
            any_b2 = true;
            b2_max = std::max(b2_max, o.bound);
        }
    }
    if (any_b2) {
        r.check("every middle-segment bound <= -1e-5", b2_max <= lit("-1e-5").lo(), "max " + fmt(b2_max));
    }
    if (any_b3) {
        r.enclose("witness G2 max", Interval(g2_max));
        r.check("witness G2 <= 1e-5", g2_max <= witness_G2_max, fmt(g2_max));
        r.check("witness gradient small", grad_max <= witness_grad_max, fmt(grad_max));
    }
    r.notes.push_back("corrections applied: " + std::to_string(corrections));
    if (refined) r.notes.push_back("segments refined: " + std::to_string(refined));
    r.segments_checked = results.size();
    r.verdict = r.first_failure() ? Verdict::failed : v;
    r.wall_seconds = seconds_since(t0);
    return r;
}

bool sylvester_holds(const F2Hessian& h, double delta) {
    // N = -H - delta I with rows (a1, a2, beta)
    Interval d(delta);
    Interval n1 = -h.a1a1 - d, n2 = -h.a2a2 - d, n3 = -h.bb - d;
    Interval r = -h.a1a2, p = -h.ba1, q = -h.ba2;
    Interval m2 = n1 * n2 - sqr(r);
    Interval det = n1 * (n2 * n3 - sqr(q)) - r * (r * n3 - p * q) + p * (r * q - n2 * p);
    return n1.lo() > 0 && m2.lo() > 0 && det.lo() > 0;
}

double sylvester_margin(const std::vector<HessianBox>& boxes) {
    auto all = [&](double d) {
        for (const auto& b : boxes)
            if (!sylvester_holds(b.entries, d)) return false;
        return true;
    };
    if (boxes.empty() || !all(0.0)) return 0.0;
    double lo = 0, hi = 1;
    while (all(hi) && hi < 1e6) {
        lo = hi;
        hi *= 2;
    }
    for (int i = 0; i < 60; ++i) {
        double m = lo / 2 + hi / 2;
        (all(m) ? lo : hi) = m;
    }
    return lo;
}

namespace {

struct EntryBounds {
    double bb_max = -2.15, mixed_max = 2.05, aa_max = -4.0;
};

std::string entry_violation(const F2Hessian& h, const EntryBounds& eb) {
    if (!(h.bb.hi() <= eb.bb_max)) return "d2/dbeta2 " + format_interval(h.bb);
    if (!(h.ba1.mag() <= eb.mixed_max)) return "d2/dbeta da1 " + format_interval(h.ba1);
    if (!(h.ba2.mag() <= eb.mixed_max)) return "d2/dbeta da2 " + format_interval(h.ba2);
    if (!(h.a1a1.hi() <= eb.aa_max)) return "d2/da1^2 " + format_interval(h.a1a1);
    if (!(h.a2a2.hi() <= eb.aa_max)) return "d2/da2^2 " + format_interval(h.a2a2);
    if (!(h.a1a2.lo() == 0 && h.a1a2.hi() == 0)) return "d2/da1da2 " + format_interval(h.a1a2);
    return {};
}

std::pair<Interval, Interval> halves(const Interval& x) {
    double m = x.mid();
    return {Interval(x.lo(), m), Interval(m, x.hi())};
}

void box_cross_checks(ClaimReport& r, const Interval& gamma, int splits) {
    const Interval beta(0.495, 0.505), alpha(-0.45, -0.44);
    Interval f, fb, combo;
    bool first = true;
    for (int i = 0; i < splits; ++i) {
        for (int j = 0; j < splits; ++j) {
            Interval bb(beta.lo() + (beta.hi() - beta.lo()) * i / splits,
                        i + 1 == splits ? beta.hi() : beta.lo() + (beta.hi() - beta.lo()) * (i + 1) / splits);
            Interval aa(alpha.lo() + (alpha.hi() - alpha.lo()) * j / splits,
                        j + 1 == splits ? alpha.hi() : alpha.lo() + (alpha.hi() - alpha.lo()) * (j + 1) / splits);
            OrthantParams p{gamma, bb, aa};
            Interval v = f_eval(p, Mode::certified), d = f_dbeta(p, DerivOrder::first),
                     c = f_dbeta(p, DerivOrder::combo);
            f = first ? v : hull(f, v);
            fb = first ? d : hull(fb, d);
            combo = first ? c : hull(combo, c);
            first = false;
        }
    }
    r.enclose("f over box", f);
    r.enclose("df/dbeta over box", fb);
    r.enclose("beta f_bb + 2 f_b over box", combo);
    r.check("f inside [.36544, .37761]", f.subset_of(lit(".36544").lo(), lit(".37761").hi()), format_interval(f));
    r.check("df/dbeta inside [.2780, .3110]", fb.subset_of(lit(".2780").lo(), lit(".3110").hi()),
            format_interval(fb));
    r.check("beta f_bb + 2 f_b <= .630", combo.hi() <= lit(".630").hi(), format_interval(combo));
    r.notes.push_back("box enclosures are hulls over a " + std::to_string(splits) + "x" + std::to_string(splits) +
                      " cell cover");
}

}  // namespace

ClaimReport certify_hessian(const std::string& gamma_lo, const std::string& gamma_hi, const HessianOptions& opt,
                            std::vector<HessianBox>* boxes_out) {
    auto t0 = clock_type::now();
    ClaimReport r;
    r.claim_id = "claim-b4";
    r.gamma = "[" + gamma_lo + ", " + gamma_hi + "]";
    try {
        Interval g = hull(parse_decimal(gamma_lo), parse_decimal(gamma_hi));
        r.enclose("gamma box", g);
        if (!r.check("gamma box inside the admissible box", gamma_admissible(g), format_interval(g))) {
            r.wall_seconds = seconds_since(t0);
            return r;
        }
        const EntryBounds eb;
        std::vector<HessianBox> done;
        std::string violation;
        std::function<void(const Interval&, const Interval&, const Interval&, int)> visit =
            [&](const Interval& b, const Interval& a1, const Interval& a2, int depth) {
                if (!violation.empty()) return;
                F2Hessian h = F2_hessian(b, a1, a2, g);
                std::string bad = entry_violation(h, eb);
                bool pd = sylvester_holds(h, 0.0);
                if (bad.empty() && pd && depth >= opt.min_depth) {
                    done.push_back({b, a1, a2, h});
                    return;
                }
                if (depth >= opt.max_depth) {
                    violation = (bad.empty() ? std::string("negated Hessian not positive definite") : bad) +
                                " on beta " + format_interval(b) + ", a1 " + format_interval(a1) + ", a2 " +
                                format_interval(a2);
                    return;
                }
                // split the widest side relative to the starting box
                double wb = b.width() / opt.beta.width(), w1 = a1.width() / opt.alpha.width(),
                       w2 = a2.width() / opt.alpha.width();
                if (wb >= w1 && wb >= w2) {
                    auto [x, y] = halves(b);
                    visit(x, a1, a2, depth + 1);
                    visit(y, a1, a2, depth + 1);
                } else if (w1 >= w2) {
                    auto [x, y] = halves(a1);
                    visit(b, x, a2, depth + 1);
                    visit(b, y, a2, depth + 1);
                } else {
                    auto [x, y] = halves(a2);
                    visit(b, a1, x, depth + 1);
                    visit(b, a1, y, depth + 1);
                }
            };
        visit(opt.beta, opt.alpha, opt.alpha, 0);
        if (!violation.empty()) {
            r.check("Hessian entry bounds", false, violation);
        } else {
            Interval bb = done.front().entries.bb, m1 = done.front().entries.ba1, m2 = done.front().entries.ba2,
                     aa1 = done.front().entries.a1a1, aa2 = done.front().entries.a2a2;
            for (const auto& x : done) {
                bb = hull(bb, x.entries.bb);
                m1 = hull(m1, x.entries.ba1);
                m2 = hull(m2, x.entries.ba2);
                aa1 = hull(aa1, x.entries.a1a1);
                aa2 = hull(aa2, x.entries.a2a2);
            }
            r.enclose("d2F2/dbeta2", bb);
            r.enclose("d2F2/dbeta da1", m1);
            r.enclose("d2F2/dbeta da2", m2);
            r.enclose("d2F2/da1^2", aa1);
            r.enclose("d2F2/da2^2", aa2);
            r.enclose("d2F2/da1 da2", Interval(0.0));
            r.check("d2F2/dbeta2 <= -2.15", bb.hi() <= eb.bb_max, format_interval(bb));
            r.check("|d2F2/dbeta da_i| <= 2.05", std::max(m1.mag(), m2.mag()) <= eb.mixed_max,
                    format_interval(hull(m1, m2)));
            r.check("d2F2/da_i^2 <= -4", std::max(aa1.hi(), aa2.hi()) <= eb.aa_max, format_interval(hull(aa1, aa2)));
            double delta = sylvester_margin(done);
            r.enclose("delta", Interval(delta));
            r.check("negated Hessian >= delta I with delta > 0", delta > 0, fmt(delta));
            r.notes.push_back("boxes: " + std::to_string(done.size()));
        }
        r.segments_checked = done.size();
        box_cross_checks(r, g, 1);
        if (boxes_out) *boxes_out = std::move(done);
    } catch (const std::exception& e) {
        r.notes.push_back(std::string("evaluation error: ") + e.what());
        r.verdict = combine(r.verdict, Verdict::not_reached);
        r.wall_seconds = seconds_since(t0);
        return r;
    }
    finish(r, Mode::certified, t0);
    return r;
}

ClaimReport certify_box_enclosures(const std::string& gamma_s, int splits) {
    auto t0 = clock_type::now();
    ClaimReport r;
    r.claim_id = "box-enclosures";
    r.gamma = gamma_s;
    try {
        box_cross_checks(r, parse_decimal(gamma_s), std::max(1, splits));
    } catch (const std::exception& e) {
        r.notes.push_back(std::string("evaluation error: ") + e.what());
        r.verdict = combine(r.verdict, Verdict::not_reached);
        r.wall_seconds = seconds_since(t0);
        return r;
    }
    finish(r, Mode::certified, t0);
    return r;
}

AssumptionVerdict assemble_assumption_report(const std::vector<ClaimReport>& reports) {
    ClaimReport r;
    r.claim_id = "assumption";
    Verdict v = Verdict::certified;
    bool complete = true;
    for (const auto& id : assumption_inputs) {
        const ClaimReport* found = nullptr;
        for (const auto& x : reports)
            if (x.claim_id == id) found = &x;
        if (!found) {
            complete = false;
            r.notes.push_back("IncompleteInputs: missing " + id);
            continue;
        }
        if (r.gamma.empty()) r.gamma = found->gamma;
        if (found->mode != "certified") r.notes.push_back(id + " ran in mode " + found->mode);
        v = combine(v, found->verdict);
        r.checks.push_back({id, found->verdict == Verdict::certified || found->verdict == Verdict::estimated,
                            to_string(found->verdict)});
        r.segments_checked += found->segments_checked;
    }
    if (!complete) v = combine(v, Verdict::not_reached);
    r.notes.push_back("claim-b1: sup over beta in [0,.001] equals 2 sup F1");
    r.notes.push_back("claim-b2: F2 < 2 sup F1 on the middle segments");
    r.notes.push_back("claim-b3: near beta = 1/2 the supremum localizes to the box around (alpha*, alpha*)");
    r.notes.push_back("claim-b4: F2 is strictly concave on that box; its gradient vanishes at (1/2, alpha*, alpha*)");
    r.notes.push_back("together: sup F2 = max(2 sup F1, 4 sup F1) with a negative definite Hessian at the maximizer");
    r.verdict = v;
    return {v, r};
}

}  // namespace fc
