#include "fc/quad.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace fc {

namespace {

struct Piece {
    double a, b;
    Interval value;
    double width;
};

struct Wider {
    bool operator()(const Piece& x, const Piece& y) const {
        if (x.width != y.width) return x.width < y.width;
        return x.a > y.a;  // deterministic tie break
    }
};

Interval piece_rule(const Integrand& f, double a, double b) {
    Interval I(a, b);
    Interval h = Interval(b) - Interval(a);
    if (f.d2) {
        Interval c = (Interval(a) + Interval(b)) * 0.5;
        Interval h3 = sqr(h) * h;
        return h * f.eval(c) + h3 * f.d2(I) / 24.0;
    }
    if (f.deriv_bound) {
        Interval c = (Interval(a) + Interval(b)) * 0.5;
        Interval slack = sqr(h) * (*f.deriv_bound / 4.0);
        return h * f.eval(c) + Interval(-slack.hi(), slack.hi());
    }
    return h * f.eval(I);
}

// Compensated sum: s plus the enclosed TwoSum residuals is the exact sum of xs.
Interval compensated(const std::vector<double>& xs) {
    double s = 0;
    Interval c(0.0);
    for (double x : xs) {
        double t = s + x;
        c = c + Interval(detail::two_sum_err(s, x, t));
        s = t;
    }
    return Interval(s) + c;
}

Interval enclosed_sum(const std::vector<Piece>& pieces) {
    std::vector<double> lo, hi;
    lo.reserve(pieces.size());
    hi.reserve(pieces.size());
    for (const auto& p : pieces) {
        lo.push_back(p.value.lo());
        hi.push_back(p.value.hi());
    }
    return Interval(compensated(lo).lo(), compensated(hi).hi());
}

Piece make_piece(const Integrand& f, double a, double b) {
    Interval v;
    try {
        v = piece_rule(f, a, b);
    } catch (const DomainViolation& e) {
        throw IntegrandDomainError(e.what());
    } catch (const DivisionByIntervalContainingZero& e) {
        throw IntegrandDomainError(e.what());
    }
    return {a, b, v, v.width()};
}

}  // namespace

Enclosure integrate_finite(const Integrand& f, double a, double b, double target_width,
                           std::size_t cap) {
    if (!(a <= b)) throw std::invalid_argument("integrate_finite requires a <= b");
    Enclosure out;
    if (a == b) {
        out.value = Interval(0.0);
        return out;
    }

    std::vector<Piece> heap;
    heap.push_back(make_piece(f, a, b));
    Wider wider;
    double total = heap.front().width;
    const double min_len = (b - a) * 0x1p-40;
    bool stuck = false;

    Interval sum;
    double goal = target_width;
    for (int round = 0;; ++round) {
        while (total > goal && heap.size() < cap) {
            const Piece& top = heap.front();
            double m = top.a / 2 + top.b / 2;
            if (!(top.b - top.a > min_len) || m <= top.a || m >= top.b) {
                stuck = true;
                break;
            }
            std::pop_heap(heap.begin(), heap.end(), wider);
            Piece p = heap.back();
            heap.pop_back();
            Piece l = make_piece(f, p.a, m), r = make_piece(f, m, p.b);
            total += l.width + r.width - p.width;
            heap.push_back(l);
            std::push_heap(heap.begin(), heap.end(), wider);
            heap.push_back(r);
            std::push_heap(heap.begin(), heap.end(), wider);
            // running total drifts; refresh occasionally
            if (heap.size() % 4096 == 0) {
                total = 0;
                for (const auto& q : heap) total += q.width;
            }
        }

        std::vector<Piece> ordered = heap;
        std::sort(ordered.begin(), ordered.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
        sum = enclosed_sum(ordered);
        // rounding in the sum can exceed the running total
        if (stuck || heap.size() >= cap || sum.width() <= target_width || round == 3) break;
        goal *= 0.5;
    }

    out.value = sum;
    out.subdivisions = heap.size();
    out.width_reached = !stuck && sum.width() <= target_width;
    return out;
}

Enclosure integrate_semiinfinite(const Integrand& f, double a, double scale, double target_width,
                                 std::size_t cap) {
    if (!(scale > 0)) throw std::invalid_argument("gaussian decay scale must be positive");
    // int_T^inf exp(-s x^2) dx <= exp(-s T^2) / (2 s T) for T > 0
    auto tail = [&](double T) {
        Interval t(T), s(scale);
        return (exp(-(s * sqr(t))) / (2.0 * s * t)).hi();
    };
    double T = std::max(a, 1.0);
    while (tail(T) > target_width / 10) T *= 1.25;

    Enclosure body = integrate_finite(f, a, T, target_width * 0.9, cap);
    double tb = tail(T);
    body.value = body.value + Interval(-tb, tb);
    body.truncation_error = tb;
    body.width_reached = body.width_reached && body.value.width() <= target_width;
    return body;
}

namespace {

struct GLRule {
    std::vector<double> x, w;
};

const GLRule& gl_rule(int n) {
    static thread_local std::array<GLRule, 65> cache;
    GLRule& r = cache.at(n);
    if (!r.x.empty()) return r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5)), dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = z;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1);
            double dz = p1 / dp;
            z -= dz;
            if (std::fabs(dz) < 1e-16) break;
        }
        r.x[i] = z;
        r.w[i] = 2 / ((1 - z * z) * dp * dp);
    }
    return r;
}

}  // namespace

double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels,
                      int order) {
    const GLRule& r = gl_rule(order);
    double h = (b - a) / panels, sum = 0;
    for (int p = 0; p < panels; ++p) {
        double c = a + (p + 0.5) * h, part = 0;
        for (int i = 0; i < order; ++i) part += r.w[i] * f(c + 0.5 * h * r.x[i]);
        sum += part * 0.5 * h;
    }
    return sum;
}

}  // namespace fc
