#pragma once

#include <cstddef>
#include <functional>
#include <optional>

#include "fc/rint.hpp"

namespace fc {

struct IntegrandDomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// eval returns a range enclosure over its argument. d2, when present,
// encloses f'' over a subinterval and enables the second order rule
//   int_I f = |I| f(c) + |I|^3/24 f''(xi).
// deriv_bound is a uniform bound on |f'| used when d2 is absent.
struct Integrand {
    std::function<Interval(const Interval&)> eval;
    std::function<Interval(const Interval&)> d2;
    std::optional<double> deriv_bound;
};

struct Enclosure {
    Interval value;
    std::size_t subdivisions = 0;
    double truncation_error = 0;
    bool width_reached = true;
};

constexpr std::size_t default_subdivision_cap = std::size_t(1) << 20;

Enclosure integrate_finite(const Integrand& f, double a, double b, double target_width,
                           std::size_t cap = default_subdivision_cap);

// |f(x)| <= exp(-scale x^2) beyond the cutoff is asserted by the caller.
Enclosure integrate_semiinfinite(const Integrand& f, double a, double scale, double target_width,
                                 std::size_t cap = default_subdivision_cap);

// Non-rigorous composite Gauss-Legendre reference.
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int panels,
                      int order = 20);

}  // namespace fc
