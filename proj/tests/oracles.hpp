#pragma once

// Test-only reference computations. Nothing here calls into the library;
// each oracle is an independent route to the quantity it checks.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>

namespace oracle {

/// Composite Simpson rule on [a, b] with an even number of panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t panels) {
    if (panels % 2 != 0) ++panels;
    const long double h = (static_cast<long double>(b) - a) / panels;
    long double sum = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i) {
        sum += static_cast<long double>((i % 2 == 1) ? 4.0 : 2.0) * f(a + static_cast<double>(h * i));
    }
    return static_cast<double>(sum * h / 3.0L);
}

/// ψ(z) from the series  -γ + (z-1) Σ_{n>=0} 1/((n+1)(z+n)),
/// truncated after `terms` with a midpoint-integral tail estimate.
inline double digamma_series(double z, std::size_t terms, double gamma) {
    long double sum = 0.0L;
    for (std::size_t n = terms; n-- > 0;) {
        sum += 1.0L / ((n + 1.0L) * (z + static_cast<long double>(n)));
    }
    const long double n0 = static_cast<long double>(terms) - 0.5L;
    const long double tail_times_zm1 = std::log((n0 + z) / (n0 + 1.0L));
    return static_cast<double>(-gamma + (z - 1.0L) * sum + tail_times_zm1);
}

/// Raw truncated series, no tail correction.
inline double digamma_series_raw(double z, std::size_t terms, double gamma) {
    long double sum = 0.0L;
    for (std::size_t n = terms; n-- > 0;) {
        sum += 1.0L / ((n + 1.0L) * (z + static_cast<long double>(n)));
    }
    return static_cast<double>(-gamma + (z - 1.0L) * sum);
}

/// ψ′(z) = Σ 1/(z+n)^2 with an integral tail correction 1/(z+N-1/2).
inline double trigamma_series(double z, std::size_t terms) {
    long double sum = 0.0L;
    for (std::size_t n = terms; n-- > 0;) {
        const long double d = z + static_cast<long double>(n);
        sum += 1.0L / (d * d);
    }
    return static_cast<double>(sum + 1.0L / (z + terms - 0.5L));
}

/// Partial sum Σ_{n=1}^{N} [1/n - ln(1 + 1/n)].
inline long double euler_partial_sum(std::size_t terms) {
    long double sum = 0.0L;
    for (std::size_t n = terms; n >= 1; --n) {
        const long double x = 1.0L / static_cast<long double>(n);
        sum += x - std::log1p(x);
    }
    return sum;
}

/// The same partial sum with the Euler–Maclaurin correction of its tail,
/// giving γ to O(N^-6).
inline long double euler_gamma_accelerated(std::size_t terms) {
    const long double n = static_cast<long double>(terms);
    const long double tail = std::log1p(1.0L / n) - 1.0L / (2.0L * n) + 1.0L / (12.0L * n * n) -
                             1.0L / (120.0L * n * n * n * n);
    return euler_partial_sum(terms) + tail;
}

/// Central finite difference.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
