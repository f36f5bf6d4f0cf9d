#include "meancross/specfun.hpp"

#include "meancross/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace meancross::specfun {

namespace {

// Below this the recurrences shift the argument before the asymptotic
// expansions are applied.
constexpr double kAsymptoticThreshold = 10.0;

// (-1)^n (zeta(n) - 1) / n for n = 2..40, the Taylor coefficients of
// ln Γ(2+z) - z(1-γ) around z = 0.
constexpr std::array<double, 39> kZetaMinusOne = {
    0.64493406684822643647,    0.2020569031595942854,     0.082323233711138191516,
    0.036927755143369926331,   0.017343061984449139715,   0.0083492773819228268398,
    0.0040773561979443393787,  0.0020083928260822144179,  0.00099457512781808533715,
    0.0004941886041194645587,  0.00024608655330804829864, 0.00012271334757848914675,
    6.1248135058704829259e-5,  3.0588236307020493552e-5,  1.5282259408651871733e-5,
    7.6371976378997622736e-6,  3.8172932649998398565e-6,  1.9082127165539389257e-6,
    9.5396203387279611315e-7,  4.7693298678780646312e-7,  2.3845050272773299e-7,
    1.1921992596531107307e-7,  5.9608189051259479612e-8,  2.9803503514652280186e-8,
    1.4901554828365041235e-8,  7.450711789835429492e-9,   3.7253340247884570548e-9,
    1.8626597235130490064e-9,  9.3132743241966818287e-10, 4.656629065033784073e-10,
    2.328311833676505492e-10,  1.1641550172700519776e-10, 5.8207720879027008892e-11,
    2.9103850444970996869e-11, 1.4551921891041984236e-11, 7.2759598350574810145e-12,
    3.6379795473786511902e-12, 1.8189896503070659476e-12, 9.0949478402638892825e-13,
};

// ln Γ(2+z) for |z| <= 0.5. Exactly zero at z = 0.
double ln_gamma_two_plus(double z) {
    double poly = 0.0;
    for (std::size_t i = kZetaMinusOne.size(); i-- > 0;) {
        const int n = static_cast<int>(i) + 2;
        const double coeff = ((n % 2 == 0) ? 1.0 : -1.0) * kZetaMinusOne[i] / n;
        poly = poly * z + coeff;
    }
    return z * (1.0 - kEulerGamma) + z * z * poly;
}

// Stirling series with Bernoulli corrections B_2k / (2k(2k-1) x^(2k-1)).
double ln_gamma_asymptotic(double x) {
    constexpr std::array<double, 8> c = {
        1.0 / 12.0,    -1.0 / 360.0,          1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0,  -691.0 / 360360.0,     1.0 / 156.0,  -3617.0 / 122400.0,
    };
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        series = series * inv2 + c[k];
    }
    constexpr double half_log_two_pi = 0.91893853320467274178032973640562;
    return (x - 0.5) * std::log(x) - x + half_log_two_pi + series * inv;
}

// ψ(x) ~ ln x - 1/(2x) - Σ B_2k / (2k x^2k).
double digamma_asymptotic(double x) {
    constexpr std::array<double, 8> c = {
        1.0 / 12.0,  -1.0 / 120.0,       1.0 / 252.0, -1.0 / 240.0,
        1.0 / 132.0, -691.0 / 32760.0,   1.0 / 12.0,  -3617.0 / 8160.0,
    };
    const double inv2 = 1.0 / (x * x);
    double series = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        series = series * inv2 + c[k];
    }
    return std::log(x) - 0.5 / x - series * inv2;
}

// ψ′(x) ~ 1/x + 1/(2x^2) + Σ B_2k / x^(2k+1).
double trigamma_asymptotic(double x) {
    constexpr std::array<double, 8> c = {
        1.0 / 6.0,    -1.0 / 30.0,       1.0 / 42.0, -1.0 / 30.0,
        5.0 / 66.0,   -691.0 / 2730.0,   7.0 / 6.0,  -3617.0 / 510.0,
    };
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        series = series * inv2 + c[k];
    }
    return inv + 0.5 * inv2 + series * inv2 * inv;
}

double checked(double x, const char* fn) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError(std::string(fn) + ": argument must be finite and > 0");
    }
    return x;
}

}  // namespace

PositiveReal::PositiveReal(double value) : value_(checked(value, "PositiveReal")) {}

EulerGamma euler_gamma() noexcept { return EulerGamma{kEulerGamma}; }

double ln_gamma(double x) {
    checked(x, "ln_gamma");
    if (x >= kAsymptoticThreshold) {
        return ln_gamma_asymptotic(x);
    }
    if (x < 0.5) {
        // ln Γ(x) = ln Γ(1+x) - ln x, with 1+x in (1, 1.5).
        return ln_gamma_two_plus(x) - std::log1p(x) - std::log(x);
    }
    if (x < 1.5) {
        // ln Γ(1+z) = ln Γ(2+z) - log1p(z)
        const double z = x - 1.0;
        return ln_gamma_two_plus(z) - std::log1p(z);
    }
    if (x <= 2.5) {
        return ln_gamma_two_plus(x - 2.0);
    }
    double product = 1.0;
    while (x > 2.5) {
        x -= 1.0;
        product *= x;
    }
    return std::log(product) + ln_gamma_two_plus(x - 2.0);
}

double ln_gamma(PositiveReal x) { return ln_gamma(x.value()); }

double digamma(double x) {
    checked(x, "digamma");
    double shift = 0.0;
    while (x < kAsymptoticThreshold) {
        shift += 1.0 / x;
        x += 1.0;
    }
    return digamma_asymptotic(x) - shift;
}

double digamma(PositiveReal x) { return digamma(x.value()); }

double trigamma(double x) {
    checked(x, "trigamma");
    double shift = 0.0;
    while (x < kAsymptoticThreshold) {
        shift += 1.0 / (x * x);
        x += 1.0;
    }
    return trigamma_asymptotic(x) + shift;
}

double trigamma(PositiveReal x) { return trigamma(x.value()); }

}  // namespace meancross::specfun
