#include "meancross/distributions.hpp"

#include "meancross/errors.hpp"
#include "meancross/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace meancross {

namespace {

void require_unit_open(double u, const char* fn) {
    if (!(u > 0.0 && u < 1.0)) {
        throw DomainError(std::string(fn) + ": u must lie in (0, 1)");
    }
}

// Relative slack on the Pareto right endpoint θ = 1/(1-κ), which callers
// usually obtain through a rounded division.
constexpr double kEndpointSlack = 8.0 * std::numeric_limits<double>::epsilon();

// Loader's saddle-point pieces: stirlerr(n) = ln n! - ln(sqrt(2πn)(n/e)^n)
// and bd0(x, np) = x ln(x/np) + np - x.
double stirlerr(double n) {
    if (n <= 15.0) {
        constexpr double half_log_two_pi = 0.91893853320467274178032973640562;
        return specfun::ln_gamma(n + 1.0) - (n + 0.5) * std::log(n) + n - half_log_two_pi;
    }
    constexpr double s0 = 1.0 / 12.0;
    constexpr double s1 = 1.0 / 360.0;
    constexpr double s2 = 1.0 / 1260.0;
    constexpr double s3 = 1.0 / 1680.0;
    constexpr double s4 = 1.0 / 1188.0;
    const double inv = 1.0 / n;
    const double inv2 = inv * inv;
    if (n > 500) return (s0 - s1 * inv2) * inv;
    if (n > 80) return (s0 - (s1 - s2 * inv2) * inv2) * inv;
    if (n > 35) return (s0 - (s1 - (s2 - s3 * inv2) * inv2) * inv2) * inv;
    return (s0 - (s1 - (s2 - (s3 - s4 * inv2) * inv2) * inv2) * inv2) * inv;
}

double bd0(double x, double np) {
    if (std::abs(x - np) < 0.1 * (x + np)) {
        const double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2.0 * x * v;
        for (int j = 1; j < 1000; ++j) {
            ej *= v * v;
            const double next = s + ej / (2 * j + 1);
            if (next == s) return next;
            s = next;
        }
        return s;
    }
    return x * std::log(x / np) + np - x;
}

}  // namespace

std::string_view family_name(Family f) noexcept {
    switch (f) {
        case Family::Weibull: return "weibull";
        case Family::Pareto: return "pareto";
        case Family::Binomial: return "binomial";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    if (name == "weibull") return Family::Weibull;
    if (name == "pareto") return Family::Pareto;
    if (name == "binomial") return Family::Binomial;
    throw DomainError("unknown family '" + std::string(name) + "'");
}

WeibullParams::WeibullParams(double alpha, double theta)
    : alpha_(require_positive(alpha, "weibull alpha")), theta_(require_positive(theta, "weibull theta")) {}

ParetoParams::ParetoParams(double a, double theta)
    : a_(require_positive(a, "pareto a")), theta_(require_positive(theta, "pareto theta")) {}

BinomialParams::BinomialParams(std::int64_t n, double p) : n_(n), p_(p) {
    if (n < 1) throw DomainError("binomial n must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial p must lie in [0, 1]");
}

Family family_of(const FamilyParams& params) noexcept {
    return static_cast<Family>(params.index());
}

KappaQuery::KappaQuery(double kappa) : kappa_(require_positive(kappa, "kappa")) {}

// Weibull

double weibull_mean(const WeibullParams& p) {
    const double inv_alpha = 1.0 / p.alpha();
    return std::exp(inv_alpha * std::log(p.theta()) + specfun::ln_gamma(inv_alpha + 1.0));
}

double weibull_pdf(const WeibullParams& p, double t) {
    if (!(t > 0.0)) return 0.0;
    const double ta = std::pow(t, p.alpha());
    return p.alpha() / p.theta() * (ta / t) * std::exp(-ta / p.theta());
}

double weibull_cdf(const WeibullParams& p, double t) {
    if (!(t > 0.0)) return 0.0;
    return -std::expm1(-std::pow(t, p.alpha()) / p.theta());
}

double weibull_prob_below_kappa_mean(double alpha, const KappaQuery& q) {
    require_positive(alpha, "weibull alpha");
    const double log_power = alpha * (std::log(q.kappa()) + specfun::ln_gamma(1.0 / alpha + 1.0));
    return -std::expm1(-std::exp(log_power));
}

double weibull_sample(const WeibullParams& p, double u) {
    require_unit_open(u, "weibull_sample");
    return std::pow(p.theta() * -std::log1p(-u), 1.0 / p.alpha());
}

// Pareto

double pareto_mean(const ParetoParams& p) {
    if (!(p.theta() > 1.0)) {
        throw MeanUndefinedError("pareto mean undefined for theta <= 1 (theta = " + std::to_string(p.theta()) + ")");
    }
    return p.theta() * p.a() / (p.theta() - 1.0);
}

double pareto_pdf(const ParetoParams& p, double t) {
    if (!(t > p.a())) return 0.0;
    return p.theta() / t * std::pow(p.a() / t, p.theta());
}

double pareto_cdf(const ParetoParams& p, double t) {
    if (!(t > p.a())) return 0.0;
    return -std::expm1(p.theta() * std::log(p.a() / t));
}

bool pareto_shape_admissible(double theta, double kappa) noexcept {
    if (!(kappa > 0.0) || !std::isfinite(kappa) || !(theta > 1.0) || !std::isfinite(theta)) return false;
    if (kappa >= 1.0) return true;
    return (theta - 1.0) / (kappa * theta) <= 1.0 + kEndpointSlack;
}

double pareto_prob_below_kappa_mean(double theta, const KappaQuery& q) {
    if (!(theta > 1.0) || !std::isfinite(theta)) {
        throw MeanUndefinedError("pareto mean undefined for theta <= 1 (theta = " + std::to_string(theta) + ")");
    }
    if (!pareto_shape_admissible(theta, q.kappa())) {
        throw DomainError("pareto: theta must not exceed 1/(1-kappa) when kappa < 1");
    }
    const double ratio = (theta - 1.0) / (q.kappa() * theta);
    if (q.kappa() < 1.0 && ratio >= 1.0 - kEndpointSlack) return 0.0;
    return -std::expm1(theta * std::log(ratio));
}

double pareto_sample(const ParetoParams& p, double u) {
    require_unit_open(u, "pareto_sample");
    return p.a() * std::pow(1.0 - u, -1.0 / p.theta());
}

// Binomial

double binomial_mean(const BinomialParams& p) noexcept { return static_cast<double>(p.n()) * p.p(); }

double binomial_pmf(const BinomialParams& params, std::int64_t k) {
    const std::int64_t n = params.n();
    const double p = params.p();
    if (k < 0 || k > n) return 0.0;
    if (p == 0.0) return k == 0 ? 1.0 : 0.0;
    if (p == 1.0) return k == n ? 1.0 : 0.0;
    const double nd = static_cast<double>(n);
    if (k == 0) return std::exp(nd * std::log1p(-p));
    if (k == n) return std::exp(nd * std::log(p));
    const double kd = static_cast<double>(k);
    const double q = 1.0 - p;
    const double lc = stirlerr(nd) - stirlerr(kd) - stirlerr(nd - kd) - bd0(kd, nd * p) - bd0(nd - kd, nd * q);
    return std::exp(lc) * std::sqrt(nd / (2.0 * std::numbers::pi * kd * (nd - kd)));
}

double binomial_cdf(const BinomialParams& params, std::int64_t m) {
    const std::int64_t n = params.n();
    const double p = params.p();
    if (m < 0) return 0.0;
    if (m >= n) return 1.0;
    if (p == 0.0) return 1.0;
    if (p == 1.0) return 0.0;

    // Terms decrease monotonically away from the mode, so start from the
    // largest included term and walk outward with the ratio recurrence.
    const auto mode = std::clamp<std::int64_t>(
        static_cast<std::int64_t>(std::floor((static_cast<double>(n) + 1.0) * p)), 0, n);
    const std::int64_t anchor = std::min(m, mode);
    const double anchor_term = binomial_pmf(params, anchor);
    const double odds_down = (1.0 - p) / p;
    const double odds_up = p / (1.0 - p);
    constexpr double cutoff = 1e-18;

    double sum = anchor_term;
    double term = anchor_term;
    for (std::int64_t k = anchor; k >= 1; --k) {
        // pmf(k-1) / pmf(k)
        term *= static_cast<double>(k) / static_cast<double>(n - k + 1) * odds_down;
        sum += term;
        if (term < cutoff * sum) break;
    }
    term = anchor_term;
    for (std::int64_t k = anchor; k < m; ++k) {
        term *= static_cast<double>(n - k) / static_cast<double>(k + 1) * odds_up;
        sum += term;
        if (term < cutoff * sum) break;
    }
    return std::min(sum, 1.0);
}

std::int64_t binomial_sample(const BinomialParams& p, double u) {
    require_unit_open(u, "binomial_sample");
    std::int64_t lo = 0;
    std::int64_t hi = p.n();
    while (lo < hi) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        if (binomial_cdf(p, mid) >= u) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

}  // namespace meancross
