#include "meancross/minimizers.hpp"

#include "meancross/errors.hpp"
#include "meancross/specfun.hpp"

#include <cmath>
#include <string>

namespace meancross {

namespace {

// Seeds for the characteristic-root brackets.
constexpr double kBoundaryOffset = 1e-9;
constexpr double kGrowth = 2.0;
constexpr std::size_t kExpansionCap = 200;

enum class KappaCase { Below, Unit, Above };

KappaCase classify(double kappa) {
    if (std::abs(kappa - 1.0) <= kKappaUnitTolerance) return KappaCase::Unit;
    return kappa < 1.0 ? KappaCase::Below : KappaCase::Above;
}

double require_kappa(double kappa) { return require_positive(kappa, "kappa"); }

}  // namespace

double MinimizationResult::value() const noexcept {
    return std::visit([](const auto& o) { return o.value; }, outcome);
}

double phi_weibull(double x, double kappa) {
    require_kappa(kappa);
    if (!(x > 1.0) || !std::isfinite(x)) throw DomainError("phi_weibull: x must be finite and > 1");
    return (x - 1.0) * specfun::digamma(x) - std::log(kappa) - specfun::ln_gamma(x);
}

double h_weibull(double x, double kappa) {
    require_kappa(kappa);
    if (!(x > 1.0) || !std::isfinite(x)) throw DomainError("h_weibull: x must be finite and > 1");
    return (std::log(kappa) + specfun::ln_gamma(x)) / (x - 1.0);
}

double phi_pareto(double x, double kappa) {
    require_kappa(kappa);
    const double upper = kappa < 1.0 ? kappa : 1.0;
    if (!(x > 0.0) || !(x <= upper)) throw DomainError("phi_pareto: x outside (0, min(1, kappa)]");
    return 1.0 - 1.0 / x - std::log(x) + std::log(kappa);
}

double h_pareto(double x, double kappa) {
    require_kappa(kappa);
    const bool inside = kappa < 1.0 ? (x > 0.0 && x <= kappa) : (x > 0.0 && x < 1.0);
    if (!inside) throw DomainError("h_pareto: x outside (0, kappa] for kappa < 1 or (0, 1) for kappa >= 1");
    return (std::log(x) - std::log(kappa)) / (x - 1.0);
}

MinimizationResult minimize_weibull(const KappaQuery& q, const rootfind::Tolerances& tol) {
    const double kappa = q.kappa();
    switch (classify(kappa)) {
        case KappaCase::Below:
            return {Family::Weibull, kappa, Infimum{0.0, LimitDirection::ShapeToInfinity}};
        case KappaCase::Unit: {
            const double value = -std::expm1(-std::exp(-specfun::euler_gamma().value));
            return {Family::Weibull, kappa, Infimum{value, LimitDirection::ShapeToInfinity}};
        }
        case KappaCase::Above: break;
    }
    // φ(1+) = -ln κ < 0 and φ → +∞, so grow the upper end.
    const auto phi = [kappa](double x) { return phi_weibull(x, kappa); };
    const auto bracket = rootfind::expand_bracket(phi, 1.0 + kBoundaryOffset, 2.0, rootfind::Direction::ExpandHi,
                                                  kGrowth, kExpansionCap);
    const auto root = rootfind::bisect(phi, bracket, tol);
    const double alpha0 = 1.0 / (root.root - 1.0);
    const double value = weibull_prob_below_kappa_mean(alpha0, q);
    return {Family::Weibull, kappa, AttainedMinimum{alpha0, value, root}};
}

MinimizationResult minimize_pareto(const KappaQuery& q, const rootfind::Tolerances& tol) {
    const double kappa = q.kappa();
    switch (classify(kappa)) {
        case KappaCase::Below:
            return {Family::Pareto, kappa, AttainedMinimum{1.0 / (1.0 - kappa), 0.0, std::nullopt}};
        case KappaCase::Unit:
            return {Family::Pareto, kappa, Infimum{-std::expm1(-1.0), LimitDirection::ShapeToInfinity}};
        case KappaCase::Above: break;
    }
    // φ → -∞ as x → 0+, φ(1) = ln κ > 0: halve the lower end toward 0.
    const auto phi = [kappa](double x) { return phi_pareto(x, kappa); };
    const auto bracket = rootfind::expand_bracket(phi, 0.5, 1.0 - kBoundaryOffset, rootfind::Direction::ExpandLo,
                                                  kGrowth, kExpansionCap, 0.0);
    const auto root = rootfind::bisect(phi, bracket, tol);
    const double theta0 = 1.0 / (1.0 - root.root);
    const double value = pareto_prob_below_kappa_mean(theta0, q);
    return {Family::Pareto, kappa, AttainedMinimum{theta0, value, root}};
}

MinimizationResult minimize(Family family, const KappaQuery& q, const rootfind::Tolerances& tol) {
    switch (family) {
        case Family::Weibull: return minimize_weibull(q, tol);
        case Family::Pareto: return minimize_pareto(q, tol);
        case Family::Binomial: break;
    }
    throw DomainError("minimize: binomial has no continuous shape parameter; use chvatal_argmin");
}

std::int64_t nearest_two_thirds(std::int64_t n) noexcept { return (2 * n + 1) / 3; }

ChvatalResult chvatal_argmin(std::int64_t n) {
    if (n < 2) throw DomainError("chvatal_argmin: n must be >= 2");
    ChvatalResult result{n, 0, std::vector<double>(static_cast<std::size_t>(n) + 1), {}};
    const double nd = static_cast<double>(n);
    for (std::int64_t m = 0; m <= n; ++m) {
        result.q_values[static_cast<std::size_t>(m)] =
            binomial_cdf(BinomialParams(n, static_cast<double>(m) / nd), m);
    }
    for (std::int64_t m = 1; m <= n; ++m) {
        if (result.q_values[static_cast<std::size_t>(m)] < result.q_values[static_cast<std::size_t>(result.m_star)]) {
            result.m_star = m;
        }
    }
    const double best = result.q_values[static_cast<std::size_t>(result.m_star)];
    for (std::int64_t m = 0; m <= n; ++m) {
        if (m != result.m_star && std::abs(result.q_values[static_cast<std::size_t>(m)] - best) <= 1e-12 * best) {
            result.ties.push_back(m);
        }
    }
    return result;
}

}  // namespace meancross
