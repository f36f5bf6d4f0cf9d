#pragma once

// Weibull, Pareto and Binomial families: densities, CDFs, means, the
// closed-form probability P(X <= κ·EX), and inverse-transform samplers.
//
// Samplers take the uniform variate explicitly; randomness lives in verify.

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace meancross {

enum class Family { Weibull, Pareto, Binomial };

[[nodiscard]] std::string_view family_name(Family f) noexcept;
/// Inverse of family_name; throws DomainError for unknown names.
[[nodiscard]] Family parse_family(std::string_view name);

/// Weibull with density (α/θ) x^{α-1} exp(-x^α/θ) on x > 0.
class WeibullParams {
public:
    WeibullParams(double alpha, double theta);
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double theta() const noexcept { return theta_; }

private:
    double alpha_;
    double theta_;
};

/// Pareto with density θ a^θ x^{-(θ+1)} on x > a. The mean exists only for θ > 1.
class ParetoParams {
public:
    ParetoParams(double a, double theta);
    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double theta() const noexcept { return theta_; }

private:
    double a_;
    double theta_;
};

class BinomialParams {
public:
    BinomialParams(std::int64_t n, double p);
    [[nodiscard]] std::int64_t n() const noexcept { return n_; }
    [[nodiscard]] double p() const noexcept { return p_; }

private:
    std::int64_t n_;
    double p_;
};

using FamilyParams = std::variant<WeibullParams, ParetoParams, BinomialParams>;

[[nodiscard]] Family family_of(const FamilyParams& params) noexcept;

/// Mean multiplier κ > 0.
class KappaQuery {
public:
    explicit KappaQuery(double kappa);
    [[nodiscard]] double kappa() const noexcept { return kappa_; }

private:
    double kappa_;
};

// Weibull

[[nodiscard]] double weibull_mean(const WeibullParams& p);
[[nodiscard]] double weibull_pdf(const WeibullParams& p, double t);
[[nodiscard]] double weibull_cdf(const WeibullParams& p, double t);
/// g_κ(α) = 1 - exp(-(κ Γ(1/α + 1))^α), evaluated in log domain. Independent of θ.
[[nodiscard]] double weibull_prob_below_kappa_mean(double alpha, const KappaQuery& q);
/// Inverse CDF, (θ·(-ln(1-u)))^{1/α}, for u in (0, 1).
[[nodiscard]] double weibull_sample(const WeibullParams& p, double u);

// Pareto

/// θa/(θ-1); throws MeanUndefinedError for θ <= 1.
[[nodiscard]] double pareto_mean(const ParetoParams& p);
[[nodiscard]] double pareto_pdf(const ParetoParams& p, double t);
[[nodiscard]] double pareto_cdf(const ParetoParams& p, double t);
/// g_κ(θ) = 1 - ((θ-1)/(κθ))^θ. Valid for θ > 1, and additionally
/// θ <= 1/(1-κ) when κ < 1; exactly 0 on that right endpoint. Independent of a.
[[nodiscard]] double pareto_prob_below_kappa_mean(double theta, const KappaQuery& q);
/// True when (θ, κ) lies in the domain of pareto_prob_below_kappa_mean.
[[nodiscard]] bool pareto_shape_admissible(double theta, double kappa) noexcept;
/// Inverse CDF, a(1-u)^{-1/θ}, for u in (0, 1).
[[nodiscard]] double pareto_sample(const ParetoParams& p, double u);

// Binomial

[[nodiscard]] double binomial_mean(const BinomialParams& p) noexcept;
[[nodiscard]] double binomial_pmf(const BinomialParams& p, std::int64_t k);
/// P(B <= m), summed around the dominant term with saddle-point evaluation
/// of that term. m < 0 gives 0, m >= n gives 1.
[[nodiscard]] double binomial_cdf(const BinomialParams& p, std::int64_t m);
/// Smallest k with P(B <= k) >= u, for u in (0, 1).
[[nodiscard]] std::int64_t binomial_sample(const BinomialParams& p, double u);

}  // namespace meancross
