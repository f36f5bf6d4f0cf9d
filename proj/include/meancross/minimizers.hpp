#pragma once

// Minimum or infimum over the shape parameter of g_κ = P(X <= κ·EX).
//
// Weibull (shape α): substitute x = 1/α + 1, h_κ(x) = ln(κΓ(x))/(x-1),
// g = 1 - exp(-exp(h)). For κ > 1 the minimizer is the unique zero x₀ of
// φ_κ(x) = (x-1)ψ(x) - ln(κΓ(x)) on (1, ∞) and α₀ = 1/(x₀-1); for κ <= 1
// only an infimum exists, approached as α → ∞.
//
// Pareto (shape θ): substitute x = 1 - 1/θ, h_κ(x) = ln(x/κ)/(x-1),
// g = 1 - exp(-h). κ < 1 attains 0 at θ = 1/(1-κ); κ = 1 has infimum 1 - 1/e
// as θ → ∞; κ > 1 attains its minimum at θ₀ = 1/(1-x₀) with x₀ the unique
// zero of φ_κ(x) = 1 - 1/x - ln(x/κ) on (0, 1).
//
// Binomial: q_m = P(B(n, m/n) <= m), minimized over m near 2n/3.

#include "meancross/distributions.hpp"
#include "meancross/rootfind.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace meancross {

enum class LimitDirection { ShapeToInfinity };

struct AttainedMinimum {
    double argmin;  // α₀ or θ₀
    double value;
    std::optional<rootfind::RootResult> root;  // set when a characteristic root was solved
};

struct Infimum {
    double value;
    LimitDirection limit;
};

struct MinimizationResult {
    Family family;
    double kappa;
    std::variant<AttainedMinimum, Infimum> outcome;

    [[nodiscard]] bool attained() const noexcept { return std::holds_alternative<AttainedMinimum>(outcome); }
    [[nodiscard]] double value() const noexcept;
    /// Throws std::bad_variant_access for an infimum.
    [[nodiscard]] const AttainedMinimum& minimum() const { return std::get<AttainedMinimum>(outcome); }
    [[nodiscard]] const Infimum& infimum() const { return std::get<Infimum>(outcome); }
};

/// |κ - 1| at or below this is classified as κ = 1.
inline constexpr double kKappaUnitTolerance = 1e-15;

[[nodiscard]] double phi_weibull(double x, double kappa);
[[nodiscard]] double h_weibull(double x, double kappa);
[[nodiscard]] double phi_pareto(double x, double kappa);
[[nodiscard]] double h_pareto(double x, double kappa);

[[nodiscard]] MinimizationResult minimize_weibull(const KappaQuery& q, const rootfind::Tolerances& tol = {});
[[nodiscard]] MinimizationResult minimize_pareto(const KappaQuery& q, const rootfind::Tolerances& tol = {});
/// Dispatch on family; Binomial has no continuous shape and throws DomainError.
[[nodiscard]] MinimizationResult minimize(Family family, const KappaQuery& q, const rootfind::Tolerances& tol = {});

struct ChvatalResult {
    std::int64_t n;
    std::int64_t m_star;
    std::vector<double> q_values;     // q_m for m = 0..n
    std::vector<std::int64_t> ties;   // other m whose q_m equals q_{m*} to 1e-12 relative
};

/// The integer in {0..n} nearest to 2n/3 (never a half-integer).
[[nodiscard]] std::int64_t nearest_two_thirds(std::int64_t n) noexcept;

/// Enumerates q_m = P(B(n, m/n) <= m) for all m and returns the smallest
/// index attaining the minimum. Requires n >= 2.
[[nodiscard]] ChvatalResult chvatal_argmin(std::int64_t n);

}  // namespace meancross
