#pragma once

// Independent checks of the closed forms and minimizers: adaptive quadrature
// of the densities, seeded Monte Carlo, and brute-force grid scans.

#include "meancross/distributions.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace meancross::verify {

struct RngSeed {
    std::uint64_t seed;
};

/// xoshiro256** (Blackman & Vigna), state filled from SplitMix64.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) noexcept;
    std::uint64_t next() noexcept;
    /// Uniform double strictly inside (0, 1), 53 random bits.
    double uniform_open() noexcept;

private:
    std::array<std::uint64_t, 4> s_{};
};

std::uint64_t splitmix64(std::uint64_t& state) noexcept;

struct QuadratureResult {
    double value;
    double err_est;
    std::size_t intervals;
};

/// Subdivision cap reached before the error target was met.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadratureResult partial)
        : std::runtime_error(what), partial_(partial) {}
    [[nodiscard]] const QuadratureResult& partial() const noexcept { return partial_; }

private:
    QuadratureResult partial_;
};

/// Globally adaptive 15-point Gauss–Kronrod on [a, b].
[[nodiscard]] QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                                         double abs_tol, std::size_t max_intervals = 4000);

/// ∫ density from the lower end of the support to `upper`.
/// For a Weibull with α < 1 the panel next to 0 is integrated in u = t^α,
/// where the density becomes (1/θ) e^{-u/θ}.
[[nodiscard]] QuadratureResult integrate_density(const FamilyParams& params, double upper, double abs_tol = 1e-12);

struct McEstimate {
    double estimate;
    double half_width;  // 4σ binomial half-width
    std::uint64_t below;
    std::uint64_t samples;
};

/// Samples are generated in fixed blocks, each with its own generator derived
/// from (seed, block index); the count is therefore independent of `workers`.
inline constexpr std::uint64_t kMcBlockSize = 1u << 16;
inline constexpr std::uint64_t kMcMinSamples = 10'000;

/// Fraction of inverse-transform samples at or below κ·EX.
[[nodiscard]] McEstimate mc_prob_below_kappa_mean(const FamilyParams& params, const KappaQuery& q,
                                                  std::uint64_t n_samples, RngSeed seed, unsigned workers = 1);

struct GridScanResult {
    double argmin;
    double value;
    std::size_t evaluated;
};

/// Evaluates the closed-form objective at steps+1 uniform points of [lo, hi]
/// (the last point is hi exactly). Points outside the family's admissible
/// shape domain, such as an open endpoint θ = 1, are skipped. Ties go to the
/// smallest parameter.
[[nodiscard]] GridScanResult grid_scan_min(Family family, const KappaQuery& q, double lo, double hi,
                                           std::size_t steps);

struct VerificationConfig {
    double quad_abs_tol = 1e-12;
    double quad_agreement = 1e-9;
    std::uint64_t mc_samples = 1'000'000;
    RngSeed seed{42};
    unsigned workers = 1;
    std::size_t grid_steps = 500'000;
    double grid_value_tol = 1e-8;
    bool run_grid = true;
};

struct VerificationChecks {
    bool quadrature = false;
    bool monte_carlo = false;
    std::optional<bool> grid;  // present when a grid comparison was made
};

struct VerificationReport {
    Family family;
    double kappa = 0.0;
    double closed_form = 0.0;
    double quadrature = 0.0;
    double quadrature_err_est = 0.0;
    double mc_estimate = 0.0;
    double mc_half_width = 0.0;
    std::optional<double> grid_argmin;
    std::optional<double> grid_value;
    std::optional<double> minimizer_argmin;
    std::optional<double> minimizer_value;
    std::optional<double> grid_step;
    VerificationChecks passed;
    std::optional<std::string> error;

    [[nodiscard]] bool all_passed() const noexcept;
    /// Names of failing checks ("error" when the report carries an error).
    [[nodiscard]] std::vector<std::string> failed_checks() const;
};

/// Closed form, quadrature, Monte Carlo and, when the family attains a
/// minimum for this κ, a grid scan against the root-based minimizer.
/// Errors from sub-operations are stored in the report, not thrown.
[[nodiscard]] VerificationReport run_verification(const FamilyParams& params, const KappaQuery& q,
                                                  const VerificationConfig& config = {});

}  // namespace meancross::verify
