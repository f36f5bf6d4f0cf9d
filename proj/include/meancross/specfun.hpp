#pragma once

// Real-argument special functions: ln Γ, ψ, ψ′ and Euler's constant.
//
// All functions accept x in (0, +inf) and throw DomainError for x <= 0,
// NaN or infinity. They are pure and safe to call concurrently.

namespace meancross::specfun {

/// Euler–Mascheroni constant to double precision.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Strictly positive finite real, the argument type of Γ, ψ and ψ′.
class PositiveReal {
public:
    explicit PositiveReal(double value);
    [[nodiscard]] double value() const noexcept { return value_; }

private:
    double value_;
};

/// Euler's constant wrapped as a typed value.
struct EulerGamma {
    double value;
};

[[nodiscard]] EulerGamma euler_gamma() noexcept;

/// ln Γ(x). Relative error below 1e-13 on [1e-6, 1e6]; exact zeros at 1 and 2.
[[nodiscard]] double ln_gamma(double x);
[[nodiscard]] double ln_gamma(PositiveReal x);

/// Digamma ψ(x) = d/dx ln Γ(x).
[[nodiscard]] double digamma(double x);
[[nodiscard]] double digamma(PositiveReal x);

/// Trigamma ψ′(x) = Σ 1/(x+n)^2, always positive.
[[nodiscard]] double trigamma(double x);
[[nodiscard]] double trigamma(PositiveReal x);

}  // namespace meancross::specfun
