#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace meancross::rootfind {

using ScalarFunction = std::function<double(double)>;

/// An interval [lo, hi] across which f changes sign.
struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;

    [[nodiscard]] double width() const noexcept { return hi - lo; }
    /// lo < hi, both values finite, and the signs differ (or one is zero).
    [[nodiscard]] bool valid() const noexcept;
};

struct RootResult {
    double root;
    double residual;  // f(root)
    Bracket bracket_final;
    std::size_t iterations;
};

struct Tolerances {
    double xtol = 1e-12;
    double ftol = 1e-12;
    std::size_t max_iter = 200;
};

enum class Direction { ExpandHi, ExpandLo };

/// No sign change was located within the permitted number of expansions.
class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The iteration cap was reached before convergence. Carries the best bracket.
class MaxIterationsError : public std::runtime_error {
public:
    MaxIterationsError(const std::string& what, const Bracket& best)
        : std::runtime_error(what), best_(best) {}
    [[nodiscard]] const Bracket& best_bracket() const noexcept { return best_; }

private:
    Bracket best_;
};

/// Grows [seed_lo, seed_hi] in one direction until f changes sign.
///
/// Without a limit, each step multiplies the interval length by `growth`
/// keeping the opposite endpoint fixed. With a finite `limit` (a domain
/// boundary on the moving side) the gap between the moving endpoint and the
/// limit is divided by `growth` instead, so the endpoint approaches but never
/// reaches the boundary.
[[nodiscard]] Bracket expand_bracket(const ScalarFunction& f, double seed_lo, double seed_hi,
                                     Direction direction, double growth, std::size_t cap,
                                     std::optional<double> limit = std::nullopt);

/// Bisection inside a valid bracket.
///
/// Stops when the bracket is no wider than xtol, when an interior probe has
/// |f| <= ftol, or immediately when an endpoint or probe evaluates to exactly 0.
[[nodiscard]] RootResult bisect(const ScalarFunction& f, const Bracket& bracket,
                                const Tolerances& tol = {});

}  // namespace meancross::rootfind
