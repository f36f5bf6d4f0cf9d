#include "meancross/rootfind.hpp"

#include "meancross/errors.hpp"

#include <cmath>
#include <string>

namespace meancross::rootfind {

namespace {

bool opposite_signs(double a, double b) { return (a <= 0.0 && b >= 0.0) || (a >= 0.0 && b <= 0.0); }

}  // namespace

bool Bracket::valid() const noexcept {
    return lo < hi && std::isfinite(f_lo) && std::isfinite(f_hi) && opposite_signs(f_lo, f_hi);
}

Bracket expand_bracket(const ScalarFunction& f, double seed_lo, double seed_hi, Direction direction,
                       double growth, std::size_t cap, std::optional<double> limit) {
    if (!(seed_lo < seed_hi)) {
        throw DomainError("expand_bracket: seed_lo must be below seed_hi");
    }
    if (!(growth > 1.0) || !std::isfinite(growth)) {
        throw DomainError("expand_bracket: growth must be finite and > 1");
    }
    Bracket b{seed_lo, seed_hi, f(seed_lo), f(seed_hi)};
    for (std::size_t step = 0;; ++step) {
        if (!std::isfinite(b.f_lo) || !std::isfinite(b.f_hi)) {
            throw BracketError("expand_bracket: function is not finite on the bracket");
        }
        if (opposite_signs(b.f_lo, b.f_hi)) {
            return b;
        }
        if (step == cap) {
            break;
        }
        if (direction == Direction::ExpandHi) {
            b.hi = limit ? *limit - (*limit - b.hi) / growth : b.lo + (b.hi - b.lo) * growth;
            b.f_hi = f(b.hi);
        } else {
            b.lo = limit ? *limit + (b.lo - *limit) / growth : b.hi - (b.hi - b.lo) * growth;
            b.f_lo = f(b.lo);
        }
    }
    throw BracketError("expand_bracket: no sign change within " + std::to_string(cap) + " steps");
}

RootResult bisect(const ScalarFunction& f, const Bracket& bracket, const Tolerances& tol) {
    if (!bracket.valid()) {
        throw DomainError("bisect: bracket does not straddle a sign change");
    }
    if (!(tol.xtol > 0.0)) {
        throw DomainError("bisect: xtol must be > 0");
    }
    Bracket b = bracket;
    if (b.f_lo == 0.0) {
        return {b.lo, 0.0, b, 0};
    }
    if (b.f_hi == 0.0) {
        return {b.hi, 0.0, b, 0};
    }
    const bool increasing = b.f_lo < 0.0;
    for (std::size_t iter = 1; iter <= tol.max_iter; ++iter) {
        const double mid = b.lo + 0.5 * (b.hi - b.lo);
        if (mid <= b.lo || mid >= b.hi) {
            // Bracket is down to adjacent doubles.
            const bool lo_better = std::abs(b.f_lo) <= std::abs(b.f_hi);
            return {lo_better ? b.lo : b.hi, lo_better ? b.f_lo : b.f_hi, b, iter - 1};
        }
        const double fm = f(mid);
        if (std::isnan(fm)) {
            throw DomainError("bisect: function returned NaN at " + std::to_string(mid));
        }
        if (fm == 0.0) {
            return {mid, 0.0, b, iter};
        }
        if ((fm < 0.0) == increasing) {
            b.lo = mid;
            b.f_lo = fm;
        } else {
            b.hi = mid;
            b.f_hi = fm;
        }
        if (b.width() <= tol.xtol || std::abs(fm) <= tol.ftol) {
            return {mid, fm, b, iter};
        }
    }
    throw MaxIterationsError("bisect: exceeded " + std::to_string(tol.max_iter) + " iterations", b);
}

}  // namespace meancross::rootfind
