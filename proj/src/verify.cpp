#include "meancross/verify.hpp"

#include "meancross/errors.hpp"
#include "meancross/minimizers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace meancross::verify {

// RNG

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Xoshiro256::Xoshiro256(std::uint64_t seed) noexcept {
    for (auto& word : s_) word = splitmix64(seed);
}

std::uint64_t Xoshiro256::next() noexcept {
    const auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256::uniform_open() noexcept {
    // (k + 0.5) / 2^53 for k in [0, 2^53)
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

// Quadrature

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights at kXgk[1], kXgk[3], kXgk[5], kXgk[7]
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& other) const noexcept { return error < other.error; }
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

double sum_field(const std::vector<Segment>& segs, double Segment::*field) {
    double sum = 0.0;
    for (const auto& s : segs) sum += s.*field;
    return sum;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                           std::size_t max_intervals) {
    if (!(abs_tol > 0.0)) throw DomainError("integrate: abs_tol must be > 0");
    if (a == b) return {0.0, 0.0, 0};
    if (!(a < b)) throw DomainError("integrate: requires a < b");

    std::vector<Segment> heap{gauss_kronrod(f, a, b)};
    double value = heap.front().value;
    double error = heap.front().error;
    while (true) {
        if (error <= abs_tol) {
            // Running totals are updated incrementally; confirm with a fresh sum.
            value = sum_field(heap, &Segment::value);
            error = sum_field(heap, &Segment::error);
            if (error <= abs_tol) break;
        }
        if (heap.size() >= max_intervals) {
            throw QuadratureError("integrate: subdivision cap reached", {value, error, heap.size()});
        }
        std::pop_heap(heap.begin(), heap.end());
        const Segment worst = heap.back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw QuadratureError("integrate: interval cannot be subdivided further", {value, error, heap.size()});
        }
        const Segment left = gauss_kronrod(f, worst.a, mid);
        const Segment right = gauss_kronrod(f, mid, worst.b);
        heap.back() = left;
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
    }
    return {value, error, heap.size()};
}

QuadratureResult integrate_density(const FamilyParams& params, double upper, double abs_tol) {
    if (const auto* w = std::get_if<WeibullParams>(&params)) {
        if (!(upper > 0.0)) return {0.0, 0.0, 0};
        const auto density = [w](double t) { return weibull_pdf(*w, t); };
        if (w->alpha() >= 1.0) {
            return integrate(density, 0.0, upper, abs_tol);
        }
        // Unbounded density at 0: first panel in u = t^α.
        const double split = std::min(upper, std::pow(w->theta(), 1.0 / w->alpha()));
        const double theta = w->theta();
        const auto head = integrate([theta](double u) { return std::exp(-u / theta) / theta; }, 0.0,
                                    std::pow(split, w->alpha()), 0.5 * abs_tol);
        if (split == upper) return head;
        const auto tail = integrate(density, split, upper, 0.5 * abs_tol);
        return {head.value + tail.value, head.err_est + tail.err_est, head.intervals + tail.intervals};
    }
    if (const auto* p = std::get_if<ParetoParams>(&params)) {
        if (!(upper > p->a())) return {0.0, 0.0, 0};
        return integrate([p](double t) { return pareto_pdf(*p, t); }, p->a(), upper, abs_tol);
    }
    throw DomainError("integrate_density: binomial has no density");
}

// Monte Carlo

namespace {

double mean_of(const FamilyParams& params) {
    return std::visit(
        [](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, WeibullParams>) return weibull_mean(p);
            else if constexpr (std::is_same_v<P, ParetoParams>) return pareto_mean(p);
            else return binomial_mean(p);
        },
        params);
}

std::uint64_t count_block(const FamilyParams& params, double threshold, std::uint64_t seed, std::uint64_t block,
                          std::uint64_t count) {
    std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (block + 1));
    Xoshiro256 gen(splitmix64(state));
    std::uint64_t below = 0;
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            for (std::uint64_t i = 0; i < count; ++i) {
                const double u = gen.uniform_open();
                double x;
                if constexpr (std::is_same_v<P, WeibullParams>) x = weibull_sample(p, u);
                else if constexpr (std::is_same_v<P, ParetoParams>) x = pareto_sample(p, u);
                else x = static_cast<double>(binomial_sample(p, u));
                below += (x <= threshold) ? 1 : 0;
            }
        },
        params);
    return below;
}

}  // namespace

McEstimate mc_prob_below_kappa_mean(const FamilyParams& params, const KappaQuery& q, std::uint64_t n_samples,
                                    RngSeed seed, unsigned workers) {
    if (n_samples < kMcMinSamples) {
        throw DomainError("mc_prob_below_kappa_mean: need at least 10^4 samples");
    }
    const double threshold = q.kappa() * mean_of(params);
    const std::uint64_t blocks = (n_samples + kMcBlockSize - 1) / kMcBlockSize;
    std::vector<std::uint64_t> counts(blocks, 0);
    const auto block_len = [&](std::uint64_t b) {
        return std::min(kMcBlockSize, n_samples - b * kMcBlockSize);
    };

    std::atomic<std::uint64_t> next_block{0};
    const auto worker = [&] {
        for (std::uint64_t b = next_block++; b < blocks; b = next_block++) {
            counts[b] = count_block(params, threshold, seed.seed, b, block_len(b));
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(blocks)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }

    std::uint64_t below = 0;
    for (auto c : counts) below += c;
    const double n = static_cast<double>(n_samples);
    const double p_hat = static_cast<double>(below) / n;
    // When no (or every) sample falls below, the variance floor is 1/n.
    const double variance = std::max(p_hat * (1.0 - p_hat), 1.0 / n);
    return {p_hat, 4.0 * std::sqrt(variance / n), below, n_samples};
}

// Grid scan

GridScanResult grid_scan_min(Family family, const KappaQuery& q, double lo, double hi, std::size_t steps) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("grid_scan_min: requires lo < hi");
    if (steps < 10) throw DomainError("grid_scan_min: steps must be >= 10");
    std::function<std::optional<double>(double)> objective;
    switch (family) {
        case Family::Weibull:
            objective = [&q](double alpha) -> std::optional<double> {
                if (!(alpha > 0.0)) return std::nullopt;
                return weibull_prob_below_kappa_mean(alpha, q);
            };
            break;
        case Family::Pareto:
            objective = [&q](double theta) -> std::optional<double> {
                if (!pareto_shape_admissible(theta, q.kappa())) return std::nullopt;
                return pareto_prob_below_kappa_mean(theta, q);
            };
            break;
        case Family::Binomial: throw DomainError("grid_scan_min: binomial has no continuous shape");
    }
    std::optional<GridScanResult> best;
    std::size_t evaluated = 0;
    const double width = hi - lo;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double x = (i == steps) ? hi : lo + width * (static_cast<double>(i) / static_cast<double>(steps));
        const auto v = objective(x);
        if (!v) continue;
        ++evaluated;
        if (!best || *v < best->value) best = GridScanResult{x, *v, 0};
    }
    if (!best) throw DomainError("grid_scan_min: no admissible grid point in [lo, hi]");
    best->evaluated = evaluated;
    return *best;
}

// Report

bool VerificationReport::all_passed() const noexcept {
    return !error && passed.quadrature && passed.monte_carlo && passed.grid.value_or(true);
}

std::vector<std::string> VerificationReport::failed_checks() const {
    std::vector<std::string> failed;
    if (error) {
        failed.emplace_back("error");
        return failed;
    }
    if (!passed.quadrature) failed.emplace_back("quadrature");
    if (!passed.monte_carlo) failed.emplace_back("monte_carlo");
    if (passed.grid && !*passed.grid) failed.emplace_back("grid");
    return failed;
}

namespace {

struct GridRange {
    double lo, hi;
};

std::optional<GridRange> grid_range_for(Family family, double kappa) {
    const bool unit = std::abs(kappa - 1.0) <= kKappaUnitTolerance;
    if (family == Family::Weibull && kappa > 1.0 && !unit) return GridRange{0.01, 50.0};
    if (family == Family::Pareto && kappa > 1.0 && !unit) return GridRange{1.0001, 50.0};
    if (family == Family::Pareto && kappa < 1.0 && !unit) return GridRange{1.0, 1.0 / (1.0 - kappa)};
    return std::nullopt;
}

}  // namespace

VerificationReport run_verification(const FamilyParams& params, const KappaQuery& q, const VerificationConfig& config) {
    VerificationReport report{};
    report.family = family_of(params);
    report.kappa = q.kappa();
    try {
        if (report.family == Family::Binomial) {
            throw DomainError("verification supports the weibull and pareto families");
        }
        report.closed_form = std::holds_alternative<WeibullParams>(params)
                                 ? weibull_prob_below_kappa_mean(std::get<WeibullParams>(params).alpha(), q)
                                 : pareto_prob_below_kappa_mean(std::get<ParetoParams>(params).theta(), q);
        const double upper = q.kappa() * mean_of(params);

        const auto quad = integrate_density(params, upper, config.quad_abs_tol);
        report.quadrature = quad.value;
        report.quadrature_err_est = quad.err_est;
        report.passed.quadrature = std::abs(quad.value - report.closed_form) <= config.quad_agreement;

        const auto mc = mc_prob_below_kappa_mean(params, q, config.mc_samples, config.seed, config.workers);
        report.mc_estimate = mc.estimate;
        report.mc_half_width = mc.half_width;
        report.passed.monte_carlo = std::abs(mc.estimate - report.closed_form) <= mc.half_width;

        if (config.run_grid) {
            const auto range = grid_range_for(report.family, q.kappa());
            const auto minimum = minimize(report.family, q);
            if (range && minimum.attained() && minimum.minimum().argmin >= range->lo &&
                minimum.minimum().argmin <= range->hi) {
                const auto scan = grid_scan_min(report.family, q, range->lo, range->hi, config.grid_steps);
                const double step = (range->hi - range->lo) / static_cast<double>(config.grid_steps);
                report.grid_argmin = scan.argmin;
                report.grid_value = scan.value;
                report.grid_step = step;
                report.minimizer_argmin = minimum.minimum().argmin;
                report.minimizer_value = minimum.value();
                const bool value_ok = std::abs(scan.value - minimum.value()) <= config.grid_value_tol &&
                                      scan.value >= minimum.value() - config.grid_value_tol;
                const bool argmin_ok = std::abs(scan.argmin - minimum.minimum().argmin) <= step * (1.0 + 1e-9);
                report.passed.grid = value_ok && argmin_ok;
            }
        }
    } catch (const std::exception& e) {
        report.error = e.what();
    }
    return report;
}

}  // namespace meancross::verify
