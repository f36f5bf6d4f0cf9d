#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "meancross/distributions.hpp"
#include "meancross/errors.hpp"
#include "meancross/minimizers.hpp"
#include "meancross/specfun.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace meancross;

namespace {

constexpr double kGamma = 0.57721566490153286061;

// Objectives through std::lgamma, independent of the library's specfun.
double weibull_objective_ref(double alpha, double kappa) {
    return -std::expm1(-std::exp(alpha * (std::log(kappa) + std::lgamma(1.0 / alpha + 1.0))));
}

double pareto_objective_ref(double theta, double kappa) {
    return 1.0 - std::pow((theta - 1.0) / (kappa * theta), theta);
}

struct ScanResult {
    double argmin;
    double value;
};

template <typename F>
ScanResult scan(F&& objective, double lo, double hi, std::size_t steps) {
    ScanResult best{lo, objective(lo)};
    for (std::size_t i = 1; i <= steps; ++i) {
        const double x = (i == steps) ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
        const double v = objective(x);
        if (v < best.value) best = {x, v};
    }
    return best;
}

// q_m by direct extended-precision summation of C(n,k) p^k (1-p)^{n-k}.
long double chvatal_q_direct(int n, int m) {
    const long double p = static_cast<long double>(m) / n;
    long double sum = 0.0L;
    long double coeff = 1.0L;
    for (int k = 0; k <= m; ++k) {
        sum += coeff * std::pow(p, k) * std::pow(1.0L - p, n - k);
        coeff = coeff * (n - k) / (k + 1);
    }
    return sum;
}

const std::vector<double> kAboveOne = {1.1, 1.5, 2.0, 5.0, 10.0, 100.0};

}  // namespace

TEST_CASE("phi_weibull") {
    for (double kappa : {0.5, 1.0, 2.0, 30.0}) {
        CHECK(std::abs(phi_weibull(1.0 + 1e-9, kappa) + std::log(kappa)) < 1e-6);
    }
    CHECK(phi_weibull(2.0, 1.0) == doctest::Approx(1.0 - kGamma).epsilon(1e-14));
    CHECK(phi_weibull(2.0, 2.0) == doctest::Approx(-0.27036284546147817002).epsilon(1e-13));
    CHECK_THROWS_AS((void)phi_weibull(1.0, 2.0), DomainError);
    CHECK_THROWS_AS((void)phi_weibull(0.5, 2.0), DomainError);
    CHECK_THROWS_AS((void)phi_weibull(2.0, 0.0), DomainError);
}

TEST_CASE("h_weibull") {
    CHECK(std::abs(h_weibull(1.0 + 1e-7, 1.0) + kGamma) < 1e-5);
    CHECK(h_weibull(2.0, 1.0) == 0.0);
    CHECK(h_weibull(3.0, 1.0) == doctest::Approx(0.34657359027997265471).epsilon(1e-14));
    CHECK_THROWS_AS((void)h_weibull(1.0, 1.0), DomainError);
}

TEST_CASE("minimize_weibull cases") {
    SUBCASE("kappa < 1: infimum exactly 0") {
        const auto r = minimize_weibull(KappaQuery(0.5));
        REQUIRE_FALSE(r.attained());
        CHECK(r.infimum().value == 0.0);
        CHECK(r.infimum().limit == LimitDirection::ShapeToInfinity);
        CHECK_THROWS_AS((void)r.minimum(), std::bad_variant_access);
    }
    SUBCASE("kappa = 1: 1 - exp(-exp(-gamma))") {
        const auto r = minimize_weibull(KappaQuery(1.0));
        REQUIRE_FALSE(r.attained());
        CHECK(std::abs(r.value() - 0.42962399832497696304) < 1e-15);
        CHECK(std::abs(r.value() - (1.0 - std::exp(-std::exp(-kGamma)))) < 1e-15);
        // Within 1e-15 of 1 counts as 1.
        CHECK_FALSE(minimize_weibull(KappaQuery(1.0 + 5e-16)).attained());
    }
    SUBCASE("kappa = 2: interior root, checked against a grid scan") {
        CHECK(phi_weibull(2.0, 2.0) < 0.0);
        CHECK(phi_weibull(3.0, 2.0) > 0.0);
        const auto r = minimize_weibull(KappaQuery(2.0));
        REQUIRE(r.attained());
        const auto& m = r.minimum();
        REQUIRE(m.root.has_value());
        CHECK(m.root->root > 2.0);
        CHECK(m.root->root < 3.0);
        CHECK(std::abs(m.root->residual) <= 1e-12);
        CHECK(m.argmin == doctest::Approx(1.0 / (m.root->root - 1.0)).epsilon(1e-15));
        // Arbitrary-precision root: x0 = 2.394374030099582, g = 0.8527374970938781.
        CHECK(std::abs(m.root->root - 2.3943740300995820) < 1e-11);
        CHECK(std::abs(m.value - 0.85273749709387809193) < 1e-14);
        const auto s = scan([](double a) { return weibull_objective_ref(a, 2.0); }, 1e-4, 50.0, 500000);
        CHECK(std::abs(s.argmin - m.argmin) <= 1e-4);
        CHECK(std::abs(s.value - m.value) <= 1e-8);
    }
}

TEST_CASE("phi_pareto") {
    CHECK(phi_pareto(0.5, 0.5) == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(phi_pareto(1.0, std::numbers::e) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(phi_pareto(0.5, std::numbers::e) == doctest::Approx(std::numbers::ln2).epsilon(1e-14));
    for (double kappa : {0.2, 0.5, 0.9}) {
        CHECK(phi_pareto(kappa, kappa) == doctest::Approx((kappa - 1.0) / kappa).epsilon(1e-14));
    }
    CHECK_THROWS_AS((void)phi_pareto(0.6, 0.5), DomainError);
    CHECK_THROWS_AS((void)phi_pareto(1.1, 2.0), DomainError);
    CHECK_THROWS_AS((void)phi_pareto(0.0, 2.0), DomainError);
}

TEST_CASE("h_pareto") {
    CHECK(h_pareto(0.5, 0.5) == 0.0);
    CHECK(std::abs(h_pareto(1.0 - 1e-7, 1.0) - 1.0) < 1e-6);
    // ln(0.25)/(-0.5) = 4 ln 2
    CHECK(h_pareto(0.5, 2.0) == doctest::Approx(4.0 * std::numbers::ln2).epsilon(1e-14));
    CHECK_THROWS_AS((void)h_pareto(1.0, 1.0), DomainError);
    CHECK_THROWS_AS((void)h_pareto(0.7, 0.5), DomainError);
    CHECK_THROWS_AS((void)h_pareto(-0.1, 3.0), DomainError);
}

TEST_CASE("minimize_pareto cases") {
    SUBCASE("kappa < 1: attained zero at 1/(1-kappa)") {
        const auto r = minimize_pareto(KappaQuery(0.5));
        REQUIRE(r.attained());
        CHECK(r.minimum().argmin == 2.0);
        CHECK(r.minimum().value == 0.0);
        CHECK_FALSE(r.minimum().root.has_value());
    }
    SUBCASE("kappa = 1: infimum 1 - 1/e") {
        const auto r = minimize_pareto(KappaQuery(1.0));
        REQUIRE_FALSE(r.attained());
        CHECK(std::abs(r.value() - 0.63212055882855767840) < 1e-15);
    }
    SUBCASE("kappa = 2: interior root") {
        CHECK(phi_pareto(0.37, 2.0) < 0.0);
        CHECK(phi_pareto(0.38, 2.0) > 0.0);
        const auto r = minimize_pareto(KappaQuery(2.0));
        REQUIRE(r.attained());
        const auto& m = r.minimum();
        REQUIRE(m.root.has_value());
        CHECK(m.root->root > 0.37);
        CHECK(m.root->root < 0.38);
        CHECK(m.argmin > 1.58);
        CHECK(m.argmin < 1.60);
        CHECK(std::abs(m.root->root - 0.37336461770167408) < 1e-11);
        CHECK(std::abs(m.value - 0.93132341654335946813) < 1e-14);
        const auto s = scan([](double t) { return pareto_objective_ref(t, 2.0); }, 1.0001, 50.0, 499990);
        CHECK(std::abs(s.argmin - m.argmin) <= 1e-4);
        CHECK(std::abs(s.value - m.value) <= 1e-8);
    }
}

TEST_CASE("minimize dispatch") {
    CHECK(minimize(Family::Weibull, KappaQuery(3.0)).family == Family::Weibull);
    CHECK(minimize(Family::Pareto, KappaQuery(3.0)).family == Family::Pareto);
    CHECK_THROWS_AS((void)minimize(Family::Binomial, KappaQuery(3.0)), DomainError);
}

TEST_CASE("chvatal_argmin small n") {
    const auto r2 = chvatal_argmin(2);
    CHECK(r2.m_star == 1);
    REQUIRE(r2.q_values.size() == 3);
    CHECK(r2.q_values[0] == 1.0);
    CHECK(r2.q_values[1] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(r2.q_values[2] == 1.0);

    const auto r3 = chvatal_argmin(3);
    CHECK(r3.m_star == 2);
    CHECK(r3.q_values[2] == doctest::Approx(19.0 / 27.0).epsilon(1e-14));
    CHECK(r3.q_values[1] == doctest::Approx(20.0 / 27.0).epsilon(1e-14));
    CHECK(r3.ties.empty());

    CHECK(chvatal_argmin(6).m_star == 4);
    CHECK_THROWS_AS((void)chvatal_argmin(1), DomainError);
}

TEST_CASE("chvatal_argmin against direct summation, n <= 40") {
    for (int n = 2; n <= 40; ++n) {
        const auto r = chvatal_argmin(n);
        int best = 0;
        long double best_q = chvatal_q_direct(n, 0);
        for (int m = 0; m <= n; ++m) {
            const long double q = chvatal_q_direct(n, m);
            CHECK(std::abs(static_cast<double>(q) - r.q_values[static_cast<std::size_t>(m)]) < 1e-13);
            if (q < best_q) {
                best_q = q;
                best = m;
            }
        }
        CAPTURE(n);
        CHECK(r.m_star == best);
    }
}

TEST_CASE("property: chvatal argmin is nearest to 2n/3 for n in [2, 1000]") {
    for (std::int64_t n = 2; n <= 1000; ++n) {
        const auto r = chvatal_argmin(n);
        CAPTURE(n);
        CHECK(r.m_star == nearest_two_thirds(n));
        CHECK(std::abs(static_cast<double>(r.m_star) - 2.0 * static_cast<double>(n) / 3.0) < 0.5);
        CHECK(r.ties.empty());
    }
}

TEST_CASE("property: root residuals and local minimality") {
    for (double kappa : kAboveOne) {
        CAPTURE(kappa);
        const KappaQuery q(kappa);
        const auto w = minimize_weibull(q);
        const auto p = minimize_pareto(q);
        REQUIRE(w.attained());
        REQUIRE(p.attained());
        CHECK(std::abs(phi_weibull(w.minimum().root->root, kappa)) < 1e-10);
        CHECK(std::abs(phi_pareto(p.minimum().root->root, kappa)) < 1e-10);
        CHECK(p.minimum().root->root > 0.0);
        CHECK(p.minimum().root->root < 1.0);
        for (double delta : {1e-3, 1e-2}) {
            for (double sign : {-1.0, 1.0}) {
                const double alpha = w.minimum().argmin * (1.0 + sign * delta);
                CHECK(weibull_prob_below_kappa_mean(alpha, q) >= w.value());
                const double theta = p.minimum().argmin * (1.0 + sign * delta);
                CHECK(pareto_prob_below_kappa_mean(theta, q) >= p.value());
            }
        }
    }
}

TEST_CASE("property: grid-scan equivalence") {
    for (double kappa : kAboveOne) {
        CAPTURE(kappa);
        const auto w = minimize_weibull(KappaQuery(kappa));
        const auto sw = scan([kappa](double a) { return weibull_objective_ref(a, kappa); }, 1e-4, 50.0, 500000);
        CHECK(std::abs(sw.argmin - w.minimum().argmin) <= 1e-4);
        CHECK(std::abs(sw.value - w.value()) <= 1e-8);
        CHECK(sw.value >= w.value() - 1e-12);

        const auto p = minimize_pareto(KappaQuery(kappa));
        const auto sp = scan([kappa](double t) { return pareto_objective_ref(t, kappa); }, 1.0001, 50.0, 499990);
        CHECK(std::abs(sp.argmin - p.minimum().argmin) <= 1e-4);
        CHECK(std::abs(sp.value - p.value()) <= 1e-8);
        CHECK(sp.value >= p.value() - 1e-12);
    }
}

TEST_CASE("property: monotone objectives for kappa <= 1") {
    for (double kappa : {0.1, 0.5, 0.9, 1.0}) {
        CAPTURE(kappa);
        double prev = 2.0;
        for (int i = 1; i <= 500; ++i) {
            const double v = weibull_prob_below_kappa_mean(0.1 * i, KappaQuery(kappa));
            CHECK(v < prev);
            prev = v;
        }
        const double theta_max = kappa < 1.0 ? 1.0 / (1.0 - kappa) : 50.0;
        prev = 2.0;
        for (int i = 1; i <= 400; ++i) {
            const double theta = 1.0 + (theta_max - 1.0) * i / 400.0;
            const double v = pareto_prob_below_kappa_mean(theta, KappaQuery(kappa));
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("property: characteristic functions increasing") {
    for (double kappa : {0.5, 1.0, 2.0, 10.0}) {
        double prev = -1e300;
        for (double x = 1.001; x <= 10.0; x += 0.001) {
            const double v = phi_weibull(x, kappa);
            CHECK(v > prev);
            prev = v;
        }
        prev = -1e300;
        const double upper = std::min(1.0, kappa);
        for (double x = 0.001; x <= upper; x += 0.001) {
            const double v = phi_pareto(x, kappa);
            CHECK(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("property: objective identities through h") {
    for (double alpha : {0.05, 0.3, 1.0, 2.5, 9.0, 40.0}) {
        for (double kappa : {0.3, 1.0, 1.5, 4.0}) {
            const double direct = weibull_prob_below_kappa_mean(alpha, KappaQuery(kappa));
            const double via_h = 1.0 - std::exp(-std::exp(h_weibull(1.0 / alpha + 1.0, kappa)));
            CHECK(std::abs(direct - via_h) < 1e-12);
        }
    }
    for (double theta : {1.05, 1.5, 2.0, 3.0, 10.0}) {
        for (double kappa : {0.7, 1.0, 1.5, 4.0}) {
            if (!pareto_shape_admissible(theta, kappa)) continue;
            const double direct = pareto_prob_below_kappa_mean(theta, KappaQuery(kappa));
            const double via_h = 1.0 - std::exp(-h_pareto(1.0 - 1.0 / theta, kappa));
            CHECK(std::abs(direct - via_h) < 1e-12);
        }
    }
}

TEST_CASE("property: limits as kappa decreases to 1") {
    // The gap to the κ = 1 infimum closes like sqrt(κ - 1); reference values
    // from an arbitrary-precision solve of the same root equations.
    const double weibull_inf = 1.0 - std::exp(-std::exp(-kGamma));
    const double pareto_inf = 1.0 - std::exp(-1.0);
    CHECK(std::abs(minimize_weibull(KappaQuery(1.0 + 1e-6)).value() - 0.43020492954729378466) < 1e-9);
    CHECK(std::abs(minimize_pareto(KappaQuery(1.0 + 1e-6)).value() - 0.63264069602263585031) < 1e-9);
    CHECK(std::abs(minimize_weibull(KappaQuery(1.0 + 1e-8)).value() - 0.42968208473237762428) < 1e-9);
    CHECK(std::abs(minimize_pareto(KappaQuery(1.0 + 1e-8)).value() - 0.63217258361152059339) < 1e-9);
    CHECK(std::abs(minimize_weibull(KappaQuery(1.0 + 1e-8)).value() - weibull_inf) < 1e-4);
    CHECK(std::abs(minimize_pareto(KappaQuery(1.0 + 1e-8)).value() - pareto_inf) < 1e-4);
    double prev_w = 1.0;
    double prev_p = 1.0;
    for (double eps : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10}) {
        const double dw = minimize_weibull(KappaQuery(1.0 + eps)).value() - weibull_inf;
        const double dp = minimize_pareto(KappaQuery(1.0 + eps)).value() - pareto_inf;
        CHECK(dw > 0.0);
        CHECK(dp > 0.0);
        CHECK(dw < prev_w);
        CHECK(dp < prev_p);
        prev_w = dw;
        prev_p = dp;
    }
    // Just above the unit tolerance still finds a root.
    const auto near = minimize_weibull(KappaQuery(1.0 + 1e-13));
    REQUIRE(near.attained());
    CHECK(std::abs(near.value() - 0.42962399832497696) < 1e-4);
    CHECK(minimize_pareto(KappaQuery(1.0 + 1e-13)).attained());
}

TEST_CASE("large kappa") {
    for (double kappa : {1e3, 1e6, 1e100}) {
        CAPTURE(kappa);
        const auto w = minimize_weibull(KappaQuery(kappa));
        const auto p = minimize_pareto(KappaQuery(kappa));
        CHECK(w.value() >= 0.0);
        CHECK(w.value() <= 1.0);
        CHECK(p.value() >= 0.0);
        CHECK(p.value() <= 1.0);
        // φ is steep here, so check the root location: |φ| / φ' within xtol.
        const double xw = w.minimum().root->root;
        const double xp = p.minimum().root->root;
        CHECK(std::abs(w.minimum().root->residual) / ((xw - 1.0) * specfun::trigamma(xw)) < 2e-12);
        CHECK(std::abs(p.minimum().root->residual) / ((1.0 - xp) / (xp * xp)) < 2e-12);
    }
}
