#include <doctest.h>

#include <cmath>
#include <random>

#include "kgd/analysis.hpp"
#include "kgd/profile_ode.hpp"

using namespace kgd;

TEST_SUITE_BEGIN("analysis");

TEST_CASE("hyperbolic coordinates: fixtures and round trip") {
    auto pt = to_hyperbolic(5.0, 0.0, 1.0);
    CHECK(pt.tau == doctest::Approx(7.0));
    CHECK(pt.z == doctest::Approx(0.0));

    pt = to_hyperbolic(2.0, 1.0, 1.0);
    CHECK(pt.tau == doctest::Approx(std::sqrt(15.0)));
    CHECK(pt.z == doctest::Approx(std::atanh(0.25)));

    CHECK_THROWS_AS((void)to_hyperbolic(2.0, 4.0, 1.0), std::domain_error);

    std::mt19937_64 rng(47);
    std::uniform_real_distribution<double> ts(0.0, 500.0), zs(-3.0, 3.0);
    const double B = 7.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = ts(rng);
        const double x = (t + 2 * B) * std::tanh(zs(rng));
        const auto p = to_hyperbolic(t, x, B);
        const auto [t2, x2] = from_hyperbolic(p, B);
        CHECK(std::abs(t2 - t) <= 1e-12 * (1 + std::abs(t)));
        CHECK(std::abs(x2 - x) <= 1e-12 * (1 + std::abs(x)));
    }
}

TEST_CASE("norm log-convexity: ||u||_4 <= sqrt(||u||_2 ||u||_inf)... via interpolation") {
    std::mt19937_64 rng(53);
    std::normal_distribution<double> dist(0.0, 1.0);
    const double dx = 1e-3;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> f(4096);
        // smooth random field: random low-frequency cosines
        for (int m = 0; m < 8; ++m) {
            const double a = dist(rng), ph = dist(rng);
            for (std::size_t k = 0; k < f.size(); ++k)
                f[k] += a * std::cos(2 * std::acos(-1.0) * m * double(k) / double(f.size()) + ph);
        }
        const double n2 = lp_norm(f, dx, 2), n4 = lp_norm(f, dx, 4),
                     ninf = lp_norm(f, dx, std::numeric_limits<double>::infinity());
        CHECK(n4 <= std::sqrt(n2 * ninf) * (1 + 1e-12));
    }
}

namespace {

// analytic surrogate u = tau^{-1/2} cos(tau) written into snapshot fields
RunRecord plane_wave_record(const Grid1D& grid, double B, const std::vector<double>& times) {
    RunRecord rec{grid, {}, {}, {}};
    for (double t : times) {
        Snapshot s;
        s.t = t;
        s.u.assign(grid.N, 0.0);
        s.v.assign(grid.N, 0.0);
        s.ux.assign(grid.N, 0.0);
        const double sh = t + 2 * B;
        for (int k = 0; k < grid.N; ++k) {
            const double x = grid.x(k);
            if (std::abs(x) >= sh - 1e-9) continue;
            const double tau = std::sqrt(sh * sh - x * x);
            const double c = std::cos(tau), sn = std::sin(tau);
            const double common = -0.5 * std::pow(tau, -1.5) * c - std::pow(tau, -0.5) * sn;
            s.u[k] = std::pow(tau, -0.5) * c;
            s.v[k] = common * (sh / tau);        // dtau/dt = cosh z
            s.ux[k] = common * (-x / tau);       // dtau/dx = -sinh z
        }
        rec.snapshots.push_back(std::move(s));
    }
    return rec;
}

}  // namespace

TEST_CASE("alpha extraction on the plane-wave surrogate gives |alpha| = 1, phase 0") {
    const Grid1D grid(300.0, 4096);
    const double B = 5.0;
    std::vector<double> taus, times;
    for (double tau = 60; tau <= 200; tau += 7) {
        taus.push_back(tau);
        times.push_back(tau - 2 * B);  // z = 0
    }
    const auto rec = plane_wave_record(grid, B, times);
    const auto samples = extract_alpha(rec, {0.0}, taus, B);
    REQUIRE(samples.size() == taus.size());
    for (const auto& s : samples) {
        CHECK(std::abs(s.alpha) == doctest::Approx(1.0).epsilon(5e-4));
        CHECK(std::arg(s.alpha) == doctest::Approx(0.0).epsilon(5e-4));
    }
}

TEST_CASE("alpha of the zero field is zero") {
    const Grid1D grid(50.0, 256);
    RunRecord rec{grid, {}, {}, {}};
    Snapshot s;
    s.t = 90.0;
    s.u.assign(grid.N, 0.0);
    s.v.assign(grid.N, 0.0);
    s.ux.assign(grid.N, 0.0);
    rec.snapshots.push_back(s);
    const auto samples = extract_alpha(rec, {0.0}, {100.0}, 5.0);
    CHECK(std::abs(samples[0].alpha) == doctest::Approx(0.0));
}

TEST_CASE("modulation fit recovers kappa from exact trajectories") {
    for (double rk : {0.0, 0.125, 0.375, 1.0}) {
        for (double b0 : {0.1, 1.0}) {
            ProfileParams params{{rk, 0.3}, {b0, 0.0}, 3.0};
            std::vector<AlphaSample> samples;
            for (int i = 0; i < 60; ++i) {
                const double tau = 3.0 * std::pow(10.0, 2.0 * i / 59.0);
                // alpha along the trajectory differs from beta by the free
                // phase only, which the modulus regression ignores
                samples.push_back({tau, 0.0, exact_profile(params, tau)});
            }
            const auto fit = fit_modulation(samples);
            CHECK(std::abs(fit.re_kappa_eff - rk) <= 1e-6);
            CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-6));
        }
    }
}

TEST_CASE("modulation fit input validation") {
    std::vector<AlphaSample> few(5, {10.0, 0.0, {1.0, 0.0}});
    CHECK_THROWS_AS((void)fit_modulation(few), std::invalid_argument);
    std::vector<AlphaSample> narrow(25, {10.0, 0.0, {1.0, 0.0}});
    CHECK_THROWS_AS((void)fit_modulation(narrow), std::invalid_argument);
}

TEST_CASE("I_p_m against a fine Simpson reference") {
    auto simpson = [](double t, int m, double p) {
        const int n = 200000;  // even
        const double lg = std::log(t + 2), h = 2.0 / n;
        auto f = [&](double eta) { return std::pow(1 + std::pow(eta, m) * lg, -p / 2); };
        double s = f(0) + f(2.0);
        for (int i = 1; i < n; ++i) s += f(i * h) * (i % 2 ? 4.0 : 2.0);
        return s * h / 3.0;
    };
    for (int m : {1, 2, 3})
        for (double p : {2.0, 4.0, 7.0})
            for (double t : {0.0, 10.0, 1e4}) {
                CHECK(I_p_m(t, m, p) == doctest::Approx(simpson(t, m, p)).epsilon(1e-8));
            }
}

TEST_CASE("I_p_m is monotone decreasing in p and matches the log bounds") {
    CHECK(I_p_m(100.0, 2, 4.0) < I_p_m(100.0, 2, 2.0));
    CHECK(I_p_m(100.0, 1, 8.0) < I_p_m(100.0, 1, 4.0));
    // first branch: I ~ loglog / log for (m, p) = (1, 2)
    for (double t : {1e2, 1e4, 1e8}) {
        const double scaled =
            I_p_m(t, 1, 2.0) * std::log(2 + t) / std::log(1 + std::log(2 + t));
        CHECK(scaled > 0.1);
        CHECK(scaled < 10.0);
    }
    // second branch: I ~ (log)^(-1/m) for m >= 2
    for (int m : {2, 3})
        for (double t : {10.0, 1e4, 1e8}) {
            const double scaled = I_p_m(t, m, 2.0) * std::pow(std::log(2 + t), 1.0 / m);
            CHECK(scaled > 0.1);
            CHECK(scaled < 10.0);
        }
}

TEST_CASE("decay fitter recovers planted exponents") {
    auto series = [](double q, double r, double p, std::vector<double>& t, std::vector<double>& y) {
        const double a = DecayLaw::algebraic_exponent(p);
        for (double tt = 100; tt <= 10000; tt *= 1.05) {
            t.push_back(tt);
            y.push_back(std::pow(1 + tt, -a) * std::pow(std::log(2 + tt), -q) *
                        std::pow(1 + std::log(std::log(2 + tt)), r));
        }
    };
    std::vector<double> t, y;
    series(0.5, 0.0, 4.0, t, y);
    auto fit = fit_decay(t, y, 4.0);
    CHECK(fit.q_fit == doctest::Approx(0.5).epsilon(0.04));

    t.clear(); y.clear();
    series(0.0, 0.0, std::numeric_limits<double>::infinity(), t, y);
    fit = fit_decay(t, y, std::numeric_limits<double>::infinity());
    CHECK(std::abs(fit.q_fit) <= 0.02);

    t.clear(); y.clear();
    series(0.5, 0.5, 2.0, t, y);
    fit = fit_decay(t, y, 2.0, NormTarget::u, true);
    CHECK(fit.q_fit == doctest::Approx(0.5).epsilon(0.1));
    REQUIRE(fit.r_fit.has_value());
    CHECK(*fit.r_fit == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("decay fitter window validation") {
    std::vector<double> t = {30, 40, 50, 60, 70, 80}, y(6, 1.0);
    CHECK_THROWS_AS((void)fit_decay(t, y, 2.0), std::invalid_argument);  // < 1 decade
}

TEST_CASE("comparison verdicts") {
    DecayLaw law{DissipationTag::B1};
    DecayFit fit;
    fit.p = 4.0;
    fit.target = NormTarget::u;
    fit.q_fit = 0.45;  // predicted 0.5
    fit.residual = 0.01;
    fit.loglog_span = 0.7;
    CHECK(compare_with_theorem(fit, law).verdict == Verdict::Consistent);

    fit.q_fit = 0.8;  // faster than predicted: still consistent (upper bound)
    CHECK(compare_with_theorem(fit, law).verdict == Verdict::Consistent);

    fit.q_fit = 0.1;
    CHECK(compare_with_theorem(fit, law).verdict == Verdict::Inconsistent);

    fit.loglog_span = 0.3;  // short window cannot resolve the deficit
    CHECK(compare_with_theorem(fit, law).verdict == Verdict::Inconclusive);
}

TEST_SUITE_END();
