#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "test_helpers.hpp"
#include "timo/certificate.hpp"
#include "timo/quadrature.hpp"

using namespace timo;
namespace tt = timo::testing;

namespace {

const double pi = std::numbers::pi;

// Exact constants of the benchmark beam, derived by hand from the closed
// forms: ess_sup of every field is 0.41, ess_inf 0.39.
const double kExactK1 = (4.0 / (pi * pi)) * 0.41;
const double kExactKappa1 = 18.5 - 67.0 * 0.41 / 2.0;       // = 4.765
const double kExactEta = 37.0 + 67.0 * 0.41;                // = 64.47
const double kExactC4 = 39.0 * (0.5 - 2.0 / (pi * pi) - 1.0 / (3.0 * pi * pi)) * 0.39;
const double kExactC3 = (67.0 / 2.0 - 67.0 / 10.0 * 4.0 / (pi * pi) - 19.5) * 0.39;

}  // namespace

TEST_CASE("wirtinger constants") {
    const auto beam = tt::example_beam();
    const auto [k1, k2] = wirtinger_constants(beam);
    CHECK(k1 == doctest::Approx(kExactK1).epsilon(1e-13));
    CHECK(k2 == doctest::Approx(kExactK1).epsilon(1e-13));  // same sup, 0.41
    CHECK(k1 == doctest::Approx(0.16617).epsilon(1e-4));

    const auto unit = tt::unit_beam();
    CHECK(wirtinger_constants(unit).first == doctest::Approx(4.0 / (pi * pi)).epsilon(1e-14));
}

TEST_CASE("wirtinger constant bounds the iterated integral on random shear profiles") {
    const auto beam = tt::example_beam();
    const auto [k1, k2] = wirtinger_constants(beam);
    const std::size_t n = 4097;
    const double h = 1.0 / static_cast<double>(n - 1);
    const auto weights = simpson_weights(n, h);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto z3 = tt::random_series(rng, 1.0);
        std::vector<double> kz3(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = static_cast<double>(i) * h;
            kz3[i] = beam.k_shear(xi) * z3(xi);
        }
        const auto inner = cumulative_trapezoid(kz3, h);
        double lhs = 0.0, rhs = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            lhs += weights[i] * inner[i] * inner[i];
            const double xi = static_cast<double>(i) * h;
            rhs += weights[i] * beam.k_shear(xi) * z3(xi) * z3(xi);
        }
        CHECK(lhs <= k1 * rhs * (1.0 + 1e-8) + 1e-12);
    }
}

TEST_CASE("wirtinger inequality on random functions vanishing at zero") {
    const std::size_t n = 4097;
    const double h = 1.0 / static_cast<double>(n - 1);
    const auto weights = simpson_weights(n, h);
    const double factor = 4.0 / (pi * pi);  // (2L/pi)^2 at L = 1
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const auto f = tt::random_series(rng, 1.0);
        double lhs = 0.0, rhs = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = static_cast<double>(i) * h;
            const double v = f(xi);
            const double d = f.derivative(xi);
            lhs += weights[i] * v * v;
            rhs += weights[i] * d * d;
        }
        CHECK(lhs <= factor * rhs * (1.0 + 1e-8) + 1e-12);
    }
}

TEST_CASE("kappa1 lower bound") {
    const auto beam = tt::example_beam();
    SUBCASE("benchmark weights reproduce 4.77") {
        const double kappa1 = kappa1_lower_bound(tt::example_weights(), beam);
        CHECK(kappa1 == doctest::Approx(kExactKappa1).epsilon(1e-13));
        CHECK(std::abs(kappa1 - 4.77) <= 0.005 + 1e-12);
    }
    SUBCASE("vanishing cross weights leave n0/2") {
        const LyapunovWeights w{37.0, 1e-12, 1e-12, 5.0, 1.0, 6.0};
        CHECK(kappa1_lower_bound(w, beam) == doctest::Approx(18.5).epsilon(1e-12));
    }
    SUBCASE("huge n1 drives kappa1 negative") {
        const LyapunovWeights w{37.0, 1e6, 39.0, 5.0, 1.0, 6.0};
        CHECK(kappa1_lower_bound(w, beam) < 0.0);
    }
}

TEST_CASE("eta upper bound") {
    const auto beam = tt::example_beam();
    SUBCASE("benchmark weights reproduce 64.47") {
        CHECK(eta_energy_bound(tt::example_weights(), beam) ==
              doctest::Approx(kExactEta).epsilon(1e-13));
    }
    SUBCASE("boundary limit n1 = n2 = 0 gives n0") {
        const LyapunovWeights w{37.0, 1e-14, 1e-14, 5.0, 1.0, 6.0};
        CHECK(eta_energy_bound(w, beam) == doctest::Approx(37.0).epsilon(1e-12));
    }
    SUBCASE("positively homogeneous in the combination weights") {
        const auto w = tt::example_weights();
        const LyapunovWeights w2{2.0 * w.n0, 2.0 * w.n1, 2.0 * w.n2,
                                 w.alpha1,   w.alpha2,   w.alpha3};
        CHECK(eta_energy_bound(w2, beam) ==
              doctest::Approx(2.0 * eta_energy_bound(w, beam)).epsilon(1e-14));
    }
}

TEST_CASE("coefficient profiles") {
    const auto beam = tt::example_beam();
    const auto w = tt::example_weights();
    const auto profiles = coefficient_fields(w, beam);

    SUBCASE("dense-grid infima match the frozen closed-form values") {
        const auto inf4 = scan_extrema(profiles.c4, 1.0, 65536).min;
        CHECK(inf4 == doctest::Approx(kExactC4).epsilon(1e-6));
        CHECK(std::abs(inf4 - 4.01) <= 0.02);
        const auto inf3 = scan_extrema(profiles.c3, 1.0, 65536).min;
        CHECK(inf3 == doctest::Approx(kExactC3).epsilon(1e-6));
        CHECK(inf3 == doctest::Approx(4.40).epsilon(1e-3));
    }
    SUBCASE("default 4096 grid agrees with the 65536 refinement") {
        const auto cert = certify(w, beam);
        CHECK(cert.c_essinf[3] ==
              doctest::Approx(scan_extrema(profiles.c4, 1.0, 65536).min).epsilon(1e-6));
        CHECK(cert.c_essinf[0] ==
              doctest::Approx(scan_extrema(profiles.c1, 1.0, 65536).min).epsilon(1e-6));
    }
    SUBCASE("boundary scalars") {
        const double gl = beam.gamma(1.0);
        const double dl = beam.delta(1.0);
        CHECK(profiles.c5 == doctest::Approx(37.0 * gl - 67.0 * gl * gl / 2.0).epsilon(1e-13));
        CHECK(profiles.c6 == doctest::Approx(11.89205).epsilon(1e-9));
    }
    SUBCASE("pure-energy weights collapse the profiles") {
        const auto unit = tt::unit_beam();
        const double g = 0.5;
        auto damped = unit;
        damped.gamma = ParameterField::constant(g, 1.0);
        damped.delta = ParameterField::constant(g, 1.0);
        const LyapunovWeights w0{5.0, 0.0, 0.0, 1.0, 1.0, 1.0};
        const auto p = coefficient_fields(w0, damped);
        CHECK(p.c1(0.3) == doctest::Approx(5.0 * g).epsilon(1e-14));  // n0 g / rho^2, rho = 1
        CHECK(p.c2(0.3) == doctest::Approx(5.0 * g).epsilon(1e-14));
        CHECK(p.c3(0.3) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(p.c4(0.3) == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(p.c5 == doctest::Approx(5.0 * g).epsilon(1e-14));
        CHECK(p.c6 == doctest::Approx(5.0 * g).epsilon(1e-14));
    }
}

TEST_CASE("certify assembles the full certificate") {
    const auto beam = tt::example_beam();
    SUBCASE("benchmark weights") {
        const auto cert = certify(tt::example_weights(), beam);
        CHECK(cert.kappa1 == doctest::Approx(kExactKappa1).epsilon(1e-13));
        CHECK(cert.eta == doctest::Approx(kExactEta).epsilon(1e-13));
        CHECK(cert.beta_prime == doctest::Approx(kExactC4).epsilon(1e-5));
        CHECK(std::abs(cert.kappa2_prime - 0.0622) <= 0.0005);
        // c1's infimum is negative with these weights, so only the relaxed
        // gate certifies; both results stay visible.
        CHECK(cert.c_essinf[0] < 0.0);
        CHECK(cert.beta < 0.0);
        CHECK(cert.feasible_prime);
        CHECK_FALSE(cert.feasible_strict);
        CHECK(cert.kappa2() == cert.kappa2_prime);
        CHECK(cert.c_essinf[1] > cert.c_essinf[3]);  // c4 is the binding constraint
        CHECK(cert.c_essinf[2] > cert.c_essinf[3]);
    }
    SUBCASE("too small n0 reports a negative kappa1 margin") {
        auto w = tt::example_weights();
        w.n0 = 1.0;
        const auto cert = certify(w, beam);
        CHECK_FALSE(cert.feasible());
        CHECK(cert.kappa1 < 0.0);
    }
}

TEST_CASE("certify scales linearly in the combination weights") {
    const auto beam = tt::example_beam();
    const auto w = tt::example_weights();
    const double t = 7.0;
    const LyapunovWeights tw{t * w.n0, t * w.n1, t * w.n2, w.alpha1, w.alpha2, w.alpha3};
    const auto base = certify(w, beam);
    const auto scaled = certify(tw, beam);
    CHECK(scaled.kappa1 == doctest::Approx(t * base.kappa1).epsilon(1e-12));
    CHECK(scaled.eta == doctest::Approx(t * base.eta).epsilon(1e-12));
    CHECK(scaled.beta == doctest::Approx(t * base.beta).epsilon(1e-12));
    CHECK(scaled.beta_prime == doctest::Approx(t * base.beta_prime).epsilon(1e-12));
    CHECK(scaled.kappa2_prime == doctest::Approx(base.kappa2_prime).epsilon(1e-12));
    CHECK(scaled.kappa2_strict == doctest::Approx(base.kappa2_strict).epsilon(1e-12));
}

TEST_CASE("constant-coefficient path") {
    SUBCASE("shared coefficients agree with the general path to 1e-12") {
        const auto beam = tt::unit_beam();
        // alpha1 = 4 keeps c3 positive under both variants (the closed form
        // divides by alpha1, the general one by 2 alpha1).
        const LyapunovWeights w{10.0, 2.0, 1.0, 4.0, 1.0, 1.0};
        const auto report = certify_constant(w, beam);
        CHECK(report.agrees[0]);  // c1: K_d = 0 for constants
        CHECK(report.agrees[1]);  // c2: I_rho == EI here
        CHECK_FALSE(report.agrees[2]);  // c3 carries n1 K/alpha1 instead of n1 K/(2 alpha1)
        CHECK(report.agrees[3]);
        CHECK(report.agrees[4]);
        CHECK(report.agrees[5]);
        CHECK(report.closed_form.feasible_strict);
    }
    SUBCASE("c2 differs once I_rho != EI") {
        const auto beam = tt::constant_beam(1.0, 2.0, 1.0, 1.0, 1.0, 1.0, 1.0);
        const LyapunovWeights w{8.0, 2.0, 1.0, 1.0, 1.0, 1.0};
        const auto report = certify_constant(w, beam);
        CHECK_FALSE(report.agrees[1]);
        CHECK(report.difference[1] ==
              doctest::Approx(1.0 * (2.0 - 1.0) / 2.0).epsilon(1e-12));  // n2 (I_rho - EI)/2
    }
    SUBCASE("n1 = 0 makes c3 negative and the tuple infeasible") {
        const auto beam = tt::unit_beam();
        const LyapunovWeights w{8.0, 0.0, 1.0, 1.0, 1.0, 1.0};
        const auto report = certify_constant(w, beam);
        CHECK(report.closed_form.c_essinf[2] ==
              doctest::Approx(-1.0 * 1.0 * 1.0 / 2.0).epsilon(1e-13));
        CHECK_FALSE(report.closed_form.feasible());
    }
    SUBCASE("symmetric parameters collapse c4") {
        const auto beam = tt::unit_beam();
        const LyapunovWeights w{8.0, 2.0, 1.0, 1.0, 3.0, 3.0};
        const auto report = certify_constant(w, beam);
        const double expected = 1.0 * 1.0 * (0.5 - 4.0 / (3.0 * pi * pi));
        CHECK(report.closed_form.c_essinf[3] == doctest::Approx(expected).epsilon(1e-13));
    }
    SUBCASE("non-constant fields are rejected") {
        CHECK_THROWS_AS(certify_constant(tt::example_weights(), tt::example_beam()),
                        std::invalid_argument);
    }
}

TEST_CASE("energy and Lyapunov value") {
    const auto beam = tt::example_beam();
    const auto w = tt::example_weights();

    SUBCASE("zero state") {
        const StateFunction zero(1.0, 257);
        CHECK(energy(zero, beam) == 0.0);
        CHECK(lyapunov_value(zero, w, beam) == 0.0);
    }
    SUBCASE("benchmark initial condition") {
        auto zero_fn = [](double) { return 0.0; };
        auto z3 = [](double xi) { return 0.5 * (1.0 - std::cos(2.0 * pi * xi)); };
        auto z4 = [](double xi) { return 1.0 - std::cos(2.0 * pi * xi); };
        const auto state = StateFunction::sample(1.0, 2048, zero_fn, zero_fn, z3, z4);

        // Independent oracle: dense trapezoid of the closed-form integrand.
        const std::size_t n = (1 << 20) + 1;
        const double h = 1.0 / static_cast<double>(n - 1);
        double oracle = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double xi = static_cast<double>(i) * h;
            const double f =
                beam.k_shear(xi) * z3(xi) * z3(xi) + beam.ei(xi) * z4(xi) * z4(xi);
            oracle += (i == 0 || i + 1 == n ? 0.5 : 1.0) * h * f;
        }
        oracle *= 0.5;
        CHECK(oracle == doctest::Approx(0.3700448729810778).epsilon(1e-10));

        const double e = energy(state, beam);
        CHECK(e == doctest::Approx(0.3700448729810778).epsilon(1e-9));
        const double v = lyapunov_value(state, w, beam);
        CHECK(v == doctest::Approx(37.0 * e).epsilon(1e-12));  // F1 = F2 = 0 here
    }
    SUBCASE("sandwich on random states") {
        const auto cert = certify(w, beam);
        REQUIRE(cert.kappa1 > 0.0);
        const LyapunovEvaluator eval(beam, 2049);
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 200; ++trial) {
            const auto state = tt::random_state(rng, 1.0);
            const double e = eval.energy(state);
            const double norm_sq = 2.0 * e;
            const double v = eval.value(state, w);
            CHECK(v >= cert.kappa1 * norm_sq * (1.0 - 1e-8) - 1e-12);
            CHECK(v <= cert.eta * e * (1.0 + 1e-8) + 1e-12);
        }
    }
    SUBCASE("grid mismatch is a structural error") {
        const LyapunovEvaluator eval(beam, 512);
        const StateFunction state(1.0, 511);
        CHECK_THROWS_AS(eval.energy(state), std::invalid_argument);
    }
}
