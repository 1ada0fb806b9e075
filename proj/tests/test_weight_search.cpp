#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "test_helpers.hpp"
#include "timo/weight_search.hpp"

using namespace timo;
namespace tt = timo::testing;

TEST_CASE("staged seed is feasible on the benchmark beam") {
    const auto beam = tt::example_beam();
    const auto w = feasible_seed(beam);
    const auto cert = certify(w, beam);
    CHECK(cert.feasible());
    CHECK(cert.kappa2() > 0.0);
}

TEST_CASE("staged seed is feasible on a unit constant beam") {
    const auto beam = tt::unit_beam();
    const auto w = feasible_seed(beam);
    const auto cert = certify(w, beam);
    CHECK(cert.feasible());
}

TEST_CASE("long beams force large alpha2/alpha3") {
    const auto beam = tt::unit_beam(50.0);
    const auto w = feasible_seed(beam);
    const double threshold = std::pow(2.0 * 50.0 / std::numbers::pi, 2);  // ~1013
    CHECK(w.alpha2 >= threshold);
    CHECK(w.alpha3 >= threshold);
    CHECK(certify(w, beam).c_essinf[3] > 0.0);
}

TEST_CASE("near-zero damping yields no certificate or a vanishing rate") {
    auto beam = tt::unit_beam();
    beam.gamma = ParameterField::constant(1e-9, 1.0);
    beam.delta = ParameterField::constant(1e-9, 1.0);
    try {
        const auto w = feasible_seed(beam);
        const auto cert = certify(w, beam);
        CHECK(cert.feasible());
        CHECK(cert.kappa2() < 1e-6);
    } catch (const FeasibilityNotFound& err) {
        CHECK((err.blocking_constraint == "c1" || err.blocking_constraint == "c2"));
    }
}

TEST_CASE("optimizer reaches the hand-picked rate on the benchmark beam") {
    SearchConfig config;
    config.initial = tt::example_weights();
    config.max_iterations = 400;
    const auto result = maximize_kappa2(tt::example_beam(), config);
    CHECK(result.certificate.feasible());
    CHECK(result.certificate.kappa2() >= 0.0622);
    CHECK(result.kappa2_seed >= 0.0621);  // the starting point already certifies

    SUBCASE("trace is monotone nondecreasing") {
        for (std::size_t i = 0; i + 1 < result.trace.size(); ++i) {
            CHECK(result.trace[i + 1].kappa2 >= result.trace[i].kappa2);
        }
    }
    SUBCASE("uniform rescaling of the combination weights keeps kappa2") {
        const auto& w = result.weights;
        const LyapunovWeights scaled{7.0 * w.n0, 7.0 * w.n1, 7.0 * w.n2,
                                     w.alpha1,   w.alpha2,   w.alpha3};
        const auto cert = certify(scaled, tt::example_beam());
        CHECK(std::abs(cert.kappa2() - result.certificate.kappa2()) <= 1e-9);
    }
}

TEST_CASE("optimizer beats the hand-picked rate from the cold seed") {
    SearchConfig config;
    config.max_iterations = 400;
    const auto result = maximize_kappa2(tt::example_beam(), config);
    CHECK(result.certificate.kappa2() >= 0.0622);
}

TEST_CASE("optimizer improves on the seed for the unit beam") {
    SearchConfig config;
    config.max_iterations = 300;
    const auto result = maximize_kappa2(tt::unit_beam(), config);
    CHECK(result.certificate.feasible());
    CHECK(result.certificate.kappa2() >= result.kappa2_seed);
}

TEST_CASE("search is deterministic for a fixed seed") {
    SearchConfig config;
    config.seed = 42;
    config.max_iterations = 150;
    const auto a = maximize_kappa2(tt::unit_beam(), config);
    const auto b = maximize_kappa2(tt::unit_beam(), config);
    CHECK(a.weights.n0 == b.weights.n0);
    CHECK(a.weights.n1 == b.weights.n1);
    CHECK(a.weights.n2 == b.weights.n2);
    CHECK(a.weights.alpha1 == b.weights.alpha1);
    CHECK(a.weights.alpha2 == b.weights.alpha2);
    CHECK(a.weights.alpha3 == b.weights.alpha3);
    CHECK(a.certificate.kappa2() == b.certificate.kappa2());
}

TEST_CASE("bad search configuration is rejected") {
    SearchConfig config;
    config.lower_bound = -1.0;
    CHECK_THROWS_AS(maximize_kappa2(tt::unit_beam(), config), std::invalid_argument);
    config = {};
    config.max_iterations = 0;
    CHECK_THROWS_AS(maximize_kappa2(tt::unit_beam(), config), std::invalid_argument);
}

TEST_CASE("trace CSV layout") {
    std::vector<TraceRow> trace{{0, {1, 2, 3, 4, 5, 6}, 0.1}, {1, {1, 2, 3, 4, 5, 7}, 0.2}};
    std::ostringstream out;
    write_trace_csv(out, trace);
    const std::string text = out.str();
    CHECK(text.rfind("iteration,n0,n1,n2,alpha1,alpha2,alpha3,kappa2\n", 0) == 0);
    std::size_t lines = 0;
    for (const char c : text) lines += c == '\n' ? 1 : 0;
    CHECK(lines == 3);
}
