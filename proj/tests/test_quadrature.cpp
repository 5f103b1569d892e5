#include <cmath>

#include "doctest.h"
#include "macroloc/errors.hpp"
#include "macroloc/quadrature.hpp"

using namespace macroloc;

TEST_CASE("gauss-kronrod on smooth integrands") {
    const QuadratureResult p = integrate_gk([](long double x) { return x * x * x * x * x; }, 0.0, 2.0);
    CHECK(p.converged);
    CHECK(p.value == doctest::Approx(64.0 / 6.0).epsilon(1e-15));

    const QuadratureResult e = integrate_gk([](long double x) { return std::exp(-x); }, 0.0, 30.0);
    CHECK(e.value == doctest::Approx(-std::expm1(-30.0)).epsilon(1e-13));

    // integrable endpoint singularity forces deep bisection
    const QuadratureResult s = integrate_gk([](long double x) { return 1 / std::sqrt(x); }, 0.0, 1.0);
    CHECK(s.converged);
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("semi-infinite map") {
    const QuadratureResult a = integrate_semi_infinite([](long double x) { return std::exp(-x); }, 1.0);
    CHECK(a.converged);
    CHECK(a.value == doctest::Approx(1.0).epsilon(1e-12));
    const QuadratureResult b = integrate_semi_infinite([](long double x) { return 1 / (1 + x * x); }, 1.0);
    CHECK(b.value == doctest::Approx(M_PI / 2).epsilon(1e-10));
}

TEST_CASE("oscillatory tail with extrapolation") {
    // int_0^inf sin(x)/x = pi/2: head by GK, slowly decaying tail by the extrapolated cycle sum
    auto f = [](long double x) { return x == 0 ? 1.0L : std::sin(x) / x; };
    const double start = 20 * M_PI;
    const QuadratureResult head = integrate_gk(f, 0.0, start);
    const QuadratureResult tail = integrate_oscillatory_tail(f, start, M_PI);
    CHECK(tail.converged);
    CHECK(head.value + tail.value == doctest::Approx(M_PI / 2).epsilon(1e-11));

    // int_0^inf e^{-x/5} cos(x) dx = (1/5) / (1/25 + 1)
    auto g = [](long double x) { return std::exp(-x / 5) * std::cos(x); };
    const QuadratureResult h2 = integrate_gk(g, 0.0, M_PI / 2);
    const QuadratureResult t2 = integrate_oscillatory_tail(g, M_PI / 2, M_PI);
    CHECK(h2.value + t2.value == doctest::Approx(0.2 / (1.0 / 25 + 1)).epsilon(1e-11));
}

TEST_CASE("evaluation cap reports non-convergence") {
    QuadratureOptions o;
    o.rel_tol = 1e-14;
    o.max_evaluations = 63;
    const QuadratureResult r = integrate_gk([](long double x) { return std::sin(50 * x); }, 0.0, 10.0, o);
    CHECK_FALSE(r.converged);
    CHECK(r.evaluations <= 63);
    CHECK_THROWS_AS(require_converged(r, "capped"), ConvergenceError);
}

TEST_CASE("oscillatory tail rejects a non-positive period") {
    CHECK_THROWS_AS(integrate_oscillatory_tail([](long double) { return 0.0L; }, 0.0, 0.0), InputError);
}
