#include "doctest.h"

#include <cmath>

#include "sosggm/errors.hpp"
#include "sosggm/params.hpp"

using namespace sosggm;

TEST_CASE("activity from temperature") {
    // tau = 8 gives the smaller quadratic root 4 - sqrt(15).
    const Params p = theta_from_tau(8.0, 2);
    CHECK(p.theta == doctest::Approx(4.0 - std::sqrt(15.0)).epsilon(1e-15));
    CHECK(p.theta + 1.0 / p.theta == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(p.k == 2);
    CHECK(p.tau == 8.0);

    for (double tau : {2.001, 2.5, 3.0, 5.0, 20.0}) {
        const double t = theta_from_tau(tau, 3).theta;
        CHECK(t > 0.0);
        CHECK(t < 1.0);
        CHECK(t + 1.0 / t == doctest::Approx(tau).epsilon(1e-12));
    }

    CHECK_THROWS_AS(theta_from_tau(2.0, 2), InvalidTemperature);
    CHECK_THROWS_AS(theta_from_tau(1.5, 2), InvalidTemperature);
    CHECK_THROWS_AS(theta_from_tau(5.0, 1), EmptyProblem);
}

TEST_CASE("edge weight decays geometrically in the height gap") {
    const Params p = theta_from_tau(8.0, 2);
    const double th = 4.0 - std::sqrt(15.0);
    CHECK(q_weight(p, 0) == doctest::Approx(1.0));
    CHECK(q_weight(p, 2) == doctest::Approx(th * th).epsilon(1e-14));
    CHECK(q_weight(p, -3) == doctest::Approx(th * th * th).epsilon(1e-14));
    CHECK(q_weight(p, 5) == doctest::Approx(q_weight(p, -5)).epsilon(1e-15));
}

TEST_CASE("temperature thresholds") {
    auto [t0_k2, t1_k2] = tau_thresholds(2);
    CHECK(t0_k2 == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(t1_k2 == doctest::Approx(4.0).epsilon(1e-15));
    auto [t0_k3, t1_k3] = tau_thresholds(3);
    CHECK(t0_k3 == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(t1_k3 == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("orbit positivity envelope") {
    const Params p = theta_from_tau(5.0, 2);

    const PositivityBound b = positivity_bound(p, 1.0, 1.0);
    CHECK(b.x0 == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
    CHECK(b.x_star == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
    CHECK(b.upper == doctest::Approx(5.0 / 3.0).epsilon(1e-14));

    // Larger boundary pair pushes the envelope out.
    const PositivityBound b2 = positivity_bound(p, 2.18355, 2.18355);
    CHECK(b2.x0 == doctest::Approx(5.0 / (5.0 - 2.0 * 2.18355)).epsilon(1e-12));
    CHECK(b2.x_star == doctest::Approx(b2.x0 / 2.0).epsilon(1e-14));

    CHECK_THROWS_AS(positivity_bound(p, 3.0, 2.0), ConstraintViolation);
}
