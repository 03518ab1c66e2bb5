#include "qkd/photon_statistics.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace qkd;

TEST_SUITE_BEGIN("photon_statistics");

TEST_CASE("poisson mass values") {
    CHECK(poisson_pn(0.0, 0) == 1.0);
    CHECK(poisson_pn(0.0, 3) == 0.0);
    // independently evaluated at high precision
    CHECK(poisson_pn(0.5, 0) == doctest::Approx(0.6065306597126334).epsilon(1e-13));
    CHECK(poisson_pn(0.5, 2) == doctest::Approx(0.07581633246407918).epsilon(1e-13));
    CHECK_THROWS_AS(poisson_pn(-0.1, 0), std::domain_error);
    CHECK_THROWS_AS(poisson_pn(0.5, -1), std::domain_error);
}

TEST_CASE("poisson mass is unimodal with mode at floor(mu)") {
    for (double mu : {0.01, 0.1, 0.5, 1.0, 5.0}) {
        const int mode = static_cast<int>(std::floor(mu));
        for (int n = 0; n < mode; ++n) {
            CHECK(poisson_pn(mu, n) <= poisson_pn(mu, n + 1));
        }
        for (int n = mode; n < mode + 30; ++n) {
            CHECK(poisson_pn(mu, n) >= poisson_pn(mu, n + 1));
        }
    }
}

TEST_CASE("three-branch lump") {
    const ThreeBranch at_half = lumped_three_branch(0.5);
    CHECK(at_half.p2plus == doctest::Approx(0.09020401043104986).epsilon(1e-13));

    const ThreeBranch dark = lumped_three_branch(0.0);
    CHECK(dark.p0 == 1.0);
    CHECK(dark.p1 == 0.0);
    CHECK(dark.p2plus == 0.0);

    const ThreeBranch weak = lumped_three_branch(0.1);
    CHECK(weak.p0 == doctest::Approx(0.9048374180359595).epsilon(1e-13));
    CHECK(weak.p1 == doctest::Approx(0.09048374180359595).epsilon(1e-13));
    CHECK(weak.p2plus == doctest::Approx(0.004678840160444470).epsilon(1e-12));
}

TEST_CASE("three branches sum to one exactly") {
    for (double mu : {1e-9, 0.01, 0.1, 0.5, 1.0, 5.0, 20.0}) {
        const ThreeBranch b = lumped_three_branch(mu);
        CHECK((b.p0 + b.p1) + b.p2plus == 1.0);
    }
}

TEST_CASE("truncated distribution: zero intensity") {
    const PhotonNumberDistribution dist = truncated_distribution(0.0, 1e-12);
    REQUIRE(dist.probs.size() == 1);
    CHECK(dist.probs[0] == 1.0);
    CHECK(dist.tail_mass == 0.0);
}

TEST_CASE("truncated distribution: normalization and bound") {
    const PhotonNumberDistribution dist = truncated_distribution(0.5, 1e-12);
    CHECK(dist.n_max() <= 14);
    double sum = 0.0;
    for (double p : dist.probs) {
        sum += p;
    }
    CHECK(sum + dist.tail_mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(dist.tail_mass < 1e-12);
    CHECK(dist.tail_mass >= 0.0);
}

TEST_CASE("truncated distribution: normalization across mu grid") {
    for (double mu : {0.01, 0.1, 0.5, 1.0, 5.0}) {
        const PhotonNumberDistribution dist = truncated_distribution(mu, 1e-12);
        double sum = 0.0;
        double mean = 0.0;
        for (int n = 0; n <= dist.n_max(); ++n) {
            sum += dist.probs[n];
            mean += n * dist.probs[n];
        }
        CHECK(sum + dist.tail_mass == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(mean <= mu + 1e-12);
        if (mu <= 1.0) {
            CHECK(mean == doctest::Approx(mu).epsilon(1e-9));
        }
    }
}

TEST_CASE("truncated distribution at a fixed bound keeps the exact remainder") {
    const PhotonNumberDistribution dist = truncated_distribution_fixed(0.5, 0);
    REQUIRE(dist.probs.size() == 1);
    CHECK(dist.probs[0] == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
    CHECK(dist.tail_mass == doctest::Approx(1.0 - std::exp(-0.5)).epsilon(1e-12));
}

TEST_CASE("lump agrees with the truncated distribution aggregated over n >= 2") {
    for (double mu : {0.01, 0.1, 0.5, 1.0, 5.0}) {
        const ThreeBranch b = lumped_three_branch(mu);
        const PhotonNumberDistribution dist = truncated_distribution(mu, 1e-15);
        double two_plus = dist.tail_mass;
        for (int n = 2; n <= dist.n_max(); ++n) {
            two_plus += dist.probs[n];
        }
        CHECK(b.p0 == doctest::Approx(dist.probs[0]).epsilon(1e-12));
        CHECK(b.p1 == doctest::Approx(dist.probs[1]).epsilon(1e-12));
        CHECK(b.p2plus == doctest::Approx(two_plus).epsilon(1e-11));
    }
}

TEST_SUITE_END();
