#include "qkd/key_metrics.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "qkd/errors.hpp"
#include "qkd/report.hpp"
#include "test_support.hpp"

using namespace qkd;

TEST_SUITE_BEGIN("key_metrics");

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == 1.0);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double x = uniform(rng);
        CHECK(binary_entropy(x) == doctest::Approx(binary_entropy(1.0 - x)).epsilon(1e-12));
        CHECK(binary_entropy(x) <= 1.0);
    }
}

TEST_CASE("sifted key effectiveness is the subgroup total") {
    CHECK(sifted_key_effectiveness({0.0, 0.0, 0.0, 0.0}) == 0.0);
    const SubgroupSums sums{1e-6, 2e-6, 3e-6, 4e-6};
    CHECK(sifted_key_effectiveness(sums) == doctest::Approx(1e-5).epsilon(1e-12));
}

TEST_CASE("bit error probability") {
    CHECK(bit_error_probability({0.0, 0.25, 0.0, 0.25}) == 0.0);
    CHECK(bit_error_probability({0.1, 0.1, 0.1, 0.1}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(bit_error_probability({0.0, 0.0, 0.0, 0.0}), NoSiftedKeyError);
}

TEST_CASE("bit error probability is scale invariant") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uniform(1e-9, 0.2);
    for (int i = 0; i < 100; ++i) {
        SubgroupSums sums{uniform(rng), uniform(rng), uniform(rng), uniform(rng)};
        const double qber = bit_error_probability(sums);
        const double scale = std::pow(10.0, std::uniform_real_distribution<double>(-6, 2)(rng));
        sums.err_dark *= scale;
        sums.bit_dark *= scale;
        sums.err_real *= scale;
        sums.bit_real *= scale;
        CHECK(bit_error_probability(sums) == doctest::Approx(qber).epsilon(1e-12));
        CHECK(qber >= 0.0);
        CHECK(qber <= 1.0);
    }
}

TEST_CASE("ideal Shannon epsilon") {
    EpsilonStrategy ideal{EpsilonKind::IdealShannon};
    CHECK(epsilon(ideal, 0.0) == 1.0);
    // 1 - 2*h2(0.11): the zero crossing sits just above 0.11
    const double near_threshold = epsilon(ideal, 0.11);
    CHECK(near_threshold > 0.0);
    CHECK(near_threshold <= 2e-4);
    CHECK(epsilon(ideal, 0.12) == 0.0);
    CHECK(epsilon(ideal, 0.6) == 0.0); // beyond 1/2: no extractable key
}

TEST_CASE("linear-efficiency epsilon") {
    EpsilonStrategy linear{EpsilonKind::LinearEfficiency, 1.2};
    CHECK(epsilon(linear, 0.0) == 1.0);
    const double h = binary_entropy(0.03);
    CHECK(epsilon(linear, 0.03) == doctest::Approx(1.0 - 2.2 * h).epsilon(1e-12));
    CHECK(epsilon(linear, 0.45) == 0.0);
    CHECK(epsilon(linear, 0.6) == 0.0);
}

TEST_CASE("table epsilon interpolates and clamps") {
    EpsilonStrategy table{EpsilonKind::Table};
    table.table = {{0.0, 1.0}, {0.1, 0.4}};
    CHECK(epsilon(table, 0.05) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(epsilon(table, 0.0) == 1.0);
    CHECK(epsilon(table, 0.5) == 0.4);   // clamped at the last point
    CHECK(epsilon(table, 1.0) == 0.4);
}

TEST_CASE("private key rate") {
    CHECK(private_key_rate(5e6, 1e-4, 0.5) == doctest::Approx(250.0).epsilon(1e-12));
    CHECK(private_key_rate(5e6, 1e-4, 0.0) == 0.0);
}

TEST_CASE("private rate never increases with the error rate") {
    EpsilonStrategy ideal{EpsilonKind::IdealShannon};
    double previous = 1e18;
    for (double p_err = 0.0; p_err <= 0.5; p_err += 0.01) {
        const double rate = private_key_rate(5e6, 1e-3, epsilon(ideal, p_err));
        CHECK(rate <= previous);
        previous = rate;
    }
}

TEST_CASE("metrics package for the benchmark link") {
    const SystemConfig config = test::base_config();
    const EventTree tree = build_tree(config);
    const KeyMetrics metrics = compute_key_metrics(config, tree);

    const SubgroupSums sums = metrics.subgroups;
    CHECK(metrics.p_sigma ==
          doctest::Approx(sums.err_dark + sums.bit_dark + sums.err_real + sums.bit_real)
              .epsilon(1e-12));
    CHECK(metrics.private_rate_bps <= metrics.sifted_rate_bps);
    CHECK(metrics.p_err >= 0.0);
    CHECK(metrics.p_err <= 1.0);

    // frozen reference values from an independent implementation of the
    // same chain (n_max = 40, exact generation statistics)
    CHECK(metrics.p_sigma == doctest::Approx(0.007475609579781675).epsilon(1e-9));
    CHECK(metrics.p_err == doctest::Approx(0.010572944080371318).epsilon(1e-9));
}

TEST_CASE("metrics for randomized links stay consistent") {
    std::mt19937 rng(71);
    int evaluated = 0;
    for (int i = 0; i < 60; ++i) {
        const SystemConfig config = test::random_config(rng);
        const EventTree tree = build_tree(config);
        const SubgroupSums sums = subgroup_sums(tree);
        if (sums.total() == 0.0) {
            continue;
        }
        ++evaluated;
        const KeyMetrics metrics = compute_key_metrics(config, tree);
        CHECK(metrics.p_err >= 0.0);
        CHECK(metrics.p_err <= 1.0);
        CHECK(metrics.private_rate_bps <= metrics.sifted_rate_bps);
        CHECK(metrics.private_rate_bps >= 0.0);
    }
    CHECK(evaluated > 0);
}

TEST_CASE("no sifted key is an explicit error, not a silent zero") {
    SystemConfig config = test::base_config();
    config.detector1 = {0.0, 0.0, 1.0};
    config.detector2 = {0.0, 0.0, 1.0};
    const EventTree tree = build_tree(config);
    CHECK_THROWS_AS(compute_key_metrics(config, tree), NoSiftedKeyError);
}

TEST_CASE("metrics serialize under the documented field names") {
    const SystemConfig config = test::base_config();
    const KeyMetrics metrics = compute_key_metrics(config, build_tree(config));
    const nlohmann::json doc = metrics_to_json(metrics);
    for (const char* key : {"p_sigma", "p_err_dark", "p_bit_dark", "p_err_real", "p_bit_real",
                            "qber", "epsilon", "sifted_rate_bps", "private_rate_bps"}) {
        CHECK(doc.contains(key));
    }
    CHECK(doc.size() == 9);
    CHECK(doc["qber"].get<double>() == metrics.p_err);
}

TEST_SUITE_END();
