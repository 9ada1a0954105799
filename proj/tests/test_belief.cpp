#include "voa/belief.hpp"

#include "voa/errors.hpp"
#include "support/instances.hpp"
#include "support/oracles.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>

using namespace voa;
using voa::testing::oracle_bessel_i0;

namespace {

InitialBeliefModel demo_model()
{
    InitialBeliefModel model;
    model.category_prior = {{"lying", 0.5}, {"standing", 0.3}, {"upside_down", 0.2}};
    model.theta_mean = 0.4;
    model.kappa = 2.0;
    model.position_mean = {0.05, -0.02};
    model.position_cov << 4e-4, 1e-4, 1e-4, 9e-4;
    return model;
}

Belief four_pose_belief()
{
    Belief belief;
    belief.ids = {"p1", "p2", "p3", "p4"};
    for (const auto& id : belief.ids) {
        Pose pose;
        pose.category = id;
        belief.poses.push_back(pose);
    }
    belief.weights = {0.4, 0.3, 0.2, 0.1};
    return belief;
}

} // namespace

TEST_CASE("bessel I0 matches the plain series oracle")
{
    for (double kappa : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        const double expect = oracle_bessel_i0(kappa);
        CHECK(std::abs(bessel_i0(kappa) - expect) <= 1e-12 * expect);
        CHECK(std::abs(log_bessel_i0(kappa) - std::log(expect)) <= 1e-12 * std::abs(std::log(expect) + 1.0));
    }
}

TEST_CASE("log bessel I0 is smooth across the series/asymptotic switch")
{
    const double below = log_bessel_i0(699.5);
    const double above = log_bessel_i0(700.5);
    // d/dk log I0 ~ 1 near large kappa, so the gap should be ~1.0.
    CHECK(std::abs((above - below) - 1.0) < 1e-3);
    CHECK(std::isfinite(log_bessel_i0(1e6)));
    CHECK(log_bessel_i0(1e6) > 9.9e5);
}

TEST_CASE("kappa=0 gives the uniform angular factor 1/(2pi)")
{
    for (double theta : {-3.0, -1.0, 0.0, 0.7, 3.1}) {
        CHECK(std::abs(von_mises_pdf(theta, 0.3, 0.0) - 1.0 / (2.0 * std::numbers::pi)) <=
              1e-15);
    }
}

TEST_CASE("initial density peaks at the mode for a fixed category")
{
    const InitialBeliefModel model = demo_model();
    Pose mode;
    mode.category = "lying";
    mode.theta = model.theta_mean;
    mode.x = model.position_mean.x();
    mode.y = model.position_mean.y();
    const double peak = initial_density(model, mode);
    CHECK(peak > 0.0);
    RandomStream rng(1, "density-mode");
    for (int trial = 0; trial < 200; ++trial) {
        Pose other = mode;
        other.theta = rng.uniform() * 2.0 * std::numbers::pi - std::numbers::pi;
        other.x = mode.x + (rng.uniform() - 0.5) * 0.2;
        other.y = mode.y + (rng.uniform() - 0.5) * 0.2;
        CHECK(initial_density(model, other) <= peak * (1.0 + 1e-12));
    }
}

TEST_CASE("von Mises density ratio to the mode matches the closed form")
{
    const InitialBeliefModel model = demo_model();
    Pose mode{"standing", model.theta_mean, model.position_mean.x(), model.position_mean.y()};
    Pose off = mode;
    off.theta = model.theta_mean + std::numbers::pi / 3.0;
    const double ratio = initial_density(model, off) / initial_density(model, mode);
    const double expect = std::exp(2.0 * (std::cos(std::numbers::pi / 3.0) - 1.0));
    CHECK(std::abs(ratio - expect) <= 1e-12);

    // Full formula against the series-oracle I0.
    const double direct = 0.3 *
                          (std::exp(model.kappa * std::cos(off.theta - model.theta_mean)) /
                           (2.0 * std::numbers::pi * oracle_bessel_i0(model.kappa))) *
                          (1.0 / (2.0 * std::numbers::pi *
                                  std::sqrt(model.position_cov.determinant())));
    CHECK(initial_density(model, off) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("sampling one pose yields weight 1")
{
    RandomStream rng(9, "sample-one");
    const Belief belief = sample_pose_set(demo_model(), 1, rng);
    REQUIRE(belief.size() == 1);
    CHECK(belief.weights[0] == 1.0);
    CHECK(belief.ids[0] == "p1");
    validate_belief(belief);
}

TEST_CASE("huge kappa concentrates every sampled yaw at the mean")
{
    InitialBeliefModel model = demo_model();
    model.kappa = 1e6;
    RandomStream rng(10, "sample-concentrated");
    const Belief belief = sample_pose_set(model, 500, rng);
    for (const auto& pose : belief.poses)
        CHECK(std::abs(pose.theta - model.theta_mean) < 1e-2);
    validate_belief(belief);
}

TEST_CASE("sampled yaw has the right circular mean at kappa=1")
{
    InitialBeliefModel model = demo_model();
    model.kappa = 1.0;
    RandomStream rng(11, "sample-circmean");
    const Belief belief = sample_pose_set(model, 100000, rng);
    double s = 0.0, c = 0.0;
    for (const auto& pose : belief.poses) {
        s += std::sin(pose.theta);
        c += std::cos(pose.theta);
    }
    const double circ_mean = std::atan2(s, c);
    CHECK(std::abs(circ_mean - model.theta_mean) < 0.02);
}

TEST_CASE("sampling is deterministic in the stream and tracks the prior")
{
    RandomStream rng_a(12, "sample-det");
    RandomStream rng_b(12, "sample-det");
    const InitialBeliefModel model = demo_model();
    const Belief a = sample_pose_set(model, 2000, rng_a);
    const Belief b = sample_pose_set(model, 2000, rng_b);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.poses[i].category == b.poses[i].category);
        CHECK(a.poses[i].theta == b.poses[i].theta);
        CHECK(a.poses[i].x == b.poses[i].x);
        CHECK(a.weights[i] == b.weights[i]);
    }

    int lying = 0;
    double mean_x = 0.0, mean_y = 0.0;
    for (const auto& pose : a.poses) {
        lying += pose.category == "lying" ? 1 : 0;
        mean_x += pose.x;
        mean_y += pose.y;
    }
    CHECK(std::abs(lying / 2000.0 - 0.5) < 0.04);
    CHECK(std::abs(mean_x / 2000.0 - model.position_mean.x()) < 3e-3);
    CHECK(std::abs(mean_y / 2000.0 - model.position_mean.y()) < 3e-3);
}

TEST_CASE("reweighting matches the hand-computed four-pose example")
{
    const Belief belief = four_pose_belief();
    const double e1 = std::exp(-1.0);
    const double e2 = std::exp(-2.0);
    const std::vector<double> factors = {1.0, e1, e1, e2};
    const Belief updated = reweighted(belief, factors);

    const double z = 0.4 + 0.3 * e1 + 0.2 * e1 + 0.1 * e2;
    const double expect[4] = {0.4 / z, 0.3 * e1 / z, 0.2 * e1 / z, 0.1 * e2 / z};
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(updated.weights[i] - expect[i]) <= 1e-15);
    validate_belief(updated);
}

TEST_CASE("full belief update against predicted observations")
{
    // Observations engineered so tau2 similarities to o0 are exactly
    // (1, e^-1, e^-1, e^-2).
    LidarScan base;
    base.max_range = 10.0;
    base.ranges.fill(1.0);
    std::vector<std::vector<Observation>> obs(1);
    for (int p = 0; p < 4; ++p) {
        LidarScan scan = base;
        if (p == 1)
            scan.ranges[0] += 1.0;
        if (p == 2)
            scan.ranges[5] -= 1.0;
        if (p == 3)
            scan.ranges[9] += 2.0;
        obs[0].push_back(scan);
    }
    voa::testing::TablePredictor predictor(obs);

    Belief belief = four_pose_belief();
    for (int i = 0; i < 4; ++i)
        belief.poses[i].category = "P" + std::to_string(i);

    const SimilarityMetric tau2{.kind = MetricKind::exp_neg_norm};
    const Belief updated = belief_update(belief, obs[0][0], voa::testing::synthetic_config(0),
                                         tau2, predictor);
    const double e1 = std::exp(-1.0);
    const double e2 = std::exp(-2.0);
    const double z = 0.4 + 0.3 * e1 + 0.2 * e1 + 0.1 * e2;
    CHECK(std::abs(updated.weights[0] - 0.4 / z) <= 1e-15);
    CHECK(std::abs(updated.weights[1] - 0.3 * e1 / z) <= 1e-15);
    CHECK(std::abs(updated.weights[2] - 0.2 * e1 / z) <= 1e-15);
    CHECK(std::abs(updated.weights[3] - 0.1 * e2 / z) <= 1e-15);
}

TEST_CASE("uninformative observations leave the belief unchanged")
{
    const Belief belief = four_pose_belief();
    const std::vector<double> factors(4, 0.37);
    const Belief updated = reweighted(belief, factors);
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(updated.weights[i] - belief.weights[i]) <= 1e-12);
}

TEST_CASE("exact-match metric collapses the belief onto the matching pose")
{
    const Belief belief = four_pose_belief();
    const std::vector<double> factors = {0.0, 1.0, 0.0, 0.0};
    const Belief updated = reweighted(belief, factors);
    CHECK(updated.weights[0] == 0.0);
    CHECK(updated.weights[1] == 1.0);
    CHECK(updated.weights[2] == 0.0);
    CHECK(updated.weights[3] == 0.0);
}

TEST_CASE("all-zero similarities raise a compute error")
{
    const Belief belief = four_pose_belief();
    const std::vector<double> factors(4, 0.0);
    CHECK_THROWS_WITH_AS(reweighted(belief, factors),
                         "observation inconsistent with belief support (all similarities zero)",
                         ComputeError);
}

TEST_CASE("belief update laws hold on random cases")
{
    RandomStream rng(13, "belief-laws");
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(rng.uniform() * 10);
        Belief belief;
        belief.weights = voa::testing::random_simplex(rng, n);
        for (int i = 0; i < n; ++i) {
            belief.ids.push_back("p" + std::to_string(i + 1));
            Pose pose;
            pose.category = "c";
            belief.poses.push_back(pose);
        }
        std::vector<double> factors(n);
        for (double& f : factors)
            f = rng.uniform() < 0.2 ? 0.0 : rng.uniform();
        double total = 0.0;
        for (int i = 0; i < n; ++i)
            total += factors[i] * belief.weights[i];
        if (total == 0.0)
            factors[0] = 0.5;

        const Belief updated = reweighted(belief, factors);

        // Normalization.
        double sum = 0.0;
        for (double w : updated.weights)
            sum += w;
        CHECK(std::abs(sum - 1.0) <= 1e-12);

        // Proportionality.
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q) {
                const double denom = factors[q] * belief.weights[q];
                if (denom <= 0.0)
                    continue;
                const double lhs = updated.weights[p] / updated.weights[q];
                const double rhs = (factors[p] * belief.weights[p]) / denom;
                CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, rhs));
            }

        // Positive scaling of the factors cancels.
        std::vector<double> scaled = factors;
        for (double& f : scaled)
            f *= 17.25;
        const Belief updated_scaled = reweighted(belief, scaled);
        for (int i = 0; i < n; ++i)
            CHECK(std::abs(updated.weights[i] - updated_scaled.weights[i]) <= 1e-12);
    }
}

TEST_CASE("belief model validation")
{
    InitialBeliefModel model = demo_model();
    model.category_prior[0].second = 0.7; // no longer sums to 1
    CHECK_THROWS_AS(validate_belief_model(model), InputError);
    model = demo_model();
    model.kappa = -1.0;
    CHECK_THROWS_AS(validate_belief_model(model), InputError);
    model = demo_model();
    model.position_cov << 1.0, 2.0, 2.0, 1.0; // not positive definite
    CHECK_THROWS_AS(validate_belief_model(model), InputError);
    model = demo_model();
    Pose pose{"unknown_cat", 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(initial_density(model, pose), InputError);
}
