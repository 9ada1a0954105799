#include "voa/grasp.hpp"

#include "voa/errors.hpp"
#include "voa/random.hpp"
#include "support/instances.hpp"

#include "doctest.h"

#include <sstream>

using namespace voa;

namespace {

GraspScoreTable demo_table()
{
    // rows: poses A,B,C; columns: grasps g1,g2
    return GraspScoreTable({"A", "B", "C"}, {"g1", "g2"}, {1.0, 0.1, 0.0, 0.6, 0.5, 0.6});
}

} // namespace

TEST_CASE("expected score of a delta belief is the table entry")
{
    const GraspScoreTable table = demo_table();
    const std::vector<WeightedPose> delta = {{"B", 1.0}};
    CHECK(expected_grasp_score(table, "g1", delta) == 0.0);
    CHECK(expected_grasp_score(table, "g2", delta) == 0.6);
}

TEST_CASE("uniform belief over two poses averages their scores")
{
    const GraspScoreTable table =
        GraspScoreTable({"A", "B"}, {"g"}, {0.2, 0.8});
    const std::vector<WeightedPose> uniform = {{"A", 0.5}, {"B", 0.5}};
    CHECK(expected_grasp_score(table, "g", uniform) == 0.5);
}

TEST_CASE("hand-computed three-pose expectation")
{
    const GraspScoreTable table = GraspScoreTable({"A", "B", "C"}, {"g"}, {1.0, 0.0, 0.5});
    const std::vector<WeightedPose> belief = {{"A", 0.5}, {"B", 0.3}, {"C", 0.2}};
    CHECK(expected_grasp_score(table, "g", belief) == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("single grasp is always chosen")
{
    const GraspScoreTable table = GraspScoreTable({"A"}, {"only"}, {0.4});
    const std::vector<WeightedPose> belief = {{"A", 1.0}};
    CHECK(maximal_grasp(table, belief).grasp_id == "only");
}

TEST_CASE("exact ties break toward the smallest grasp id")
{
    const GraspScoreTable table =
        GraspScoreTable({"A", "B"}, {"g2", "g1"}, {0.25, 0.25, 0.75, 0.75});
    const std::vector<WeightedPose> belief = {{"A", 0.5}, {"B", 0.5}};
    CHECK(maximal_grasp(table, belief).grasp_id == "g1");
}

TEST_CASE("maximal grasp matches a brute-force argmax on random tables")
{
    RandomStream rng(71, "grasp-argmax");
    for (int trial = 0; trial < 100; ++trial) {
        const int n_poses = 6;
        const int n_grasps = 4;
        std::vector<std::string> pose_ids, grasp_ids;
        std::vector<double> scores;
        for (int p = 0; p < n_poses; ++p)
            pose_ids.push_back("P" + std::to_string(p));
        for (int g = 0; g < n_grasps; ++g)
            grasp_ids.push_back("g" + std::to_string(g));
        for (int i = 0; i < n_poses * n_grasps; ++i)
            scores.push_back(rng.uniform());
        const GraspScoreTable table(pose_ids, grasp_ids, std::move(scores));

        const auto weights = voa::testing::random_simplex(rng, n_poses);
        std::vector<WeightedPose> belief;
        for (int p = 0; p < n_poses; ++p)
            belief.push_back({pose_ids[p], weights[p]});

        // Oracle: explicit loop over grasps.
        std::string best;
        double best_value = -1.0;
        for (int g = 0; g < n_grasps; ++g) {
            double value = 0.0;
            for (int p = 0; p < n_poses; ++p)
                value += weights[p] * table.score_at(p, g);
            if (value > best_value) {
                best_value = value;
                best = grasp_ids[g];
            }
        }
        const GraspChoice choice = maximal_grasp(table, belief);
        CHECK(choice.grasp_id == best);
        CHECK(choice.expected_score == doctest::Approx(best_value).epsilon(1e-15));
    }
}

TEST_CASE("argmax is invariant to positive scaling and dominated grasps")
{
    RandomStream rng(73, "grasp-invariance");
    for (int trial = 0; trial < 50; ++trial) {
        const int n_poses = 5;
        std::vector<std::string> pose_ids;
        for (int p = 0; p < n_poses; ++p)
            pose_ids.push_back("P" + std::to_string(p));
        std::vector<double> scores;
        for (int i = 0; i < n_poses * 3; ++i)
            scores.push_back(rng.uniform());
        const GraspScoreTable table(pose_ids, {"g0", "g1", "g2"}, std::vector<double>(scores));

        const auto weights = voa::testing::random_simplex(rng, n_poses);
        std::vector<WeightedPose> belief;
        for (int p = 0; p < n_poses; ++p)
            belief.push_back({pose_ids[p], weights[p]});
        const std::string chosen = maximal_grasp(table, belief).grasp_id;

        // Positive scaling (kept within [0,1] by construction).
        std::vector<double> scaled = scores;
        for (double& s : scaled)
            s *= 0.5;
        const GraspScoreTable table_scaled(pose_ids, {"g0", "g1", "g2"}, std::move(scaled));
        CHECK(maximal_grasp(table_scaled, belief).grasp_id == chosen);

        // A grasp dominated entrywise by g0 never wins.
        std::vector<double> extended;
        for (int p = 0; p < n_poses; ++p) {
            for (int g = 0; g < 3; ++g)
                extended.push_back(scores[p * 3 + g]);
            extended.push_back(scores[p * 3] * 0.9); // dominated by g0
        }
        const GraspScoreTable table_ext(pose_ids, {"g0", "g1", "g2", "zz_dominated"},
                                        std::move(extended));
        CHECK(maximal_grasp(table_ext, belief).grasp_id == chosen);
    }
}

TEST_CASE("expected score is linear in the belief weights")
{
    const GraspScoreTable table = demo_table();
    const std::vector<WeightedPose> b1 = {{"A", 0.6}, {"B", 0.3}, {"C", 0.1}};
    const std::vector<WeightedPose> b2 = {{"A", 0.1}, {"B", 0.2}, {"C", 0.7}};
    for (const std::string grasp : {"g1", "g2"}) {
        const double s1 = expected_grasp_score(table, grasp, b1);
        const double s2 = expected_grasp_score(table, grasp, b2);
        for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
            std::vector<WeightedPose> mix;
            for (std::size_t i = 0; i < b1.size(); ++i)
                mix.push_back({b1[i].pose_id,
                               alpha * b1[i].weight + (1.0 - alpha) * b2[i].weight});
            const double sm = expected_grasp_score(table, grasp, mix);
            CHECK(std::abs(sm - (alpha * s1 + (1.0 - alpha) * s2)) <= 1e-12);
        }
    }
}

TEST_CASE("unknown ids raise input errors")
{
    const GraspScoreTable table = demo_table();
    const std::vector<WeightedPose> belief = {{"A", 1.0}};
    CHECK_THROWS_AS(expected_grasp_score(table, "nope", belief), InputError);
    const std::vector<WeightedPose> bad_pose = {{"Z", 1.0}};
    CHECK_THROWS_AS(expected_grasp_score(table, "g1", bad_pose), InputError);
    CHECK_THROWS_AS(table.score("g1", "Z"), InputError);
}

TEST_CASE("grasp table CSV round trip and validation")
{
    std::istringstream in("pose,g1,g2\n"
                          "lying,0.8,0.1\n"
                          "standing,0.2,0.9\n");
    const GraspScoreTable table = GraspScoreTable::from_csv(in, "demo");
    CHECK(table.pose_ids() == std::vector<std::string>{"lying", "standing"});
    CHECK(table.grasp_ids() == std::vector<std::string>{"g1", "g2"});
    CHECK(table.score("g2", "standing") == 0.9);

    {
        std::istringstream bad("pose,g1\nlying,1.5\n");
        CHECK_THROWS_AS(GraspScoreTable::from_csv(bad, "range"), InputError);
    }
    {
        std::istringstream bad("pose,g1\nlying,abc\n");
        CHECK_THROWS_AS(GraspScoreTable::from_csv(bad, "nan"), InputError);
    }
    {
        std::istringstream bad("pose,g1,g2\nlying,0.5\n");
        CHECK_THROWS_AS(GraspScoreTable::from_csv(bad, "short"), InputError);
    }
    {
        std::istringstream bad("pose,g1,g1\nlying,0.5,0.6\n");
        CHECK_THROWS_AS(GraspScoreTable::from_csv(bad, "dup"), InputError);
    }
}

TEST_CASE("attempts log aggregates success ratios")
{
    std::istringstream in("pose,grasp,success\n"
                          "A,g1,1\n"
                          "A,g1,0\n"
                          "A,g1,1\n"
                          "A,g2,0\n"
                          "B,g1,1\n"
                          "B,g2,1\n");
    const GraspScoreTable table = GraspScoreTable::from_attempts_csv(in, "log");
    CHECK(table.score("g1", "A") == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(table.score("g2", "A") == 0.0);
    CHECK(table.score("g1", "B") == 1.0);

    std::istringstream missing("pose,grasp,success\nA,g1,1\nB,g2,1\n");
    CHECK_THROWS_AS(GraspScoreTable::from_attempts_csv(missing, "gap"), InputError);

    std::istringstream badflag("pose,grasp,success\nA,g1,2\n");
    CHECK_THROWS_AS(GraspScoreTable::from_attempts_csv(badflag, "flag"), InputError);
}
