#pragma once

#include "voa/pose.hpp"
#include "voa/random.hpp"
#include "voa/sensors.hpp"
#include "voa/similarity.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

namespace voa {

// Modified Bessel function of the first kind, order zero. Power series to
// relative 1e-12; asymptotic expansion above the overflow knee.
double bessel_i0(double kappa);
double log_bessel_i0(double kappa);

// von Mises density exp(kappa cos(theta - mu)) / (2 pi I0(kappa)).
double von_mises_pdf(double theta, double mu, double kappa);
double von_mises_log_pdf(double theta, double mu, double kappa);

// Joint model of the initial belief after a drop: categorical prior over
// stable-pose categories, von Mises yaw, bivariate normal position.
struct InitialBeliefModel {
    std::vector<std::pair<std::string, double>> category_prior; // ordered, sums to 1
    double theta_mean = 0.0; // rad
    double kappa = 0.0;      // >= 0
    Eigen::Vector2d position_mean = Eigen::Vector2d::Zero();
    Eigen::Matrix2d position_cov = Eigen::Matrix2d::Identity(); // symmetric positive definite
};

void validate_belief_model(const InitialBeliefModel& model);

double initial_density(const InitialBeliefModel& model, const Pose& pose);
double log_initial_density(const InitialBeliefModel& model, const Pose& pose);

// Weighted hypothesis set over sampled poses. Weights are nonnegative and
// sum to 1 within 1e-12. Beliefs are immutable values; updates return new
// beliefs.
struct Belief {
    std::vector<std::string> ids;
    std::vector<Pose> poses;
    std::vector<double> weights;

    std::size_t size() const { return poses.size(); }
    std::size_t index_of(const std::string& pose_id) const; // throws InputError
};

void validate_belief(const Belief& belief);

// Draws `count` poses (category by prior, yaw by von Mises, position by the
// planar Gaussian) and weights them by their normalized initial densities.
// Pose ids are p1..pN in draw order. Deterministic for a given stream.
Belief sample_pose_set(const InitialBeliefModel& model, int count, RandomStream& rng);

// Bayes reweighting: weight'(p) proportional to factor(p) * weight(p),
// normalized over the pose set. Throws ComputeError when every product is
// zero ("observation inconsistent with belief support").
Belief reweighted(const Belief& belief, std::span<const double> factors);

// Full update against an observed reading: factors are the similarity scores
// between each pose's predicted observation and `observed`.
Belief belief_update(const Belief& belief, const Observation& observed,
                     const SensorConfigVariant& config, const SimilarityMetric& metric,
                     const ObservationPredictor& predictor);

} // namespace voa
