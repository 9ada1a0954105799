#include "voa/belief.hpp"

#include "voa/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace voa {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Power series sum_{k>=0} (x^2/4)^k / (k!)^2; every term is positive so the
// truncation error is below the first dropped term.
double bessel_i0_series(double kappa)
{
    const double q = kappa * kappa / 4.0;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k));
        sum += term;
        if (term < sum * 1e-16)
            break;
    }
    return sum;
}

// log(exp(-kappa) I0(kappa)) via the asymptotic expansion; used where the
// plain series would overflow.
double log_bessel_i0_scaled_asymptotic(double kappa)
{
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 8; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= odd * odd / (8.0 * kappa * static_cast<double>(k));
        sum += term;
    }
    return -0.5 * std::log(kTwoPi * kappa) + std::log(sum);
}

constexpr double kSeriesLimit = 700.0; // I0 overflows just above exp(709)

} // namespace

double bessel_i0(double kappa)
{
    if (kappa < 0.0)
        kappa = -kappa;
    if (kappa <= kSeriesLimit)
        return bessel_i0_series(kappa);
    return std::exp(log_bessel_i0(kappa));
}

double log_bessel_i0(double kappa)
{
    if (kappa < 0.0)
        kappa = -kappa;
    if (kappa <= kSeriesLimit)
        return std::log(bessel_i0_series(kappa));
    return kappa + log_bessel_i0_scaled_asymptotic(kappa);
}

double von_mises_log_pdf(double theta, double mu, double kappa)
{
    return kappa * std::cos(theta - mu) - std::log(kTwoPi) - log_bessel_i0(kappa);
}

double von_mises_pdf(double theta, double mu, double kappa)
{
    return std::exp(von_mises_log_pdf(theta, mu, kappa));
}

void validate_belief_model(const InitialBeliefModel& model)
{
    if (model.category_prior.empty())
        throw InputError("belief model needs at least one stable-pose category");
    double total = 0.0;
    for (const auto& [name, p] : model.category_prior) {
        if (p < 0.0)
            throw InputError("category prior for '" + name + "' is negative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw InputError("category prior must sum to 1");
    if (model.kappa < 0.0)
        throw InputError("von Mises kappa must be nonnegative");
    const Eigen::Matrix2d& cov = model.position_cov;
    if (std::abs(cov(0, 1) - cov(1, 0)) > 1e-12)
        throw InputError("position covariance must be symmetric");
    if (cov(0, 0) <= 0.0 || cov.determinant() <= 0.0)
        throw InputError("position covariance must be positive definite");
}

namespace {

double category_mass(const InitialBeliefModel& model, const std::string& category)
{
    for (const auto& [name, p] : model.category_prior)
        if (name == category)
            return p;
    throw InputError("pose category '" + category + "' is not in the belief model prior");
}

double gaussian2_log_pdf(const Eigen::Vector2d& x, const Eigen::Vector2d& mean,
                         const Eigen::Matrix2d& cov)
{
    const double det = cov.determinant();
    const Eigen::Vector2d d = x - mean;
    const double quad = d.dot(cov.inverse() * d);
    return -std::log(kTwoPi) - 0.5 * std::log(det) - 0.5 * quad;
}

} // namespace

double log_initial_density(const InitialBeliefModel& model, const Pose& pose)
{
    const double mass = category_mass(model, pose.category);
    if (mass == 0.0)
        return -std::numeric_limits<double>::infinity();
    return std::log(mass) + von_mises_log_pdf(pose.theta, model.theta_mean, model.kappa) +
           gaussian2_log_pdf(Eigen::Vector2d(pose.x, pose.y), model.position_mean,
                             model.position_cov);
}

double initial_density(const InitialBeliefModel& model, const Pose& pose)
{
    return std::exp(log_initial_density(model, pose));
}

std::size_t Belief::index_of(const std::string& pose_id) const
{
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == pose_id)
            return i;
    throw InputError("unknown pose id '" + pose_id + "'");
}

void validate_belief(const Belief& belief)
{
    if (belief.poses.empty())
        throw InputError("belief over an empty pose set");
    if (belief.ids.size() != belief.poses.size() || belief.weights.size() != belief.poses.size())
        throw InputError("belief ids/poses/weights lengths differ");
    double total = 0.0;
    for (double w : belief.weights) {
        if (w < 0.0)
            throw InputError("belief weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw InputError("belief weights must sum to 1");
}

Belief sample_pose_set(const InitialBeliefModel& model, int count, RandomStream& rng)
{
    validate_belief_model(model);
    if (count < 1)
        throw InputError("sample count must be at least 1");

    std::vector<double> prior;
    prior.reserve(model.category_prior.size());
    for (const auto& [name, p] : model.category_prior)
        prior.push_back(p);

    // Cholesky factor of the position covariance for correlated draws.
    const Eigen::LLT<Eigen::Matrix2d> llt(model.position_cov);
    const Eigen::Matrix2d chol = llt.matrixL();

    Belief belief;
    belief.ids.reserve(count);
    belief.poses.reserve(count);
    std::vector<double> log_density(count);
    for (int i = 0; i < count; ++i) {
        Pose pose;
        pose.category = model.category_prior[rng.categorical(prior)].first;
        pose.theta = rng.von_mises(model.theta_mean, model.kappa);
        const Eigen::Vector2d z(rng.normal(), rng.normal());
        const Eigen::Vector2d xy = model.position_mean + chol * z;
        pose.x = xy.x();
        pose.y = xy.y();
        belief.ids.push_back("p" + std::to_string(i + 1));
        log_density[i] = log_initial_density(model, pose);
        belief.poses.push_back(std::move(pose));
    }

    // Normalized initial densities as weights, computed in log space so large
    // kappa values cannot overflow.
    const double max_log = *std::max_element(log_density.begin(), log_density.end());
    belief.weights.resize(count);
    double total = 0.0;
    for (int i = 0; i < count; ++i) {
        belief.weights[i] = std::exp(log_density[i] - max_log);
        total += belief.weights[i];
    }
    for (double& w : belief.weights)
        w /= total;
    return belief;
}

Belief reweighted(const Belief& belief, std::span<const double> factors)
{
    if (factors.size() != belief.size())
        throw InputError("reweighting needs one factor per pose");
    Belief out = belief;
    double total = 0.0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i] < 0.0)
            throw InputError("reweighting factors must be nonnegative");
        out.weights[i] = factors[i] * belief.weights[i];
        total += out.weights[i];
    }
    if (total <= 0.0)
        throw ComputeError("observation inconsistent with belief support (all similarities zero)");
    for (double& w : out.weights)
        w /= total;
    return out;
}

Belief belief_update(const Belief& belief, const Observation& observed,
                     const SensorConfigVariant& config, const SimilarityMetric& metric,
                     const ObservationPredictor& predictor)
{
    std::vector<double> factors(belief.size());
    for (std::size_t i = 0; i < belief.size(); ++i)
        factors[i] = similarity(metric, predictor.predict(belief.poses[i], config), observed);
    return reweighted(belief, factors);
}

} // namespace voa
