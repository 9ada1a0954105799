#include "voa/eval.hpp"

namespace voa {

InterventionMetrics intervention_metrics(const GraspScoreTable& table,
                                         std::span<const WeightedPose> belief,
                                         const std::string& g_initial, const std::string& g_final,
                                         const std::string& g_best)
{
    const std::size_t gi = table.grasp_index(g_initial);
    const std::size_t gf = table.grasp_index(g_final);
    const std::size_t gb = table.grasp_index(g_best);

    double delta = 0.0;
    double denom = 0.0;
    for (const auto& wp : belief) {
        const std::size_t row = table.pose_index(wp.pose_id);
        delta += wp.weight * (table.score_at(row, gf) - table.score_at(row, gi));
        denom += wp.weight * (table.score_at(row, gb) - table.score_at(row, gi));
    }

    InterventionMetrics out;
    out.delta = delta;
    if (denom != 0.0) {
        out.delta_star.value = delta / denom;
        out.delta_star.defined = true;
    }
    return out;
}

Ratio advantage(const Ratio& delta_star_selected, std::span<const Ratio> delta_stars_all)
{
    Ratio out;
    if (!delta_star_selected.defined || delta_stars_all.empty())
        return out;
    double sum = 0.0;
    int defined = 0;
    for (const auto& r : delta_stars_all) {
        if (r.defined) {
            sum += r.value;
            ++defined;
        }
    }
    if (defined == 0)
        return out;
    const double mean = sum / static_cast<double>(defined);
    if (mean == 0.0)
        return out;
    out.value = delta_star_selected.value / mean;
    out.defined = true;
    return out;
}

} // namespace voa
