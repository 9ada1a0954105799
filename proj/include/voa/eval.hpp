#pragma once

#include "voa/grasp.hpp"

#include <span>
#include <string>

namespace voa {

// Ratio that may be undefined (zero denominator). Undefined values are
// reported as explicit flags, never NaN, and downstream averaging skips them.
struct Ratio {
    double value = 0.0;
    bool defined = false;
};

struct InterventionMetrics {
    double delta = 0.0;   // expected score gain of g_final over g_initial
    Ratio delta_star;     // delta / expected gain of g_best over g_initial
};

// delta  = E_b[score(g_final) - score(g_initial)]
// delta* = delta / E_b[score(g_best) - score(g_initial)], undefined when the
// denominator is zero (g_final == g_best gives delta* = 1 when defined).
InterventionMetrics intervention_metrics(const GraspScoreTable& table,
                                         std::span<const WeightedPose> belief,
                                         const std::string& g_initial,
                                         const std::string& g_final, const std::string& g_best);

// Advantage of the selected configuration: delta*(selected) divided by the
// mean delta* over all configurations. Undefined entries are skipped; the
// result is undefined when the selected value is undefined, no entry is
// defined, or the mean is zero.
Ratio advantage(const Ratio& delta_star_selected, std::span<const Ratio> delta_stars_all);

} // namespace voa
