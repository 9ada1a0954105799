#pragma once

#include "voa/geometry.hpp"

#include <string>
#include <utility>
#include <vector>

namespace voa {

// A hypothesized resting configuration: stable-pose category plus planar
// placement (yaw about world z, position on the support plane).
struct Pose {
    std::string category;
    double theta = 0.0; // rad, (-pi, pi]
    double x = 0.0;     // m
    double y = 0.0;     // m
};

// Canonical placement per category, bringing the mesh into that stable
// contact configuration at theta = 0, x = y = 0. Entry order is the declared
// category order used for deterministic sampling.
struct StablePoseCatalog {
    std::vector<std::pair<std::string, RigidPlacement>> entries;

    bool has(const std::string& category) const;
    const RigidPlacement& canonical(const std::string& category) const;
};

// Catalog placement for the category, then yaw about world z, then planar
// translation. Throws InputError("unknown stable pose ...") for categories
// absent from the catalog.
RigidPlacement resolve_placement(const StablePoseCatalog& catalog, const Pose& pose);

} // namespace voa
