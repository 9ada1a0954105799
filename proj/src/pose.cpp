#include "voa/pose.hpp"

#include "voa/errors.hpp"

namespace voa {

bool StablePoseCatalog::has(const std::string& category) const
{
    for (const auto& [name, placement] : entries)
        if (name == category)
            return true;
    return false;
}

const RigidPlacement& StablePoseCatalog::canonical(const std::string& category) const
{
    for (const auto& [name, placement] : entries)
        if (name == category)
            return placement;
    throw InputError("unknown stable pose '" + category + "'");
}

RigidPlacement resolve_placement(const StablePoseCatalog& catalog, const Pose& pose)
{
    const RigidPlacement& base = catalog.canonical(pose.category);
    RigidPlacement yawed;
    yawed.rotation = rotation_z(pose.theta);
    RigidPlacement out = compose(yawed, base);
    out.translation.x() += pose.x;
    out.translation.y() += pose.y;
    return out;
}

} // namespace voa
