#pragma once

#include "voa/geometry.hpp"

#include <filesystem>
#include <istream>

namespace voa {

// ASCII OBJ subset: `v x y z` and `f i j k` lines (1-based indices), anything
// else is ignored. Faces must be triangles; slash-annotated or negative
// indices are rejected.
TriangleMesh load_obj(std::istream& in, const std::string& name = "<stream>");
TriangleMesh load_obj_file(const std::filesystem::path& path);

} // namespace voa
