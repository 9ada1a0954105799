#include "voa/mesh_io.hpp"

#include "voa/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace voa {
namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& what)
{
    throw InputError(name + ":" + std::to_string(line) + ": " + what);
}

int parse_face_index(const std::string& name, int line, const std::string& token, int vertex_count)
{
    int value = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size())
        fail(name, line, "face index '" + token + "' is not a plain integer");
    if (value < 1 || value > vertex_count)
        fail(name, line,
             "face index " + token + " out of range (mesh has " + std::to_string(vertex_count) +
                 " vertices)");
    return value - 1;
}

} // namespace

TriangleMesh load_obj(std::istream& in, const std::string& name)
{
    TriangleMesh mesh;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag))
            continue;
        if (tag == "v") {
            double x = 0.0, y = 0.0, z = 0.0;
            if (!(ls >> x >> y >> z))
                fail(name, lineno, "vertex line needs three coordinates");
            mesh.vertices.emplace_back(x, y, z);
        } else if (tag == "f") {
            std::vector<std::string> tokens;
            std::string tok;
            while (ls >> tok)
                tokens.push_back(tok);
            if (tokens.size() != 3)
                fail(name, lineno,
                     "face has " + std::to_string(tokens.size()) + " vertices, only triangles are supported");
            std::array<int, 3> face{};
            for (int i = 0; i < 3; ++i)
                face[i] = parse_face_index(name, lineno, tokens[i],
                                           static_cast<int>(mesh.vertices.size()));
            mesh.faces.push_back(face);
        }
        // Other line types (vn, vt, comments, ...) are ignored.
    }
    validate_mesh(mesh);
    return mesh;
}

TriangleMesh load_obj_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open mesh file '" + path.string() + "'");
    return load_obj(in, path.string());
}

} // namespace voa
