#include "kwz/mesh_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace kwz {

using nlohmann::json;

MeshData parse_mesh(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& ex) {
    fail(ErrorCode::InvalidMesh, std::string("mesh is not valid JSON: ") + ex.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("faces"))
    fail(ErrorCode::InvalidMesh, "mesh JSON must be an object with 'vertices' and 'faces'");

  MeshData mesh;
  const json& verts = doc["vertices"];
  const json& faces = doc["faces"];
  if (!verts.is_array() || !faces.is_array())
    fail(ErrorCode::InvalidMesh, "'vertices' and 'faces' must be arrays");

  mesh.coords.reserve(verts.size());
  for (const json& v : verts) {
    if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
        !v[2].is_number())
      fail(ErrorCode::InvalidMesh, "each vertex must be an array of three numbers");
    mesh.coords.emplace_back(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
  }
  mesh.vertex_count = static_cast<int>(mesh.coords.size());

  mesh.faces.reserve(faces.size());
  for (const json& f : faces) {
    if (!f.is_array() || f.size() != 3 || !f[0].is_number_integer() ||
        !f[1].is_number_integer() || !f[2].is_number_integer())
      fail(ErrorCode::InvalidMesh, "each face must be an array of three vertex indices");
    mesh.faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
  }
  return mesh;
}

MeshData load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::IoError, "cannot open mesh file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCode::IoError, "cannot read mesh file: " + path);
  return parse_mesh(buf.str());
}

std::string mesh_to_json(const MeshData& mesh, int indent) {
  json verts = json::array();
  for (const Vec3& p : mesh.coords) verts.push_back({p.x(), p.y(), p.z()});
  json faces = json::array();
  for (const auto& f : mesh.faces) faces.push_back({f[0], f[1], f[2]});
  const json doc = {{"vertices", std::move(verts)}, {"faces", std::move(faces)}};
  return indent > 0 ? doc.dump(indent) : doc.dump();
}

void save_mesh(const std::string& path, const MeshData& mesh) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::IoError, "cannot open output file: " + path);
  out << mesh_to_json(mesh, 2) << '\n';
  if (!out) fail(ErrorCode::IoError, "cannot write output file: " + path);
}

}  // namespace kwz
