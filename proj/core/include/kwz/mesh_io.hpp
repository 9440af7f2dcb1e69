#pragma once

#include <iosfwd>
#include <string>

#include "kwz/immersion.hpp"

namespace kwz {

// JSON interchange format:
//   {"vertices": [[x, y, z], ...], "faces": [[i, j, k], ...]}
// 0-based vertex indices, faces counterclockwise as seen from outside.
// Numbers round-trip exactly (shortest-representation doubles).
// Structural problems raise InvalidMesh; file-system problems raise IoError.
MeshData parse_mesh(const std::string& json_text);
MeshData load_mesh(const std::string& path);
std::string mesh_to_json(const MeshData& mesh, int indent = 0);
void save_mesh(const std::string& path, const MeshData& mesh);

}  // namespace kwz
