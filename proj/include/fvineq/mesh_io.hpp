// Mesh (de)serialization. Only connectivity, coordinates, centers and tags
// are stored; measures and distances are recomputed on load, never trusted.
#ifndef FVINEQ_MESH_IO_HPP
#define FVINEQ_MESH_IO_HPP

#include <iosfwd>
#include <string>

#include "fvineq/mesh.hpp"

namespace fvineq {

void save_mesh(std::ostream& os, const Mesh& mesh);
void save_mesh(const std::string& path, const Mesh& mesh);

/// Throws std::runtime_error on malformed JSON or schema violations.
Mesh load_mesh(std::istream& is);
Mesh load_mesh(const std::string& path);

}  // namespace fvineq

#endif
