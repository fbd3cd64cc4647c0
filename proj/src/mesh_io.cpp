#include "fvineq/mesh_io.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace fvineq {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json coords(const Vec3& p, int dim) {
  json a = json::array();
  for (int d = 0; d < dim; ++d) a.push_back(p[d]);
  return a;
}

Vec3 point_from(const json& a, int dim) {
  if (!a.is_array() || static_cast<int>(a.size()) != dim)
    throw std::runtime_error("mesh json: coordinate arity does not match dim");
  Vec3 p = Vec3::Zero();
  for (int d = 0; d < dim; ++d) p[d] = a[d].get<double>();
  return p;
}

}  // namespace

void save_mesh(std::ostream& os, const Mesh& mesh) {
  ordered_json j;
  j["dim"] = mesh.dim();
  json nodes = json::array();
  for (const Vec3& p : mesh.nodes()) nodes.push_back(coords(p, mesh.dim()));
  j["nodes"] = std::move(nodes);

  json cells = json::array();
  for (int k = 0; k < mesh.n_cells(); ++k) {
    json c;
    c["verts"] = std::vector<int>(mesh.cell_vertices(k).begin(), mesh.cell_vertices(k).end());
    c["center"] = coords(mesh.cell_center(k), mesh.dim());
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);

  json faces = json::array();
  for (int f = 0; f < mesh.n_faces(); ++f) {
    json fc;
    fc["verts"] = std::vector<int>(mesh.face_vertices(f).begin(), mesh.face_vertices(f).end());
    const auto [K, L] = mesh.face_cells(f);
    fc["cells"] = (L >= 0) ? json::array({K, L}) : json::array({K});
    faces.push_back(std::move(fc));
  }
  j["faces"] = std::move(faces);
  j["tags"] = mesh.tags();
  os << j.dump(1, '\t') << '\n';
}

void save_mesh(const std::string& path, const Mesh& mesh) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  save_mesh(os, mesh);
}

Mesh load_mesh(std::istream& is) {
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("mesh json parse error: ") + e.what());
  }
  try {
    const int dim = j.at("dim").get<int>();
    std::vector<Vec3> nodes;
    for (const json& p : j.at("nodes")) nodes.push_back(point_from(p, dim));

    std::vector<std::vector<int>> cell_verts;
    std::vector<Vec3> centers;
    for (const json& c : j.at("cells")) {
      cell_verts.push_back(c.at("verts").get<std::vector<int>>());
      centers.push_back(point_from(c.at("center"), dim));
    }

    std::vector<std::vector<int>> face_verts;
    std::vector<std::array<int, 2>> face_cells;
    for (const json& f : j.at("faces")) {
      face_verts.push_back(f.at("verts").get<std::vector<int>>());
      const auto cells = f.at("cells").get<std::vector<int>>();
      if (cells.empty() || cells.size() > 2)
        throw std::runtime_error("mesh json: face must list one or two cells");
      face_cells.push_back({cells[0], cells.size() == 2 ? cells[1] : -1});
    }

    std::map<std::string, std::vector<int>> tags;
    if (j.contains("tags")) tags = j.at("tags").get<std::map<std::string, std::vector<int>>>();

    return Mesh::from_data(dim, std::move(nodes), std::move(cell_verts), std::move(centers),
                           std::move(face_verts), std::move(face_cells), std::move(tags));
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("mesh json schema error: ") + e.what());
  }
}

Mesh load_mesh(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open '" + path + "' for reading");
  return load_mesh(is);
}

}  // namespace fvineq
