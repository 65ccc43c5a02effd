// Copyright 2026 The polydist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "polydist/mesh_io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace polydist {

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_i32(std::ostream& os, std::int32_t v) { put_u32(os, static_cast<std::uint32_t>(v)); }

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& os, double v) { put_u64(os, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
  return v;
}

std::int32_t get_i32(std::istream& is) { return static_cast<std::int32_t>(get_u32(is)); }

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  is.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_polymesh(const PolyMesh& mesh, const std::string& path, bool binary) {
  std::ofstream os(path, binary ? std::ios::binary : std::ios::out);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");

  if (binary) {
    os << "polymesh 1 binary\n";
    put_u64(os, mesh.vertices.size());
    put_u64(os, mesh.faces.size());
    put_u64(os, mesh.cells.size());
    for (const Vec3& v : mesh.vertices) {
      put_f64(os, v.x);
      put_f64(os, v.y);
      put_f64(os, v.z);
    }
    for (const Face& f : mesh.faces) {
      put_u32(os, static_cast<std::uint32_t>(f.verts.size()));
      for (int v : f.verts) put_u32(os, static_cast<std::uint32_t>(v));
      put_u32(os, static_cast<std::uint32_t>(f.owner));
      put_i32(os, f.neighbor);
    }
    for (const Cell& c : mesh.cells) {
      put_u32(os, static_cast<std::uint32_t>(c.faces.size()));
      for (int g : c.faces) put_u32(os, static_cast<std::uint32_t>(g));
    }
  } else {
    os << "polymesh 1 ascii\n";
    os << mesh.vertices.size() << ' ' << mesh.faces.size() << ' ' << mesh.cells.size()
       << '\n';
    for (const Vec3& v : mesh.vertices)
      os << fmt17(v.x) << ' ' << fmt17(v.y) << ' ' << fmt17(v.z) << '\n';
    for (const Face& f : mesh.faces) {
      os << f.verts.size();
      for (int v : f.verts) os << ' ' << v;
      os << ' ' << f.owner << ' ' << f.neighbor << '\n';
    }
    for (const Cell& c : mesh.cells) {
      os << c.faces.size();
      for (int g : c.faces) os << ' ' << g;
      os << '\n';
    }
  }
  if (!os) throw std::runtime_error("write to " + path + " failed");
}

PolyMesh read_polymesh(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  std::string header;
  std::getline(is, header);
  std::istringstream hs(header);
  std::string magic, mode;
  int version = 0;
  hs >> magic >> version >> mode;
  if (magic != "polymesh") throw std::runtime_error(path + ": not a polymesh file");
  if (version != 1) throw std::runtime_error(path + ": unsupported polymesh version");

  std::vector<Vec3> vertices;
  std::vector<Face> faces;
  std::vector<Cell> cells;

  if (mode == "binary") {
    const std::uint64_t nv = get_u64(is), nf = get_u64(is), nc = get_u64(is);
    vertices.resize(nv);
    for (auto& v : vertices) {
      v.x = get_f64(is);
      v.y = get_f64(is);
      v.z = get_f64(is);
    }
    faces.resize(nf);
    for (auto& f : faces) {
      const std::uint32_t k = get_u32(is);
      f.verts.resize(k);
      for (auto& v : f.verts) v = static_cast<int>(get_u32(is));
      f.owner = static_cast<int>(get_u32(is));
      f.neighbor = get_i32(is);
    }
    cells.resize(nc);
    for (auto& c : cells) {
      const std::uint32_t m = get_u32(is);
      c.faces.resize(m);
      for (auto& g : c.faces) g = static_cast<int>(get_u32(is));
    }
    if (!is) throw std::runtime_error(path + ": truncated binary polymesh");
  } else if (mode == "ascii") {
    std::size_t nv = 0, nf = 0, nc = 0;
    is >> nv >> nf >> nc;
    vertices.resize(nv);
    for (auto& v : vertices) is >> v.x >> v.y >> v.z;
    faces.resize(nf);
    for (auto& f : faces) {
      std::size_t k = 0;
      is >> k;
      f.verts.resize(k);
      for (auto& v : f.verts) is >> v;
      is >> f.owner >> f.neighbor;
    }
    cells.resize(nc);
    for (auto& c : cells) {
      std::size_t m = 0;
      is >> m;
      c.faces.resize(m);
      for (auto& g : c.faces) is >> g;
    }
    if (!is) throw std::runtime_error(path + ": truncated ascii polymesh");
  } else {
    throw std::runtime_error(path + ": unknown polymesh mode '" + mode + "'");
  }

  return build_poly_mesh(std::move(vertices), std::move(faces), std::move(cells));
}

void write_vtk(const PolyMesh& mesh, const std::string& path,
               std::span<const double> cell_field, const std::string& field_name) {
  if (!cell_field.empty() && cell_field.size() != mesh.num_cells())
    throw std::invalid_argument("cell field size does not match cell count");

  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");

  os << "# vtk DataFile Version 4.2\n";
  os << "polydist mesh\n";
  os << "ASCII\n";
  os << "DATASET UNSTRUCTURED_GRID\n";
  os << "POINTS " << mesh.vertices.size() << " double\n";
  for (const Vec3& v : mesh.vertices)
    os << fmt17(v.x) << ' ' << fmt17(v.y) << ' ' << fmt17(v.z) << '\n';

  // Polyhedron cells use the face-stream connectivity:
  // [nFaces, n0, ids..., n1, ids..., ...]
  std::size_t stream_len = 0;
  for (const Cell& c : mesh.cells) {
    stream_len += 1;
    for (int g : c.faces) stream_len += 1 + mesh.faces[g].verts.size();
  }
  os << "CELLS " << mesh.cells.size() << ' ' << mesh.cells.size() + stream_len << '\n';
  for (const Cell& c : mesh.cells) {
    std::size_t len = 1;
    for (int g : c.faces) len += 1 + mesh.faces[g].verts.size();
    os << len << ' ' << c.faces.size();
    for (int g : c.faces) {
      os << ' ' << mesh.faces[g].verts.size();
      for (int v : mesh.faces[g].verts) os << ' ' << v;
    }
    os << '\n';
  }
  os << "CELL_TYPES " << mesh.cells.size() << '\n';
  for (std::size_t i = 0; i < mesh.cells.size(); ++i) os << "42\n";

  if (!cell_field.empty()) {
    os << "CELL_DATA " << mesh.cells.size() << '\n';
    os << "SCALARS " << field_name << " double 1\n";
    os << "LOOKUP_TABLE default\n";
    for (double v : cell_field) os << fmt17(v) << '\n';
  }
  if (!os) throw std::runtime_error("write to " + path + " failed");
}

}  // namespace polydist
