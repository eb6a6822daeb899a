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

#include "korn/mesh_io.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

namespace korn {

namespace {

struct Location {
  std::size_t line = 0;
  std::size_t column = 0;
};

Location location_of(const std::string& text, std::size_t offset) {
  Location loc{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

/// Start offsets of every value in syntactically valid JSON, keyed by JSON pointer.
class OffsetIndex {
 public:
  explicit OffsetIndex(const std::string& text) : text_(text) {
    skip_ws();
    value("");
  }
  /// Offset of the deepest recorded prefix of `pointer`.
  std::size_t find(std::string pointer) const {
    while (true) {
      auto it = offsets_.find(pointer);
      if (it != offsets_.end()) return it->second;
      auto slash = pointer.rfind('/');
      if (slash == std::string::npos) return 0;
      pointer.resize(slash);
    }
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string string_token() {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      out += text_[pos_++];
    }
    ++pos_;
    return out;
  }
  void value(const std::string& pointer) {
    offsets_[pointer] = pos_;
    char c = text_[pos_];
    if (c == '{') {
      ++pos_;
      skip_ws();
      while (text_[pos_] != '}') {
        std::string key = string_token();
        skip_ws();
        ++pos_;  // ':'
        skip_ws();
        value(pointer + "/" + key);
        skip_ws();
        if (text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '[') {
      ++pos_;
      skip_ws();
      for (std::size_t i = 0; text_[pos_] != ']'; ++i) {
        value(pointer + "/" + std::to_string(i));
        skip_ws();
        if (text_[pos_] == ',') ++pos_;
        skip_ws();
      }
      ++pos_;
    } else if (c == '"') {
      string_token();
    } else {
      while (pos_ < text_.size() && !std::strchr(",]} \t\r\n", text_[pos_])) ++pos_;
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::map<std::string, std::size_t> offsets_;
};

struct Reader {
  const std::string& text;
  const std::string& source;
  OffsetIndex index;

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    Location loc = location_of(text, index.find(pointer));
    throw MeshParseError(source, loc.line, loc.column, message + " (at " + (pointer.empty() ? "/" : pointer) + ")");
  }

  const nlohmann::json& field(const nlohmann::json& obj, const std::string& pointer, const char* key) const {
    if (!obj.is_object()) fail(pointer, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(pointer, std::string("missing field \"") + key + "\"");
    return *it;
  }

  Rational rational(const nlohmann::json& v, const std::string& pointer) const {
    try {
      if (v.is_string()) return parse_rational(v.get<std::string>());
      if (v.is_number_integer()) return Rational(v.get<long>());
    } catch (const std::exception& e) {
      fail(pointer, std::string("bad rational: ") + e.what());
    }
    fail(pointer, "expected a rational string \"p/q\" or an integer");
  }
};

}  // namespace

MeshParseError::MeshParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

Mesh parse_mesh_json(const std::string& text, const std::string& source) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    Location loc = location_of(text, e.byte > 0 ? e.byte - 1 : 0);
    throw MeshParseError(source, loc.line, loc.column, std::string("JSON syntax error: ") + e.what());
  }
  Reader r{text, source, OffsetIndex(text)};

  const auto& dim_v = r.field(doc, "", "dimension");
  if (!dim_v.is_number_integer() || (dim_v.get<int>() != 2 && dim_v.get<int>() != 3)) {
    r.fail("/dimension", "dimension must be 2 or 3");
  }
  const int dim = dim_v.get<int>();

  const auto& verts_v = r.field(doc, "", "vertices");
  if (!verts_v.is_array() || verts_v.empty()) r.fail("/vertices", "vertices must be a non-empty array");
  std::vector<Point> vertices;
  for (std::size_t i = 0; i < verts_v.size(); ++i) {
    const std::string p = "/vertices/" + std::to_string(i);
    if (!verts_v[i].is_array() || static_cast<int>(verts_v[i].size()) != dim) {
      r.fail(p, "vertex must have " + std::to_string(dim) + " coordinates");
    }
    Point x;
    for (std::size_t k = 0; k < verts_v[i].size(); ++k) x.push_back(r.rational(verts_v[i][k], p + "/" + std::to_string(k)));
    vertices.push_back(std::move(x));
  }

  const auto& cells_v = r.field(doc, "", "cells");
  if (!cells_v.is_array() || cells_v.empty()) r.fail("/cells", "cells must be a non-empty array");
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < cells_v.size(); ++i) {
    const std::string p = "/cells/" + std::to_string(i);
    const auto& kind_v = r.field(cells_v[i], p, "kind");
    const auto& ids_v = r.field(cells_v[i], p, "vertex_ids");
    if (!kind_v.is_string()) r.fail(p + "/kind", "kind must be \"simplex\" or \"box\"");
    const std::string kind = kind_v.get<std::string>();
    if (kind != "simplex" && kind != "box") r.fail(p + "/kind", "unknown cell kind \"" + kind + "\"");
    const std::size_t want = kind == "simplex" ? static_cast<std::size_t>(dim + 1) : 2;
    if (!ids_v.is_array() || ids_v.size() != want) {
      r.fail(p + "/vertex_ids", kind + " cells need " + std::to_string(want) + " vertex ids");
    }
    std::vector<Point> pts;
    for (std::size_t k = 0; k < ids_v.size(); ++k) {
      const std::string q = p + "/vertex_ids/" + std::to_string(k);
      if (!ids_v[k].is_number_integer()) r.fail(q, "vertex id must be an integer");
      long id = ids_v[k].get<long>();
      if (id < 0 || id >= static_cast<long>(vertices.size())) r.fail(q, "vertex id out of range");
      pts.push_back(vertices[id]);
    }
    try {
      cells.push_back(kind == "simplex" ? Cell::simplex(pts) : Cell::box(pts[0], pts[1]));
    } catch (const std::invalid_argument& e) {
      r.fail(p, e.what());
    }
  }
  try {
    return Mesh(std::move(cells));
  } catch (const std::invalid_argument& e) {
    r.fail("/cells", e.what());
  }
}

Mesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MeshParseError(path, 0, 0, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_mesh_json(ss.str(), path);
}

std::string mesh_to_json(const Mesh& mesh) {
  nlohmann::ordered_json j;
  j["dimension"] = mesh.dim();
  std::map<Point, int> ids;
  nlohmann::ordered_json verts = nlohmann::ordered_json::array();
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const auto& cell : mesh.cells()) {
    nlohmann::ordered_json vid = nlohmann::ordered_json::array();
    for (const auto& p : cell.vertices()) {
      auto [it, inserted] = ids.emplace(p, static_cast<int>(ids.size()));
      if (inserted) {
        nlohmann::ordered_json coords = nlohmann::ordered_json::array();
        for (const auto& x : p) coords.push_back(to_string(x));
        verts.push_back(coords);
      }
      vid.push_back(it->second);
    }
    cells.push_back({{"kind", to_string(cell.kind())}, {"vertex_ids", vid}});
  }
  j["vertices"] = verts;
  j["cells"] = cells;
  return j.dump(2);
}

std::vector<std::string> builtin_mesh_names() {
  return {"two-square", "two-cube", "two-square-simplicial", "square-2x2", "simplex-pair-2d", "simplex-pair-3d"};
}

Mesh builtin_mesh(const std::string& name) {
  if (name == "two-square") return make_two_square_domain();
  if (name == "two-cube") return make_two_cube_domain();
  if (name == "two-square-simplicial") return make_rectangle_triangulation(-1, 1, 0, 1, 2, 1);
  if (name == "square-2x2") return make_rectangle_triangulation(0, 1, 0, 1, 2, 2);
  if (name == "simplex-pair-2d") return make_simplex_pair(2);
  if (name == "simplex-pair-3d") return make_simplex_pair(3);
  throw std::invalid_argument("unknown builtin mesh \"" + name + "\"");
}

}  // namespace korn
