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

#pragma once

#include <stdexcept>
#include <string>

#include "korn/geometry.hpp"

namespace korn {

/// Malformed mesh text. line/column are 1-based; 0 when the location is unknown.
class MeshParseError : public std::runtime_error {
 public:
  MeshParseError(const std::string& source, std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// {"dimension": d, "vertices": [["p/q", ...], ...], "cells": [{"kind": "simplex"|"box", "vertex_ids": [...]}]}
/// Box cells list two vertex ids, the low and the high corner. Faces and adjacency are derived.
Mesh parse_mesh_json(const std::string& text, const std::string& source = "<string>");
Mesh load_mesh(const std::string& path);
std::string mesh_to_json(const Mesh& mesh);

/// "two-square", "two-cube", "two-square-simplicial", "square-2x2", "simplex-pair-2d", "simplex-pair-3d".
Mesh builtin_mesh(const std::string& name);
std::vector<std::string> builtin_mesh_names();

}  // namespace korn
