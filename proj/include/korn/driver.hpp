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

#include <string>
#include <vector>

#include "korn/korn.hpp"

namespace korn {

struct TableRow {
  ElementDescriptor element;
  KornReport coverage;
  UnisolvenceResult unisolvence;
  bool verdict_matches() const { return coverage.holds == element.expected_korn; }
};

struct TableReport {
  std::vector<TableRow> rows;
  bool all_match() const;
  bool all_unisolvent() const;
};

/// Coverage test and reference-cell unisolvence for every row of the requested tables.
TableReport reproduce_tables(const std::vector<int>& tables = {1, 2});
std::string to_json(const TableReport& r);
std::string to_text(const TableReport& r);

/// Spaces accepted by the kernel command: every registry element plus "p1-continuous"
/// (continuous vector P1) and "rm-piecewise" (broken rigid motions).
std::vector<std::string> kernel_space_names();

struct KernelRun {
  KornReport report;
  bool expected_holds = true;
  bool matches() const { return report.holds == expected_holds; }
};

/// Throws std::invalid_argument for unknown names or a mesh the space cannot live on.
KernelRun run_kernel(const std::string& space_name, const Mesh& mesh, const KernelOptions& options);

std::string registry_text();

}  // namespace korn
