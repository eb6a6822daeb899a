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

// korn-gate: exact verification of piecewise Korn inequalities for finite element spaces.
// Exit codes: 0 expected verdict reproduced, 1 verdict mismatch, 2 input error.

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "korn/driver.hpp"
#include "korn/mesh_io.hpp"
#include "korn/sharpness.hpp"

namespace {

constexpr int kExpected = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::string format = "text";
  std::string path;

  void emit(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      if (!text.empty() && text.back() != '\n') std::cout << "\n";
      return;
    }
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
  }
  bool json() const { return format == "json"; }
};

void add_output_options(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  cmd->add_option("--out", out.path, "Write the report to this file instead of stdout");
}

korn::Mesh resolve_mesh(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string name = spec.substr(prefix.size());
    auto names = korn::builtin_mesh_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      std::string list;
      for (const auto& n : names) list += " " + n;
      throw InputError("unknown builtin mesh \"" + name + "\"; available:" + list);
    }
    return korn::builtin_mesh(name);
  }
  return korn::load_mesh(spec);
}

int cmd_list_elements(const Output& out) {
  out.emit(out.json() ? korn::registry_json() : korn::registry_text());
  return kExpected;
}

int cmd_reproduce_tables(const Output& out, const std::vector<int>& tables) {
  korn::TableReport r = korn::reproduce_tables(tables.empty() ? std::vector<int>{1, 2} : tables);
  out.emit(out.json() ? korn::to_json(r) : korn::to_text(r));
  return r.all_match() && r.all_unisolvent() ? kExpected : kMismatch;
}

int cmd_counterexample(const Output& out, const std::string& domain, int k) {
  const int dim = domain == "2d" ? 2 : 3;
  std::vector<int> ks;
  if (k > 0) {
    ks.push_back(k);
  } else {
    for (int i = 1; i <= (dim == 2 ? 3 : 6); ++i) ks.push_back(i);
  }
  std::vector<korn::SharpnessReport> reports;
  for (int i : ks) {
    korn::ConditionSet cs;
    try {
      cs = korn::condition_set(dim, i);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what());
    }
    reports.push_back(korn::verify_sharpness(korn::build_counterexample(cs)));
  }
  bool all = true;
  for (const auto& r : reports) all = all && r.all_pass();
  if (out.json()) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : reports) j.push_back(nlohmann::ordered_json::parse(korn::to_json(r)));
    out.emit(j.dump(2));
  } else {
    std::string text;
    for (const auto& r : reports) text += korn::to_text(r);
    out.emit(text);
  }
  return all ? kExpected : kMismatch;
}

int cmd_integrals(const Output& out, const std::string& domain) {
  const int dim = domain == "2d" ? 2 : 3;
  auto jump = korn::jump_integral_table(dim);
  auto boundary = korn::boundary_moment_table(dim);
  bool all = true;
  auto rows_json = [&](const std::vector<korn::FormRow>& rows) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      all = all && r.agrees();
      a.push_back({{"name", r.name},
                   {"computed", korn::form_text(r.computed, dim)},
                   {"printed", korn::form_text(r.printed, dim)},
                   {"agrees", r.agrees()}});
    }
    return a;
  };
  nlohmann::ordered_json j;
  j["domain"] = domain;
  j["interface_integrals"] = rows_json(jump);
  j["boundary_moments"] = rows_json(boundary);
  if (out.json()) {
    out.emit(j.dump(2));
  } else {
    std::ostringstream os;
    for (const char* key : {"interface_integrals", "boundary_moments"}) {
      os << key << ":\n";
      for (const auto& r : j[key]) {
        os << "  " << r["name"].get<std::string>() << "\n    computed: " << r["computed"].get<std::string>()
           << "\n    printed:  " << r["printed"].get<std::string>() << "\n    " << (r["agrees"].get<bool>() ? "agree" : "DIFFER")
           << "\n";
      }
    }
    out.emit(os.str());
  }
  return all ? kExpected : kMismatch;
}

korn::KernelOptions kernel_options(bool phi, const std::string& jumps) {
  korn::KernelOptions o;
  o.include_phi = phi;
  o.jump_control = jumps == "minimal" ? korn::JumpControl::minimal : korn::JumpControl::none;
  return o;
}

void check_space_name(const std::string& name) {
  auto names = korn::kernel_space_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) return;
  std::string list;
  for (const auto& n : names) list += "\n  " + n;
  throw InputError("unknown element \"" + name + "\" (run `korn-gate list-elements`); known names:" + list);
}

int cmd_kernel(const Output& out, const std::string& element, const std::string& mesh_spec, bool phi,
               const std::string& jumps, const std::string& expect) {
  check_space_name(element);
  korn::Mesh mesh = resolve_mesh(mesh_spec);
  korn::KernelRun run;
  try {
    run = korn::run_kernel(element, mesh, kernel_options(phi, jumps));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (!expect.empty()) run.expected_holds = expect == "holds";
  run.report.notes.push_back(std::string("expected verdict: ") + korn::verdict_text(run.expected_holds));
  out.emit(out.json() ? korn::to_json(run.report) : korn::to_text(run.report));
  return run.matches() ? kExpected : kMismatch;
}

int cmd_estimate(const Output& out, const std::string& element, const std::string& mesh_spec, bool phi,
                 const std::vector<std::string>& dropped, bool sharpness_conditions) {
  check_space_name(element);
  korn::Mesh mesh = resolve_mesh(mesh_spec);
  korn::PiecewiseSpace space;
  if (element == "p1-continuous") {
    space = korn::make_piecewise_space(mesh, element, korn::basis_vector_P(mesh.dim(), 1).generators,
                                       korn::find_dof_set("p1-trace"));
  } else if (element == "rm-piecewise") {
    space = korn::make_piecewise_space(mesh, element, korn::basis_RM(mesh.dim()).generators, std::nullopt);
  } else {
    const auto& e = korn::find_element(element);
    if (e.dimension != mesh.dim() || !mesh.is_simplicial()) throw InputError("mesh does not fit element " + e.name);
    space = korn::make_piecewise_space(mesh, e);
  }
  korn::EstimateOptions o;
  o.include_phi = phi;
  o.dropped = {dropped.begin(), dropped.end()};
  if (sharpness_conditions) o.functionals = korn::sharpness_functionals;
  korn::KornEstimate est = korn::korn_constant_estimate(mesh, space, o);
  nlohmann::ordered_json j;
  j["element"] = element;
  j["estimate"] = est.value;
  j["dimension"] = est.dimension;
  j["weights"] = est.weights;
  j["dropped"] = dropped;
  if (out.json()) {
    out.emit(j.dump(2));
  } else {
    std::ostringstream os;
    os << "element:   " << element << "\nestimate:  " << est.value << "\ndimension: " << est.dimension
       << "\nweights:   " << est.weights << "\n";
    out.emit(os.str());
  }
  return kExpected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"korn-gate: exact Korn-inequality verification for piecewise polynomial spaces"};
  app.require_subcommand(1);
  Output out;

  auto* list = app.add_subcommand("list-elements", "List registered elements");
  add_output_options(list, out);

  std::vector<int> tables;
  auto* tab = app.add_subcommand("reproduce-tables", "Coverage and unisolvence for the two comparison tables");
  tab->add_option("--table", tables, "Table number (repeatable; default both)")->check(CLI::IsMember({1, 2}));
  add_output_options(tab, out);

  std::string domain = "2d";
  int k = 0;
  auto* cx = app.add_subcommand("counterexample", "Build and verify the sharpness counterexamples");
  cx->add_option("--domain", domain, "Canonical domain")->check(CLI::IsMember({"2d", "3d"}))->capture_default_str();
  cx->add_option("--k", k, "Index of the dropped condition (default: all)");
  add_output_options(cx, out);

  auto* integ = app.add_subcommand("integrals", "Recompute the closed-form interface and boundary integrals");
  integ->add_option("--domain", domain, "Canonical domain")->check(CLI::IsMember({"2d", "3d"}))->capture_default_str();
  add_output_options(integ, out);

  std::string element, mesh_spec, jumps = "none";
  bool phi = true;
  auto* kern = app.add_subcommand("kernel", "Exact kernel test on a mesh");
  kern->add_option("--element", element, "Element or space name")->required();
  kern->add_option("--mesh", mesh_spec, "Mesh JSON file, or builtin:<name>")->required();
  kern->add_flag("--phi,!--no-phi", phi, "Include the boundary seminorm (default on)");
  kern->add_option("--jumps", jumps, "Interface jump control")->check(CLI::IsMember({"none", "minimal"}))->capture_default_str();
  std::string expect;
  kern->add_option("--expect", expect, "Override the expected verdict")->check(CLI::IsMember({"holds", "fails"}));
  add_output_options(kern, out);

  std::vector<std::string> dropped;
  bool sharp = false;
  auto* est = app.add_subcommand("estimate", "Floating-point Korn constant estimate");
  est->add_option("--element", element, "Element or space name")->required();
  est->add_option("--mesh", mesh_spec, "Mesh JSON file, or builtin:<name>")->required();
  est->add_flag("--phi,!--no-phi", phi, "Include the boundary seminorm (default on)");
  est->add_option("--drop", dropped, "Interface functional label left out of the jump term (repeatable)");
  est->add_flag("--sharpness-conditions", sharp, "Use the canonical-domain condition family (pi0-normal, A1, ...)");
  add_output_options(est, out);

  std::string mesh_name;
  auto* exp = app.add_subcommand("export-mesh", "Print a builtin mesh as JSON");
  exp->add_option("--name", mesh_name, "Builtin mesh name")->required()->check(CLI::IsMember(korn::builtin_mesh_names()));
  exp->add_option("--out", out.path, "Write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*list) return cmd_list_elements(out);
    if (*tab) return cmd_reproduce_tables(out, tables);
    if (*cx) return cmd_counterexample(out, domain, k);
    if (*integ) return cmd_integrals(out, domain);
    if (*kern) return cmd_kernel(out, element, mesh_spec, phi, jumps, expect);
    if (*exp) {
      out.emit(korn::mesh_to_json(resolve_mesh("builtin:" + mesh_name)));
      return kExpected;
    }
    if (*est) return cmd_estimate(out, element, mesh_spec, phi, dropped, sharp);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const korn::MeshParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kMismatch;
  }
  return kInputError;
}
