#include "macfaces/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "macfaces/errors.hpp"

namespace macfaces {
namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* name) {
  if (!j.contains(name))
    throw ValidationError(std::string(name) + ": missing field");
  return j.at(name);
}

int require_int(const json& j, const char* name) {
  const json& v = require_field(j, name);
  if (!v.is_number_integer())
    throw ValidationError(std::string(name) + ": must be an integer");
  return v.get<int>();
}

std::vector<int> require_int_array(const json& j, const char* name) {
  const json& v = require_field(j, name);
  if (!v.is_array())
    throw ValidationError(std::string(name) + ": must be an array");
  std::vector<int> out;
  for (const json& e : v) {
    if (!e.is_number_integer())
      throw ValidationError(std::string(name) +
                            ": entries must be integers");
    out.push_back(e.get<int>());
  }
  return out;
}

std::vector<std::vector<double>> require_matrix(const json& j,
                                                const char* name) {
  const json& v = require_field(j, name);
  if (!v.is_array())
    throw ValidationError(std::string(name) + ": must be an array of arrays");
  std::vector<std::vector<double>> out;
  for (const json& row : v) {
    if (!row.is_array())
      throw ValidationError(std::string(name) +
                            ": must be an array of arrays");
    std::vector<double> r;
    for (const json& e : row) {
      if (!e.is_number())
        throw ValidationError(std::string(name) +
                              ": entries must be numbers");
      r.push_back(e.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

json set_to_json(UserSet s) { return json(s.elements()); }

json groups_to_json(const DecodingPlan& plan) {
  json groups = json::array();
  for (UserSet g : plan.groups) groups.push_back(set_to_json(g));
  return groups;
}

json label_entry(const FaceLabel& label) {
  const DecodingPlan plan = decoding_order(label);
  return json{{"label", to_string(label)},
              {"dim", face_dim(label)},
              {"groups", groups_to_json(plan)},
              {"skipped", set_to_json(plan.skipped)}};
}

std::string finish(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

ChannelSpec parse_channel_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ValidationError("channel: top level must be an object");

  ChannelSpec spec;
  spec.users = require_int(j, "users");
  spec.input_sizes = require_int_array(j, "input_sizes");
  spec.output_size = require_int(j, "output_size");
  spec.input_pmfs = require_matrix(j, "input_pmfs");
  spec.transition = require_matrix(j, "transition");
  validate(spec);
  return spec;
}

ChannelSpec load_channel_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open channel file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_json(buf.str());
}

std::string degeneracy_to_json(const DegeneracyReport& report) {
  json violations = json::array();
  for (const DegeneracyViolation& v : report.violations) {
    json entry{{"condition", v.condition}, {"s", set_to_json(v.s)}};
    if (v.condition == 1) {
      entry["mi"] = v.mi_a;
    } else {
      entry["a"] = set_to_json(v.a);
      entry["b"] = set_to_json(v.b);
      entry["mi_a"] = v.mi_a;
      entry["mi_b"] = v.mi_b;
    }
    entry["description"] = v.describe();
    violations.push_back(std::move(entry));
  }
  return finish(json{{"users", report.users},
                     {"margin", report.margin},
                     {"nondegenerate", report.nondegenerate()},
                     {"violations", violations}});
}

std::string plan_to_json(const DecodingPlan& plan) {
  return finish(
      json{{"groups", groups_to_json(plan)},
           {"skipped", set_to_json(plan.skipped)}});
}

std::string faces_to_json(int users, const std::vector<FaceLabel>& faces) {
  json list = json::array();
  for (const FaceLabel& f : faces) list.push_back(label_entry(f));
  return finish(json{{"users", users}, {"faces", list}});
}

std::string locate_to_json(const LocateResult& result) {
  if (const auto* label = std::get_if<FaceLabel>(&result)) {
    json j = label_entry(*label);
    j["achievable"] = true;
    return finish(j);
  }
  const auto& miss = std::get<NotAchievable>(result);
  return finish(json{
      {"achievable", false},
      {"violated",
       json{{"kind", miss.violated.kind == ConstraintKind::kBack ? "back"
                                                                 : "front"},
            {"subset", set_to_json(miss.violated.subset)},
            {"bound", miss.violated.bound}}},
      {"excess", miss.excess},
      {"description", miss.describe()}});
}

std::string vertices_to_json(const oracle::VertexSet& vs) {
  json verts = json::array();
  for (const auto& v : vs.vertices) verts.push_back(json(v));
  return finish(json{{"users", vs.users},
                     {"count", vs.vertices.size()},
                     {"vertices", verts}});
}

std::string cross_validate_to_json(const oracle::CrossValidateReport& r) {
  json formulas = json::array();
  for (const auto& c : r.formula_counts) formulas.push_back(c.str());
  return finish(json{{"users", r.users},
                     {"lattice_counts", r.lattice_counts},
                     {"formula_counts", formulas},
                     {"counts_match", r.counts_match},
                     {"labels_total", r.labels_total},
                     {"labels_matched", r.labels_matched},
                     {"merge_pairs_checked", r.merge_pairs_checked},
                     {"merge_pairs_failed", r.merge_pairs_failed},
                     {"mismatches", r.mismatches},
                     {"clean", r.clean()}});
}

std::string counts_to_json(const counting::FaceCounts& counts) {
  auto strs = [](const std::vector<counting::BigInt>& v) {
    json arr = json::array();
    for (const auto& c : v) arr.push_back(c.str());
    return arr;
  };
  return finish(json{{"users", counts.users},
                     {"total", strs(counts.total)},
                     {"dominant", strs(counts.dominant)},
                     {"front", strs(counts.front)},
                     {"back", strs(counts.back)}});
}

}  // namespace macfaces
