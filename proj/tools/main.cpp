// Command-line frontend for the rate-region face toolkit.
//
// Exit codes: 0 on success, 1 for domain outcomes (degenerate channel,
// unachievable rate tuple, failed verification) and internal errors, 2 for
// usage and input errors.

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "macfaces/macfaces.hpp"

namespace {

using namespace macfaces;

std::string fmt(double v, int places = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, v);
  return buf;
}

std::vector<double> parse_rates(const std::string& text) {
  std::vector<double> rates;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      rates.push_back(std::stod(item, &used));
      while (used < item.size() &&
             std::isspace(static_cast<unsigned char>(item[used])))
        ++used;
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("--rate: cannot parse \"" + item +
                            "\" as a number");
    }
  }
  if (rates.empty()) throw ValidationError("--rate: no values given");
  return rates;
}

std::string face_line(const FaceLabel& label) {
  const DecodingPlan plan = decoding_order(label);
  std::string line = to_string(label) + "  dim=" +
                     std::to_string(face_dim(label)) +
                     "  order=" + plan.to_string();
  if (!plan.skipped.empty()) line += "  skipped=" + plan.skipped.to_string();
  return line;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  out << content;
  if (!out) throw ValidationError("failed writing output file: " + path);
}

int cmd_info(const std::string& file) {
  const ChannelSpec spec = load_channel_json(file);
  const HRep hrep = build_hrep(spec);
  std::cout << "users: " << spec.users << "\n";
  std::cout << "input sizes: [";
  for (std::size_t i = 0; i < spec.input_sizes.size(); ++i)
    std::cout << (i ? ", " : "") << spec.input_sizes[i];
  std::cout << "]\n";
  std::cout << "output size: " << spec.output_size << "\n";
  std::cout << "sum-rate bounds I(X_S;Y|X_rest):\n";
  const UserSet all = UserSet::full(spec.users);
  for (Mask s = 1; s <= all.bits(); ++s) {
    const UserSet set(s);
    std::cout << "  " << set.to_string() << ": " << fmt(hrep.front_bound(set))
              << "\n";
  }
  return 0;
}

int cmd_check(const std::string& file, double margin, bool as_json) {
  const ChannelSpec spec = load_channel_json(file);
  const DegeneracyReport report = check_degeneracy(spec, margin);
  if (as_json) {
    std::cout << degeneracy_to_json(report);
  } else if (report.nondegenerate()) {
    std::cout << "nondegenerate (margin " << margin << ")\n";
  } else {
    std::cout << "degenerate (margin " << margin << "), "
              << report.violations.size() << " violation(s):\n";
    for (const DegeneracyViolation& v : report.violations)
      std::cout << "  " << v.describe() << "\n";
  }
  return report.nondegenerate() ? 0 : 1;
}

int cmd_faces(const std::string& file, int users, std::optional<int> dim,
              bool as_json) {
  if (file.empty() == (users == 0))
    throw ValidationError("faces: give a channel file or --users, not both");
  if (!file.empty()) {
    const ChannelSpec spec = load_channel_json(file);
    require_nondegenerate(MICache(spec));
    users = spec.users;
  }
  const std::vector<FaceLabel> faces = enumerate_faces(users, dim);
  if (as_json) {
    std::cout << faces_to_json(users, faces);
  } else {
    for (const FaceLabel& f : faces) std::cout << face_line(f) << "\n";
  }
  return 0;
}

int cmd_count(int users, int max_users, int dim, const std::string& csv_path,
              bool log10_col, bool as_json) {
  if ((users == 0) == (max_users == 0))
    throw ValidationError("count: give exactly one of --users or --table");
  if (dim >= 0 && users == 0)
    throw ValidationError("count: --dim needs --users");
  if (users != 0) {
    if (dim >= 0) {
      if (as_json) throw ValidationError("count: --dim is text-only");
      std::cout << counting::count_total(users, dim).str() << "\n";
      return 0;
    }
    const counting::FaceCounts fc = counting::face_counts(users);
    if (as_json) {
      std::cout << counts_to_json(fc);
    } else {
      for (int d = 0; d <= users; ++d)
        std::cout << (d ? " " : "") << "D=" << d << ":"
                  << fc.total[static_cast<std::size_t>(d)].str();
      std::cout << "\n";
    }
    return 0;
  }
  const auto table = counting::count_table(max_users);
  std::ostringstream csv;
  counting::write_csv(csv, table, log10_col);
  if (csv_path.empty()) {
    std::cout << csv.str();
  } else {
    write_file(csv_path, csv.str());
    std::cout << "wrote " << csv_path << ": M=1.." << max_users << "\n";
  }
  return 0;
}

int cmd_locate(const std::string& file, const std::string& rate_text,
               double tol, bool as_json) {
  const ChannelSpec spec = load_channel_json(file);
  const std::vector<double> rates = parse_rates(rate_text);
  if (rates.size() != static_cast<std::size_t>(spec.users))
    throw ValidationError("--rate: expected " + std::to_string(spec.users) +
                          " comma-separated values, got " +
                          std::to_string(rates.size()));
  const HRep hrep = build_hrep(spec);
  const LocateResult result = locate_minimal_face(hrep, rates, tol);
  if (as_json) std::cout << locate_to_json(result);
  if (const auto* label = std::get_if<FaceLabel>(&result)) {
    if (!as_json) {
      const DecodingPlan plan = decoding_order(*label);
      std::cout << to_string(*label) << "\n";
      std::cout << "dim=" << face_dim(*label) << "\n";
      std::cout << "order=" << plan.to_string() << "\n";
      if (!plan.skipped.empty())
        std::cout << "skipped=" << plan.skipped.to_string() << "\n";
    }
    return 0;
  }
  if (!as_json) std::cout << std::get<NotAchievable>(result).describe() << "\n";
  return 1;
}

int cmd_vertices(const std::string& file, bool as_json) {
  const ChannelSpec spec = load_channel_json(file);
  const HRep hrep = build_hrep(spec);
  const oracle::VertexSet vs = oracle::enumerate_vertices(hrep);
  if (as_json) {
    std::cout << vertices_to_json(vs);
    return 0;
  }
  for (const auto& v : vs.vertices) {
    std::cout << "(";
    for (std::size_t i = 0; i < v.size(); ++i)
      std::cout << (i ? ", " : "") << fmt(v[i], 9);
    std::cout << ")\n";
  }
  return 0;
}

int cmd_verify(const std::string& file, bool as_json) {
  const ChannelSpec spec = load_channel_json(file);
  const oracle::CrossValidateReport report = oracle::cross_validate(spec);
  if (as_json) {
    std::cout << cross_validate_to_json(report);
    return report.clean() ? 0 : 1;
  }
  auto list = [](const auto& counts) {
    std::string s = "[";
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (i) s += ",";
      std::ostringstream os;
      os << counts[i];
      s += os.str();
    }
    return s + "]";
  };
  std::cout << "per-dim faces: lattice " << list(report.lattice_counts)
            << " vs formulas " << list(report.formula_counts)
            << (report.counts_match ? " (match)" : " (MISMATCH)") << "\n";
  std::cout << "labels: " << report.labels_matched << "/"
            << report.labels_total << " matched to geometric faces\n";
  std::cout << "merge law: " << report.merge_pairs_checked << " pairs, "
            << report.merge_pairs_failed << " failures\n";
  for (const std::string& m : report.mismatches)
    std::cout << "  " << m << "\n";
  std::cout << (report.clean() ? "PASS" : "FAIL") << "\n";
  return report.clean() ? 0 : 1;
}

// DOT output is for human inspection; past 6 users the drawing is useless
// and the quadratic cover computation heavy, so cap it there.
constexpr int kMaxDotUsers = 6;

int cmd_lattice(const std::string& file, int users, const std::string& out) {
  if (file.empty() == (users == 0))
    throw ValidationError("lattice: give a channel file or --users, not both");
  if (!file.empty()) {
    const ChannelSpec spec = load_channel_json(file);
    require_nondegenerate(MICache(spec));
    users = spec.users;
  }
  if (users > kMaxDotUsers)
    throw CapacityError("lattice: DOT output capped at " +
                        std::to_string(kMaxDotUsers) + " users");
  const std::vector<FaceLabel> faces = enumerate_faces(users);
  const std::string dot = lattice_to_dot(faces);
  std::size_t edges = 0;
  for (std::size_t pos = dot.find(" -> "); pos != std::string::npos;
       pos = dot.find(" -> ", pos + 1))
    ++edges;
  write_file(out, dot);
  std::cout << "wrote " << out << ": " << faces.size() << " nodes, " << edges
            << " edges\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Face structure of multiple-access channel rate regions"};
  app.require_subcommand(1);
  int code = 0;

  // info
  std::string info_file;
  auto* info = app.add_subcommand("info", "Channel summary and rate bounds");
  info->add_option("channel", info_file, "Channel JSON file")->required();
  info->callback([&] { code = cmd_info(info_file); });

  // check
  std::string check_file;
  double check_margin = kDegeneracyMargin;
  bool check_json = false;
  auto* check =
      app.add_subcommand("check", "Test the channel for degeneracies");
  check->add_option("channel", check_file, "Channel JSON file")->required();
  check->add_option("--margin", check_margin,
                    "Strictness margin for the inequalities");
  check->add_flag("--json", check_json, "Machine-readable report");
  check->callback([&] { code = cmd_check(check_file, check_margin, check_json); });

  // faces
  std::string faces_file;
  int faces_users = 0;
  int faces_dim = -1;
  bool faces_json = false;
  auto* faces = app.add_subcommand("faces", "Enumerate face labels");
  faces->add_option("channel", faces_file, "Channel JSON file");
  faces->add_option("--users", faces_users, "User count (no channel needed)");
  faces->add_option("--dim", faces_dim, "Only faces of this dimension");
  faces->add_flag("--json", faces_json, "Machine-readable list");
  faces->callback([&] {
    code = cmd_faces(faces_file, faces_users,
                     faces_dim >= 0 ? std::optional<int>(faces_dim)
                                    : std::nullopt,
                     faces_json);
  });

  // count
  int count_users = 0, count_max = 0, count_dim = -1;
  std::string count_csv;
  bool count_log10 = false, count_json = false;
  auto* count = app.add_subcommand("count", "Closed-form face counts");
  count->add_option("--users", count_users, "Counts for one user count");
  count->add_option("--dim", count_dim, "Only the count of this dimension");
  count->add_option("--table", count_max, "Table for M=1..max");
  count->add_option("--csv", count_csv, "Write the table as CSV here");
  count->add_flag("--log10", count_log10, "Add a log10 magnitude column");
  count->add_flag("--json", count_json, "Machine-readable counts");
  count->callback([&] {
    code = cmd_count(count_users, count_max, count_dim, count_csv, count_log10,
                     count_json);
  });

  // locate
  std::string locate_file, locate_rates;
  double locate_tol = kRateTol;
  bool locate_json = false;
  auto* locate =
      app.add_subcommand("locate", "Minimal face containing a rate tuple");
  locate->add_option("channel", locate_file, "Channel JSON file")->required();
  locate->add_option("--rate", locate_rates, "Comma-separated rates")
      ->required();
  locate->add_option("--tol", locate_tol, "Membership tolerance");
  locate->add_flag("--json", locate_json, "Machine-readable result");
  locate->callback([&] {
    code = cmd_locate(locate_file, locate_rates, locate_tol, locate_json);
  });

  // vertices
  std::string vertices_file;
  bool vertices_json = false;
  auto* vertices =
      app.add_subcommand("vertices", "Brute-force vertex enumeration");
  vertices->add_option("channel", vertices_file, "Channel JSON file")
      ->required();
  vertices->add_flag("--json", vertices_json, "Machine-readable list");
  vertices->callback([&] { code = cmd_vertices(vertices_file, vertices_json); });

  // verify
  std::string verify_file;
  bool verify_json = false;
  auto* verify = app.add_subcommand(
      "verify", "Cross-check labels and counts against brute force");
  verify->add_option("channel", verify_file, "Channel JSON file")->required();
  verify->add_flag("--json", verify_json, "Machine-readable report");
  verify->callback([&] { code = cmd_verify(verify_file, verify_json); });

  // lattice
  std::string lattice_file, lattice_out;
  int lattice_users = 0;
  auto* lattice =
      app.add_subcommand("lattice", "Write the face lattice as Graphviz DOT");
  lattice->add_option("channel", lattice_file, "Channel JSON file");
  lattice->add_option("--users", lattice_users,
                      "User count (no channel needed)");
  lattice->add_option("--dot", lattice_out, "Output DOT file")->required();
  lattice->callback(
      [&] { code = cmd_lattice(lattice_file, lattice_users, lattice_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int cli_code = app.exit(e);
    return cli_code == 0 ? 0 : 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateRegionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
