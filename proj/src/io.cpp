#include "carasolve/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "carasolve/errors.hpp"

namespace carasolve::io {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_series_csv(std::ostream& out, const std::vector<std::string>& names,
                      const std::vector<const GridFunction*>& series) {
  if (names.size() != series.size() || series.empty()) {
    throw ShapeError("write_series_csv: one name per series required");
  }
  const Partition& p = series.front()->partition();
  for (const GridFunction* s : series) {
    if (s->partition() != p) throw ShapeError("write_series_csv: mismatched partitions");
  }
  out << "x";
  for (const auto& name : names) out << "," << name;
  out << "\n";
  for (std::size_t j = 0; j < p.node_count(); ++j) {
    out << format_double(p.nodes()[j]);
    for (const GridFunction* s : series) out << "," << format_double(s->values()[j]);
    out << "\n";
  }
}

void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows) {
  out << "x,y,n,deviation\n";
  for (const auto& row : rows) {
    out << format_double(row.x) << "," << format_double(row.y) << "," << row.n << ","
        << format_double(row.deviation) << "\n";
  }
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

GridFunction read_grid_function_csv(std::istream& in, const std::string& column) {
  std::string line;
  if (!std::getline(in, line)) throw DomainError("csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "x") {
    throw DomainError("csv: expected header starting with 'x'");
  }
  std::size_t col = 1;
  if (!column.empty()) {
    bool found = false;
    for (std::size_t i = 1; i < header.size(); ++i) {
      if (header[i] == column) {
        col = i;
        found = true;
        break;
      }
    }
    if (!found) throw DomainError("csv: no column named '" + column + "'");
  }

  std::vector<double> xs;
  std::vector<double> vs;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() <= col) throw DomainError("csv: short row");
    try {
      xs.push_back(std::stod(fields[0]));
      vs.push_back(std::stod(fields[col]));
    } catch (const std::exception&) {
      throw DomainError("csv: non-numeric field");
    }
  }
  if (xs.size() < 2) throw DomainError("csv: needs at least two rows");
  return GridFunction(Partition::from_nodes(std::move(xs)), std::move(vs));
}

nlohmann::json to_json(const SubsolutionReport& report) {
  return {
      {"member", report.is_member},
      {"worst_pair", {report.worst_pair[0], report.worst_pair[1]}},
      {"worst_margin", report.worst_margin},
      {"cphi_ok", report.cphi_ok},
      {"cphi_margin", report.cphi_margin},
      {"initial_gap", report.initial_gap},
      {"tol", report.tol},
      {"quad_err", report.quad_err},
  };
}

nlohmann::json to_json(const ResidualReport& report) {
  return {
      {"sup_residual", report.sup_residual},
      {"argmax_x", report.argmax_x},
      {"quad_err", report.quad_err},
  };
}

nlohmann::json to_json(const SolveResult& result) {
  nlohmann::json j{
      {"iterations", result.iterations},
      {"fixed_point_residual", result.fixed_point_residual},
      {"quad_err", result.quad_err},
      {"converged", result.converged},
      {"certified", result.certified},
      {"subsolution", to_json(result.subsolution_report)},
      {"notes", result.notes},
      {"z0_at_b", result.z0.values().back()},
      {"grid_cells", result.z0.partition().cell_count()},
  };
  if (result.gap) j["gap"] = *result.gap;
  if (result.minimal) j["minimal_at_b"] = result.minimal->values().back();
  return j;
}

nlohmann::json to_json(const NonexistenceReport& report) {
  nlohmann::json candidates = nlohmann::json::array();
  for (const auto& c : report.residual_by_candidate) {
    candidates.push_back({{"label", c.label},
                          {"sup_residual", c.sup_residual},
                          {"argmax_x", c.argmax_x}});
  }
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : report.band_events) {
    events.push_back({{"n0", e.n0},
                      {"a", e.a},
                      {"b", e.b},
                      {"y_a", e.y_a},
                      {"y_b", e.y_b},
                      {"integral", e.integral},
                      {"integral_err", e.integral_err},
                      {"residual_lb", e.residual_lb},
                      {"candidate", e.candidate}});
  }
  nlohmann::json components = nlohmann::json::array();
  for (const auto& c : report.nonzero_components) components.push_back({c[0], c[1]});
  return {
      {"rhs", report.rhs_name},
      {"x0", report.x0},
      {"y0", report.y0},
      {"step_sizes", report.step_sizes},
      {"euler_limit_deviation", report.euler_limit_deviation},
      {"residual_by_candidate", candidates},
      {"band_events", events},
      {"nonzero_components", components},
      {"chatter_confined", report.chatter_confined},
      {"all_positive_somewhere", report.all_positive_somewhere},
      {"min_candidate_residual", report.min_candidate_residual},
      {"verdict", report.verdict},
  };
}

nlohmann::json to_json(const PositiveReport& report) {
  nlohmann::json j{
      {"name", report.name},
      {"max_dev_maximal", report.max_dev_maximal},
      {"fixed_point_residual", report.fixed_point_residual},
      {"quad_err", report.quad_err},
      {"iterations", report.iterations},
      {"certified", report.certified},
  };
  if (report.max_dev_minimal) j["max_dev_minimal"] = *report.max_dev_minimal;
  if (report.gap_at_b) j["gap_at_b"] = *report.gap_at_b;
  return j;
}

nlohmann::json to_json(const FatouReport& report) {
  return {
      {"margin", report.margin},
      {"last_deviation", report.last_deviation},
      {"int_limit", report.int_limit},
      {"int_limsup_proxy", report.int_limsup_proxy},
      {"quad_err", report.quad_err},
      {"tol", report.tol},
  };
}

namespace {

void flatten(const nlohmann::json& j, const std::string& prefix, std::ostringstream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& item : j) {
      flatten(item, prefix + "[" + std::to_string(i++) + "]", out);
    }
  } else if (j.is_number_float()) {
    out << prefix << "," << format_double(j.get<double>()) << "\n";
  } else {
    out << prefix << "," << j.dump() << "\n";
  }
}

}  // namespace

std::string json_to_flat_csv(const nlohmann::json& j) {
  std::ostringstream out;
  out << "key,value\n";
  flatten(j, "", out);
  return out.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot open for writing: " + path);
  out << contents;
}

}  // namespace carasolve::io
