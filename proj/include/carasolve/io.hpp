#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "carasolve/grid_function.hpp"
#include "carasolve/scenarios.hpp"
#include "carasolve/solver.hpp"
#include "carasolve/step_grid.hpp"
#include "carasolve/subsolution.hpp"

namespace carasolve::io {

/// 17 significant digits: round-trip safe for IEEE doubles.
std::string format_double(double v);

/// CSV with a header row: `x` first, one column per named series. All series
/// must share the partition.
void write_series_csv(std::ostream& out, const std::vector<std::string>& names,
                      const std::vector<const GridFunction*>& series);

void write_probe_csv(std::ostream& out, const std::vector<ProbeRow>& rows);

/// Reads a series CSV back into a grid function. Uses the column named
/// `column`, or the first non-x column when empty. Throws DomainError on
/// malformed input.
GridFunction read_grid_function_csv(std::istream& in, const std::string& column = "");

nlohmann::json to_json(const SubsolutionReport& report);
nlohmann::json to_json(const ResidualReport& report);
nlohmann::json to_json(const SolveResult& result);
nlohmann::json to_json(const NonexistenceReport& report);
nlohmann::json to_json(const PositiveReport& report);
nlohmann::json to_json(const FatouReport& report);

/// Flat key,value CSV rendering of a JSON report (nested keys dotted).
std::string json_to_flat_csv(const nlohmann::json& j);

void write_text_file(const std::string& path, const std::string& contents);

}  // namespace carasolve::io
