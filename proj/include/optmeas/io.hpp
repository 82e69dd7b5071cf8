#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include <optmeas/asymptotics.hpp>
#include <optmeas/design_solver.hpp>
#include <optmeas/extremal_points.hpp>
#include <optmeas/poly_basis.hpp>

namespace optmeas::io {

using json = nlohmann::ordered_json;

// Writes to a sibling temporary file and renames it into place.
void write_atomic(const std::filesystem::path& path, const std::string& content);
void write_json_atomic(const std::filesystem::path& path, const json& value);

// 17 significant digits; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);
// Non-finite values become null.
json number_or_null(double v);

json design_to_json(const design::design_result& result, const graded_basis& basis);
std::string trace_to_csv(const std::vector<design::trace_entry>& trace);

// Point coordinates go to CSV; the sidecar holds the family metadata.
json family_to_json(const extremal::point_family& family);

std::string diameter_to_csv(const std::vector<asymptotics::diameter_estimate>& rows);
json diameter_to_json(const std::vector<asymptotics::diameter_estimate>& rows);
// Whitespace-separated columns: degree, delta from points, delta from Gram.
std::string diameter_plot_data(const std::vector<asymptotics::diameter_estimate>& rows);

std::string convergence_to_csv(const asymptotics::convergence_report& report);
json convergence_to_json(const asymptotics::convergence_report& report);
// degree, max moment error, outside mass, |first moment|
std::string convergence_plot_data(const asymptotics::convergence_report& report);

}  // namespace optmeas::io
