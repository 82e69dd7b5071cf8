#include <optmeas/io.hpp>

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <system_error>

#include <fmt/format.h>
#include <unistd.h>

namespace optmeas::io {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += fmt::format(".tmp{}", static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", tmp.string()));
    out << content;
    out.flush();
    if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error(fmt::format("cannot move output into '{}': {}", path.string(), ec.message()));
  }
}

void write_json_atomic(const std::filesystem::path& path, const json& value) {
  write_atomic(path, value.dump(2) + "\n");
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json design_to_json(const design::design_result& result, const graded_basis& basis) {
  const auto support = result.measure.support();
  json weights = json::array();
  json points = json::array();
  for (index_t i : support) {
    weights.push_back(result.measure.weight(i));
    json p = json::array();
    for (int k = 0; k < result.measure.candidates().dimension(); ++k) {
      const complex z = result.measure.candidates().coord(i, k);
      p.push_back({z.real(), z.imag()});
    }
    points.push_back(std::move(p));
  }
  json out;
  out["dimension"] = basis.dimension();
  out["degree"] = basis.degree();
  out["basis_size"] = basis.size();
  out["candidates"] = result.measure.size();
  out["support_indices"] = support;
  out["weights"] = std::move(weights);
  out["support_points"] = std::move(points);
  out["kw_gap"] = number_or_null(result.kw_gap);
  out["support_deviation"] = number_or_null(result.support_deviation);
  out["log_det"] = number_or_null(result.log_det);
  out["iterations"] = result.iterations;
  out["converged"] = result.converged;
  return out;
}

std::string trace_to_csv(const std::vector<design::trace_entry>& trace) {
  std::string s = "iteration,log_det,kw_gap\n";
  for (const auto& e : trace) {
    s += fmt::format("{},{},{}\n", e.iteration, format_double(e.log_det), format_double(e.kw_gap));
  }
  return s;
}

json family_to_json(const extremal::point_family& family) {
  json out;
  out["kind"] = extremal::to_string(family.kind);
  out["n"] = family.degree;
  out["count"] = family.points.size();
  out["log_weighted_vdm"] = number_or_null(family.log_weighted_vdm);
  out["candidate_indices"] = family.candidate_indices;
  if (!family.increments.empty()) {
    json inc = json::array();
    for (double v : family.increments) inc.push_back(number_or_null(v));
    out["increments"] = std::move(inc);
  }
  return out;
}

std::string diameter_to_csv(const std::vector<asymptotics::diameter_estimate>& rows) {
  std::string s =
      "degree,delta_from_points,delta_from_gram,log_det,log_sandwich_lo,log_sandwich_hi,points_route,"
      "upper_checked,lower_ok,upper_ok\n";
  for (const auto& r : rows) {
    s += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", r.degree, format_double(r.delta_from_points),
                     format_double(r.delta_from_gram), format_double(r.log_det), format_double(r.log_sandwich_lo),
                     format_double(r.log_sandwich_hi), r.points_route, r.upper_checked ? 1 : 0, r.lower_ok ? 1 : 0,
                     r.upper_ok ? 1 : 0);
  }
  return s;
}

json diameter_to_json(const std::vector<asymptotics::diameter_estimate>& rows) {
  json arr = json::array();
  for (const auto& r : rows) {
    json o;
    o["degree"] = r.degree;
    o["delta_from_points"] = number_or_null(r.delta_from_points);
    o["delta_from_gram"] = number_or_null(r.delta_from_gram);
    o["log_det"] = number_or_null(r.log_det);
    o["log_sandwich_lo"] = number_or_null(r.log_sandwich_lo);
    o["log_sandwich_hi"] = number_or_null(r.log_sandwich_hi);
    o["points_route"] = r.points_route;
    o["upper_checked"] = r.upper_checked;
    o["lower_ok"] = r.lower_ok;
    o["upper_ok"] = r.upper_ok;
    arr.push_back(std::move(o));
  }
  return arr;
}

std::string diameter_plot_data(const std::vector<asymptotics::diameter_estimate>& rows) {
  std::string s = "# degree delta_from_points delta_from_gram\n";
  for (const auto& r : rows) {
    s += fmt::format("{} {} {}\n", r.degree, format_double(r.delta_from_points), format_double(r.delta_from_gram));
  }
  return s;
}

namespace {

std::string moment_label(const std::pair<int, int>& ab) { return fmt::format("err_m{}_{}", ab.first, ab.second); }

}  // namespace

std::string convergence_to_csv(const asymptotics::convergence_report& report) {
  std::string s = "degree";
  for (const auto& ab : report.moment_indices) s += "," + moment_label(ab);
  s += ",mass_outside_region,first_moment_modulus\n";
  for (std::size_t r = 0; r < report.degrees.size(); ++r) {
    s += fmt::format("{}", report.degrees[r]);
    for (std::size_t c = 0; c < report.moment_indices.size(); ++c) {
      s += "," + format_double(report.moment_errors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
    }
    s += fmt::format(",{},{}\n", format_double(report.mass_outside_region[r]),
                     format_double(report.first_moment_modulus[r]));
  }
  return s;
}

json convergence_to_json(const asymptotics::convergence_report& report) {
  json out;
  out["reference"] = report.reference_label;
  out["localization_radius"] = report.localization_radius;
  out["degrees"] = report.degrees;
  json idx = json::array();
  for (const auto& [a, b] : report.moment_indices) idx.push_back({a, b});
  out["moment_indices"] = std::move(idx);
  json errs = json::array();
  for (Eigen::Index r = 0; r < report.moment_errors.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < report.moment_errors.cols(); ++c) row.push_back(report.moment_errors(r, c));
    errs.push_back(std::move(row));
  }
  out["moment_errors"] = std::move(errs);
  out["mass_outside_region"] = report.mass_outside_region;
  out["first_moment_modulus"] = report.first_moment_modulus;
  return out;
}

std::string convergence_plot_data(const asymptotics::convergence_report& report) {
  std::string s = "# degree max_moment_error mass_outside_region first_moment_modulus\n";
  for (std::size_t r = 0; r < report.degrees.size(); ++r) {
    const double worst =
        report.moment_errors.cols() > 0 ? report.moment_errors.row(static_cast<Eigen::Index>(r)).maxCoeff() : 0.0;
    s += fmt::format("{} {} {} {}\n", report.degrees[r], format_double(worst),
                     format_double(report.mass_outside_region[r]), format_double(report.first_moment_modulus[r]));
  }
  return s;
}

}  // namespace optmeas::io
