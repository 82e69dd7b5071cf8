#include <optmeas/point_set.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace optmeas {

point_set::point_set(cmatrix coords, std::string label)
    : coords_(std::move(coords)), label_(std::move(label)) {
  for (Eigen::Index i = 0; i < coords_.rows(); ++i) {
    for (Eigen::Index k = 0; k < coords_.cols(); ++k) {
      const complex z = coords_(i, k);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument(fmt::format("point {} has a non-finite coordinate", i));
      }
    }
  }
}

point_set point_set::subset(const std::vector<index_t>& indices, std::string label) const {
  cmatrix sub(static_cast<Eigen::Index>(indices.size()), coords_.cols());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] >= size()) throw std::out_of_range("point_set::subset index out of range");
    sub.row(static_cast<Eigen::Index>(j)) = coords_.row(static_cast<Eigen::Index>(indices[j]));
  }
  return point_set(std::move(sub), std::move(label));
}

point_set point_set::interval(double a, double b, index_t count) {
  if (count == 0) throw std::invalid_argument("interval grid needs at least one point");
  if (!(a < b) && count > 1) throw std::invalid_argument("interval grid needs a < b");
  cmatrix c(static_cast<Eigen::Index>(count), 1);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double last = static_cast<double>(count - 1);
  for (index_t i = 0; i < count; ++i) {
    // Signed integer offsets keep grids on [-r, r] exactly symmetric.
    const double x = count == 1 ? a : mid + half * ((2.0 * static_cast<double>(i) - last) / last);
    c(static_cast<Eigen::Index>(i), 0) = complex(x, 0.0);
  }
  return point_set(std::move(c), fmt::format("interval({},{},{})", a, b, count));
}

point_set point_set::polar_disk(index_t radial_points, index_t angular_points) {
  if (radial_points == 0 || angular_points == 0) {
    throw std::invalid_argument("polar grid needs positive radial and angular counts");
  }
  cmatrix c(static_cast<Eigen::Index>(radial_points * angular_points), 1);
  Eigen::Index row = 0;
  for (index_t k = 1; k <= radial_points; ++k) {
    const double r = static_cast<double>(k) / static_cast<double>(radial_points);
    for (index_t j = 0; j < angular_points; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(angular_points);
      c(row++, 0) = std::polar(r, theta);
    }
  }
  return point_set(std::move(c), fmt::format("disk({},{})", radial_points, angular_points));
}

point_set point_set::from_real(const std::vector<double>& xs, std::string label) {
  cmatrix c(static_cast<Eigen::Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) c(static_cast<Eigen::Index>(i), 0) = xs[i];
  return point_set(std::move(c), std::move(label));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    out.push_back(field);
  }
  return out;
}

}  // namespace

point_set point_set_from_csv(const std::string& text, std::string label) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("point CSV: missing header row");
  const auto header = split_csv_line(line);
  if (header.empty() || header.size() % 2 != 0) {
    throw std::runtime_error("point CSV: header must be re_1,im_1,...,re_d,im_d");
  }
  const int d = static_cast<int>(header.size() / 2);
  for (int k = 0; k < d; ++k) {
    if (header[2 * k] != fmt::format("re_{}", k + 1) || header[2 * k + 1] != fmt::format("im_{}", k + 1)) {
      throw std::runtime_error(fmt::format("point CSV: unexpected header column '{}'", header[2 * k]));
    }
  }
  std::vector<std::vector<complex>> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error(fmt::format("point CSV line {}: expected {} fields", lineno, header.size()));
    }
    std::vector<complex> p(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      p[static_cast<std::size_t>(k)] = complex(std::stod(fields[2 * k]), std::stod(fields[2 * k + 1]));
    }
    rows.push_back(std::move(p));
  }
  cmatrix c(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int k = 0; k < d; ++k) c(static_cast<Eigen::Index>(i), k) = rows[i][static_cast<std::size_t>(k)];
  }
  return point_set(std::move(c), std::move(label));
}

std::string point_set_to_csv(const point_set& points) {
  std::string out;
  for (int k = 0; k < points.dimension(); ++k) {
    out += fmt::format("{}re_{},im_{}", k == 0 ? "" : ",", k + 1, k + 1);
  }
  out += '\n';
  for (index_t i = 0; i < points.size(); ++i) {
    for (int k = 0; k < points.dimension(); ++k) {
      const complex z = points.coord(i, k);
      out += fmt::format("{}{:.17g},{:.17g}", k == 0 ? "" : ",", z.real(), z.imag());
    }
    out += '\n';
  }
  return out;
}

point_set read_point_set_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open point CSV '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  return point_set_from_csv(buf.str(), path.filename().string());
}

void write_point_set_csv(const point_set& points, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  out << point_set_to_csv(points);
}

}  // namespace optmeas
