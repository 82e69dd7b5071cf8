#include <optmeas/runner/config.hpp>

#include <cmath>
#include <fstream>
#include <set>

#include <fmt/format.h>

namespace optmeas::runner {

namespace {

using json = io::json;

void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw config_error(fmt::format("'{}' must be an object", where));
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw config_error(fmt::format("unknown key '{}' in {}", key, where));
  }
}

double get_number(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number()) throw config_error(fmt::format("{}.{} must be a number", where, key));
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw config_error(fmt::format("{}.{} must be finite", where, key));
  return x;
}

long long get_integer(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw config_error(fmt::format("{}.{} must be an integer", where, key));
  return v.get<long long>();
}

index_t get_count(const json& j, const std::string& key, const std::string& where) {
  const long long v = get_integer(j, key, where);
  if (v <= 0) throw config_error(fmt::format("{}.{} must be positive", where, key));
  return static_cast<index_t>(v);
}

std::string get_string(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_string()) throw config_error(fmt::format("{}.{} must be a string", where, key));
  return v.get<std::string>();
}

std::filesystem::path resolve(const std::string& p, const std::filesystem::path& base) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

domain_config parse_domain(const json& j, const std::filesystem::path& base) {
  require_object(j, "domain");
  domain_config d;
  const std::string kind = get_string(j, "kind", "domain");
  if (kind == "interval") {
    reject_unknown(j, {"kind", "a", "b", "points"}, "domain");
    if (j.contains("a")) d.a = get_number(j, "a", "domain");
    if (j.contains("b")) d.b = get_number(j, "b", "domain");
    if (j.contains("points")) d.points = get_count(j, "points", "domain");
    if (!(d.a < d.b)) throw config_error("domain: interval needs a < b");
    if (d.points < 2) throw config_error("domain: interval needs at least 2 points");
  } else if (kind == "disk") {
    d.family = domain_config::kind::disk;
    reject_unknown(j, {"kind", "radial_points", "angular_points"}, "domain");
    if (j.contains("radial_points")) d.radial_points = get_count(j, "radial_points", "domain");
    if (j.contains("angular_points")) d.angular_points = get_count(j, "angular_points", "domain");
  } else if (kind == "custom") {
    d.family = domain_config::kind::custom;
    reject_unknown(j, {"kind", "csv_path"}, "domain");
    d.csv_path = resolve(get_string(j, "csv_path", "domain"), base);
  } else {
    throw config_error(fmt::format("domain: unknown kind '{}'", kind));
  }
  return d;
}

weight_spec parse_weight(const json& j, const std::filesystem::path& base) {
  require_object(j, "weight");
  weight_spec w;
  const std::string kind = get_string(j, "kind", "weight");
  if (kind == "constant") {
    reject_unknown(j, {"kind", "value"}, "weight");
    if (j.contains("value")) w.parameter = get_number(j, "value", "weight");
  } else if (kind == "gaussian") {
    w.family = weight_spec::kind::gaussian;
    reject_unknown(j, {"kind", "c"}, "weight");
    w.parameter = get_number(j, "c", "weight");
    if (w.parameter < 0.0) throw config_error("weight: gaussian needs c >= 0");
  } else if (kind == "power") {
    w.family = weight_spec::kind::power;
    reject_unknown(j, {"kind", "a"}, "weight");
    w.parameter = get_number(j, "a", "weight");
  } else if (kind == "custom") {
    w.family = weight_spec::kind::custom;
    reject_unknown(j, {"kind", "csv_path"}, "weight");
    w.csv_path = resolve(get_string(j, "csv_path", "weight"), base);
  } else {
    throw config_error(fmt::format("weight: unknown kind '{}'", kind));
  }
  return w;
}

design::solver_config parse_solver(const json& j) {
  require_object(j, "solver");
  reject_unknown(j,
                 {"tolerance", "max_iterations", "algorithm", "prune_threshold", "exchange_period",
                  "warmup_iterations"},
                 "solver");
  design::solver_config s;
  if (j.contains("tolerance")) s.tolerance = get_number(j, "tolerance", "solver");
  if (j.contains("max_iterations")) s.max_iterations = static_cast<int>(get_integer(j, "max_iterations", "solver"));
  if (j.contains("algorithm")) {
    try {
      s.method = design::algorithm_from_string(get_string(j, "algorithm", "solver"));
    } catch (const std::invalid_argument& e) {
      throw config_error(e.what());
    }
  }
  if (j.contains("prune_threshold")) s.prune_threshold = get_number(j, "prune_threshold", "solver");
  if (j.contains("exchange_period")) {
    s.exchange_period = static_cast<int>(get_integer(j, "exchange_period", "solver"));
  }
  if (j.contains("warmup_iterations")) {
    s.warmup_iterations = static_cast<int>(get_integer(j, "warmup_iterations", "solver"));
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(e.what());
  }
  return s;
}

}  // namespace

point_set domain_config::build() const {
  switch (family) {
    case kind::interval:
      return point_set::interval(a, b, points);
    case kind::disk:
      return point_set::polar_disk(radial_points, angular_points);
    case kind::custom:
      return read_point_set_csv(csv_path);
  }
  throw config_error("domain: invalid kind");
}

std::string domain_config::label() const {
  switch (family) {
    case kind::interval:
      return fmt::format("interval({},{},{})", a, b, points);
    case kind::disk:
      return fmt::format("disk({},{})", radial_points, angular_points);
    case kind::custom:
      return fmt::format("custom({})", csv_path.string());
  }
  return "unknown";
}

experiment_config parse_config(const json& doc, const std::filesystem::path& base_dir) {
  require_object(doc, "config");
  reject_unknown(doc,
                 {"domain", "weight", "degrees", "solver", "outputs", "seed", "workers", "points", "converge",
                  "check"},
                 "config");
  experiment_config c;
  c.echo = doc;
  try {
    if (!doc.contains("domain")) throw config_error("config: 'domain' is required");
    c.domain = parse_domain(doc.at("domain"), base_dir);
    if (doc.contains("weight")) c.weight = parse_weight(doc.at("weight"), base_dir);

    if (!doc.contains("degrees")) throw config_error("config: 'degrees' is required");
    const json& deg = doc.at("degrees");
    if (!deg.is_array() || deg.empty()) throw config_error("degrees must be a nonempty array");
    for (const json& v : deg) {
      if (!v.is_number_integer() || v.get<long long>() < 0 || v.get<long long>() > 1000) {
        throw config_error("degrees must be integers in [0, 1000]");
      }
      const int n = v.get<int>();
      if (!c.degrees.empty() && n <= c.degrees.back()) throw config_error("degrees must be strictly increasing");
      c.degrees.push_back(n);
    }

    if (doc.contains("solver")) c.solver = parse_solver(doc.at("solver"));
    if (doc.contains("outputs")) c.outputs = resolve(get_string(doc, "outputs", "config"), base_dir);
    if (doc.contains("seed")) {
      const long long s = get_integer(doc, "seed", "config");
      if (s < 0) throw config_error("seed must be nonnegative");
      c.seed = static_cast<std::uint64_t>(s);
    }
    c.solver.seed = c.seed;
    if (doc.contains("workers")) {
      const long long w = get_integer(doc, "workers", "config");
      if (w < 1 || w > 1024) throw config_error("workers must be in [1, 1024]");
      c.workers = static_cast<int>(w);
    }
    if (doc.contains("points")) {
      const json& p = doc.at("points");
      require_object(p, "points");
      reject_unknown(p, {"kind", "count"}, "points");
      if (p.contains("kind")) c.points.kind = get_string(p, "kind", "points");
      if (p.contains("count")) c.points.count = get_count(p, "count", "points");
    }
    if (doc.contains("converge")) {
      const json& p = doc.at("converge");
      require_object(p, "converge");
      reject_unknown(p, {"reference", "moment_cap", "radius"}, "converge");
      if (p.contains("reference")) c.converge.reference = get_string(p, "reference", "converge");
      if (p.contains("moment_cap")) {
        const long long m = get_integer(p, "moment_cap", "converge");
        if (m < 0 || m > 8) throw config_error("converge.moment_cap must be in [0, 8]");
        c.converge.moment_cap = static_cast<int>(m);
      }
      if (p.contains("radius")) c.converge.radius = get_number(p, "radius", "converge");
    }
    if (doc.contains("check")) {
      const json& p = doc.at("check");
      require_object(p, "check");
      reject_unknown(p, {"tolerance"}, "check");
      if (p.contains("tolerance")) {
        const double t = get_number(p, "tolerance", "check");
        if (t < 0.0) throw config_error("check.tolerance must be nonnegative");
        c.check.tolerance = t;
      }
    }
  } catch (const json::exception& e) {
    throw config_error(e.what());
  }
  return c;
}

experiment_config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw config_error(fmt::format("cannot read config '{}'", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw config_error(fmt::format("config '{}': {}", path.string(), e.what()));
  }
  return parse_config(doc, path.parent_path());
}

experiment_config default_config() {
  return parse_config(json{{"domain", {{"kind", "interval"}, {"a", -1.0}, {"b", 1.0}, {"points", 201}}},
                           {"weight", {{"kind", "constant"}}},
                           {"degrees", {1, 2, 4}}});
}

}  // namespace optmeas::runner
