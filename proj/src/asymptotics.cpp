#include <optmeas/asymptotics.hpp>

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace optmeas::asymptotics {

namespace {

double checked_degree_sum(const graded_basis& basis) {
  if (basis.degree_sum() == 0) {
    throw std::invalid_argument("transfinite diameter estimates are undefined for n = 0 (m_n = 0)");
  }
  return static_cast<double>(basis.degree_sum());
}

}  // namespace

double delta_n_from_points(const extremal::point_family& family, const graded_basis& basis) {
  const double m = checked_degree_sum(basis);
  if (family.points.size() != basis.size()) {
    throw std::invalid_argument("delta_n_from_points: family must have N points");
  }
  if (family.log_weighted_vdm == -infinity) return 0.0;
  return std::exp(family.log_weighted_vdm / m);
}

double delta_n_from_gram(const design::design_result& result, const graded_basis& basis) {
  const double m = checked_degree_sum(basis);
  if (result.log_det == -infinity) return 0.0;
  return std::exp(result.log_det / (2.0 * m));
}

sandwich_bounds sandwich(double log_weighted_vdm, const graded_basis& basis) {
  const double n_dim = static_cast<double>(basis.size());
  return {2.0 * log_weighted_vdm - n_dim * std::log(n_dim), 2.0 * log_weighted_vdm - std::lgamma(n_dim + 1.0)};
}

diameter_estimate estimate_diameter(const design::design_result& result, const extremal::point_family& family,
                                    const graded_basis& basis, double upper_slack, double lower_slack) {
  diameter_estimate e;
  e.degree = basis.degree();
  e.delta_from_points = delta_n_from_points(family, basis);
  e.delta_from_gram = delta_n_from_gram(result, basis);
  e.log_det = result.log_det;
  const sandwich_bounds sb = sandwich(family.log_weighted_vdm, basis);
  e.log_sandwich_lo = sb.log_lo;
  e.log_sandwich_hi = sb.log_hi;
  e.points_route = extremal::to_string(family.kind);
  // Only a true maximizer bounds det G from above.
  e.upper_checked = family.kind == extremal::family_kind::fekete_bruteforce;
  e.lower_ok = e.log_det >= e.log_sandwich_lo - lower_slack;
  e.upper_ok = !e.upper_checked || e.log_det <= e.log_sandwich_hi + std::log1p(upper_slack);
  return e;
}

perturbation_curve make_perturbation_curve(const discrete_measure& measure, const admissible_weight& weight,
                                           std::vector<double> u_values, const graded_basis& basis,
                                           std::vector<double> t_grid) {
  const double two_m = 2.0 * checked_degree_sum(basis);
  if (u_values.size() != measure.size() || weight.size() != measure.size()) {
    throw std::invalid_argument("perturbation_curve: u and weight must align with the candidate set");
  }
  const cmatrix v = basis.vandermonde(measure.candidates());
  perturbation_curve c{std::move(t_grid), {}, std::move(u_values), measure, basis.degree()};
  c.f_values.reserve(c.t_grid.size());
  for (double t : c.t_grid) {
    const admissible_weight wt = weight.tilted(c.u_values, t);
    const gram_factorization f = gram_from_evaluations(v, measure.weights(), wt.phi(), basis.degree());
    c.f_values.push_back(f.singular() ? std::nan("") : -f.log_det / two_m);
  }
  return c;
}

perturbation_curve make_perturbation_curve(const design::design_result& result, const admissible_weight& weight,
                                           std::vector<double> u_values, const graded_basis& basis,
                                           std::vector<double> t_grid) {
  return make_perturbation_curve(result.measure, weight, std::move(u_values), basis, std::move(t_grid));
}

derivative_report derivative_check(const perturbation_curve& curve, const graded_basis& basis) {
  const auto& t = curve.t_grid;
  std::size_t zero = t.size();
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0.0) zero = i;
  }
  if (zero == t.size() || zero == 0 || zero + 1 >= t.size()) {
    throw std::invalid_argument("derivative_check: curve needs t = 0 with neighbours on both sides");
  }
  const double lo = t[zero - 1];
  const double hi = t[zero + 1];
  if (!(lo < 0.0 && hi > 0.0) || std::abs(lo + hi) > 1e-12 * hi) {
    throw std::invalid_argument("derivative_check: neighbours of t = 0 must be symmetric (-h, +h)");
  }
  const double f_lo = curve.f_values[zero - 1];
  const double f_hi = curve.f_values[zero + 1];
  if (!std::isfinite(f_lo) || !std::isfinite(f_hi)) {
    throw std::invalid_argument("derivative_check: stencil values are not finite");
  }
  derivative_report r;
  r.fd_slope = (f_hi - f_lo) / (hi - lo);
  const double d = basis.dimension();
  r.formula_slope = (d + 1.0) / d * curve.measure.integrate(curve.u_values);
  r.discrepancy = std::abs(r.fd_slope - r.formula_slope);
  return r;
}

concavity_report concavity_check(const perturbation_curve& curve) {
  const auto& t = curve.t_grid;
  const auto& f = curve.f_values;
  std::size_t finite = 0;
  for (double v : f) finite += std::isfinite(v) ? 1 : 0;
  if (t.size() < 3 || finite < 3) throw std::invalid_argument("concavity_check: need >= 3 finite samples");
  const double h = t[1] - t[0];
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (std::abs((t[i + 1] - t[i]) - h) > 1e-9 * std::abs(h)) {
      throw std::invalid_argument("concavity_check: t grid must be equally spaced");
    }
  }
  concavity_report r;
  r.max_second_difference = -infinity;
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (!std::isfinite(f[i - 1]) || !std::isfinite(f[i]) || !std::isfinite(f[i + 1])) continue;
    r.max_second_difference = std::max(r.max_second_difference, f[i - 1] - 2.0 * f[i] + f[i + 1]);
  }
  if (r.max_second_difference == -infinity) {
    throw std::invalid_argument("concavity_check: no interior point with finite neighbours");
  }
  return r;
}

reference_kind reference_from_string(const std::string& name) {
  if (name == "arcsine_interval" || name == "arcsine") return reference_kind::arcsine_interval;
  if (name == "uniform_circle" || name == "circle") return reference_kind::uniform_circle;
  throw std::invalid_argument(fmt::format("unknown reference measure '{}'", name));
}

std::string to_string(reference_kind k) {
  return k == reference_kind::arcsine_interval ? "arcsine_interval" : "uniform_circle";
}

reference_measure reference_equilibrium(reference_kind kind, int max_order) {
  if (max_order < 0) throw std::invalid_argument("reference_equilibrium: negative moment order");
  reference_measure r;
  r.kind = kind;
  r.max_order = max_order;
  r.moments = cmatrix::Zero(max_order + 1, max_order + 1);
  for (int a = 0; a <= max_order; ++a) {
    for (int b = 0; b <= max_order; ++b) {
      if (kind == reference_kind::uniform_circle) {
        r.moments(a, b) = a == b ? 1.0 : 0.0;
        continue;
      }
      // On [-1, 1], z = conj(z) = x; even moments binom(2m, m) / 4^m.
      const int s = a + b;
      if (s % 2 != 0) continue;
      double v = 1.0;
      for (int j = 1; j <= s / 2; ++j) v *= (2.0 * j - 1.0) / (2.0 * j);
      r.moments(a, b) = v;
    }
  }
  return r;
}

complex discrete_moment(const discrete_measure& mu, int a, int b) {
  const point_set& pts = mu.candidates();
  if (pts.dimension() != 1) throw std::invalid_argument("discrete_moment: univariate measures only");
  complex s = 0.0;
  for (index_t i = 0; i < mu.size(); ++i) {
    if (mu.weight(i) == 0.0) continue;
    const complex z = pts.coord(i, 0);
    s += mu.weight(i) * std::pow(z, a) * std::pow(std::conj(z), b);
  }
  return s;
}

convergence_report make_convergence_report(const std::vector<int>& degrees,
                                           const std::vector<discrete_measure>& designs,
                                           const reference_measure& reference, int moment_cap,
                                           double localization_radius) {
  if (degrees.size() != designs.size()) throw std::invalid_argument("convergence_report: degree/design mismatch");
  if (moment_cap > reference.max_order) throw std::invalid_argument("convergence_report: moment cap above table");
  convergence_report rep;
  rep.degrees = degrees;
  rep.localization_radius = localization_radius;
  rep.reference_label = to_string(reference.kind);
  for (int a = 0; a <= moment_cap; ++a) {
    for (int b = 0; b <= a && a + b <= moment_cap; ++b) rep.moment_indices.emplace_back(a, b);
  }
  rep.moment_errors = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(designs.size()),
                                            static_cast<Eigen::Index>(rep.moment_indices.size()));
  for (std::size_t r = 0; r < designs.size(); ++r) {
    const auto& mu = designs[r];
    for (std::size_t c = 0; c < rep.moment_indices.size(); ++c) {
      const auto [a, b] = rep.moment_indices[c];
      rep.moment_errors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          std::abs(discrete_moment(mu, a, b) - reference.moment(a, b));
    }
    double outside = 0.0;
    for (index_t i = 0; i < mu.size(); ++i) {
      if (std::abs(mu.candidates().coord(i, 0)) >= localization_radius - 1e-12) outside += mu.weight(i);
    }
    rep.mass_outside_region.push_back(outside);
    rep.first_moment_modulus.push_back(std::abs(discrete_moment(mu, 1, 0)));
  }
  return rep;
}

}  // namespace optmeas::asymptotics
