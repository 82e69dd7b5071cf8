#pragma once

#include <string>
#include <vector>

#include <optmeas/design_solver.hpp>
#include <optmeas/extremal_points.hpp>
#include <optmeas/measures.hpp>
#include <optmeas/poly_basis.hpp>
#include <optmeas/weight.hpp>

namespace optmeas::asymptotics {

// exp(log_weighted_vdm / m_n); 0 for a degenerate family. Throws for n = 0.
double delta_n_from_points(const extremal::point_family& family, const graded_basis& basis);

// exp(log det G / (2 m_n)) of a design in the monomial basis.
double delta_n_from_gram(const design::design_result& result, const graded_basis& basis);

// Log-domain sandwich (1/N^N) d^{2m} <= det G <= (1/N!) d^{2m} built from the
// log of the maximal weighted VDM.
struct sandwich_bounds {
  double log_lo = 0.0;
  double log_hi = 0.0;
};
sandwich_bounds sandwich(double log_weighted_vdm, const graded_basis& basis);

struct diameter_estimate {
  int degree = 0;
  double delta_from_points = 0.0;
  double delta_from_gram = 0.0;
  double log_det = -infinity;
  double log_sandwich_lo = 0.0;
  double log_sandwich_hi = 0.0;
  std::string points_route;  // fekete_bruteforce or leja
  bool upper_checked = true;
  bool lower_ok = true;
  bool upper_ok = true;
};

// `upper_slack` is relative (det <= hi (1 + slack)), `lower_slack` absolute in
// log det.
diameter_estimate estimate_diameter(const design::design_result& result, const extremal::point_family& family,
                                    const graded_basis& basis, double upper_slack = 1e-6,
                                    double lower_slack = 1e-9);

struct perturbation_curve {
  std::vector<double> t_grid;
  std::vector<double> f_values;  // NaN where the perturbed Gram is singular
  std::vector<double> u_values;
  discrete_measure measure;
  int degree = 0;
};

// f_n(t) = -(1/2m_n) log det G_n^{mu, w_t}, w_t = w e^{-t u}, mu fixed.
perturbation_curve make_perturbation_curve(const discrete_measure& measure, const admissible_weight& weight,
                                           std::vector<double> u_values, const graded_basis& basis,
                                           std::vector<double> t_grid);
perturbation_curve make_perturbation_curve(const design::design_result& result, const admissible_weight& weight,
                                           std::vector<double> u_values, const graded_basis& basis,
                                           std::vector<double> t_grid);

struct derivative_report {
  double fd_slope = 0.0;
  double formula_slope = 0.0;
  double discrepancy = 0.0;
};

// Central difference at t = 0 against ((d+1)/d) int u dmu.
derivative_report derivative_check(const perturbation_curve& curve, const graded_basis& basis);

struct concavity_report {
  double max_second_difference = 0.0;
};

// Largest f(t-h) - 2 f(t) + f(t+h) over interior grid points (equal spacing).
concavity_report concavity_check(const perturbation_curve& curve);

enum class reference_kind { arcsine_interval, uniform_circle };

reference_kind reference_from_string(const std::string& name);
std::string to_string(reference_kind k);

struct reference_measure {
  reference_kind kind = reference_kind::arcsine_interval;
  int max_order = 0;
  // moments(a, b) = int z^a conj(z)^b dmu, 0 <= a, b <= max_order
  cmatrix moments;

  complex moment(int a, int b) const { return moments(a, b); }
};

reference_measure reference_equilibrium(reference_kind kind, int max_order = 8);

struct convergence_report {
  std::vector<int> degrees;
  // (a, b) per column, a + b <= moment cap
  std::vector<std::pair<int, int>> moment_indices;
  // rows: degrees, columns: moment_indices
  Eigen::MatrixXd moment_errors;
  // mass at |z| >= localization_radius, per degree
  std::vector<double> mass_outside_region;
  // |int z dmu_n|
  std::vector<double> first_moment_modulus;
  double localization_radius = 0.95;
  std::string reference_label;
};

// Univariate (d = 1) designs sharing a candidate set.
convergence_report make_convergence_report(const std::vector<int>& degrees,
                                           const std::vector<discrete_measure>& designs,
                                           const reference_measure& reference, int moment_cap = 4,
                                           double localization_radius = 0.95);

// int z^a conj(z)^b dmu for a univariate discrete measure.
complex discrete_moment(const discrete_measure& mu, int a, int b);

}  // namespace optmeas::asymptotics
