#include <optmeas/runner/invariant_checks.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/LU>

#include <fmt/format.h>

#include <optmeas/asymptotics.hpp>
#include <optmeas/design_solver.hpp>
#include <optmeas/measures.hpp>
#include <optmeas/poly_basis.hpp>

namespace optmeas::runner {

namespace {

using rng = std::mt19937_64;

point_set random_points(rng& gen, index_t count, int dimension) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  cmatrix c(static_cast<Eigen::Index>(count), dimension);
  for (Eigen::Index i = 0; i < c.rows(); ++i) {
    for (int k = 0; k < dimension; ++k) c(i, k) = complex(u(gen), u(gen));
  }
  return point_set(std::move(c), "random");
}

std::vector<double> random_masses(rng& gen, index_t count) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> m(count);
  for (double& x : m) x = u(gen);
  return m;
}

admissible_weight random_gaussian_weight(rng& gen, const point_set& pts) {
  std::uniform_real_distribution<double> u(0.0, 0.5);
  weight_spec spec{weight_spec::kind::gaussian, u(gen), {}};
  return spec.tabulate(pts);
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

invariant_result mass_identity(rng& gen) {
  invariant_result r{"mass_identity", 0, 0.0, 1e-10, false};
  std::uniform_int_distribution<int> dim(1, 2);
  std::uniform_int_distribution<int> deg(0, 4);
  for (int c = 0; c < 25; ++c, ++r.cases) {
    const int d = dim(gen);
    const graded_basis basis(d, deg(gen));
    auto pts = std::make_shared<const point_set>(random_points(gen, basis.size() + 8, d));
    const auto w = random_gaussian_weight(gen, *pts);
    const auto mu = discrete_measure::normalized(pts, random_masses(gen, pts->size()));
    const auto fact = gram(basis, mu, w);
    const auto field = christoffel(fact, basis, *pts, w);
    const double n_dim = static_cast<double>(basis.size());
    r.max_error = std::max(r.max_error, std::abs(mu.integrate(field.values) - n_dim) / n_dim);
  }
  return r;
}

invariant_result det_monotonicity(rng& gen) {
  invariant_result r{"det_monotonicity", 0, 0.0, 1e-12, false};
  for (int c = 0; c < 5; ++c, ++r.cases) {
    const graded_basis basis(1, 1 + c % 3);
    auto pts = std::make_shared<const point_set>(random_points(gen, 30, 1));
    const auto w = random_gaussian_weight(gen, *pts);
    auto mu = discrete_measure::normalized(pts, random_masses(gen, pts->size()));
    double prev = -infinity;
    for (int it = 0; it < 40; ++it) {
      const auto fact = gram(basis, mu, w);
      if (prev != -infinity) r.max_error = std::max(r.max_error, (prev - fact.log_det) / std::abs(prev));
      prev = fact.log_det;
      mu = design::multiplicative_step(mu, christoffel(fact, basis, *pts, w));
    }
  }
  return r;
}

invariant_result change_of_basis(rng& gen) {
  invariant_result r{"change_of_basis", 0, 0.0, 1e-8, false};
  std::normal_distribution<double> g;
  for (int c = 0; c < 20; ++c, ++r.cases) {
    const graded_basis basis(1 + c % 2, 2);
    const point_set pts = random_points(gen, basis.size() + 6, basis.dimension());
    const auto mass = random_masses(gen, pts.size());
    const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
    std::vector<double> mu(mass.size());
    std::transform(mass.begin(), mass.end(), mu.begin(), [&](double m) { return m / total; });
    const std::vector<double> phi(pts.size(), 0.0);
    const auto nb = static_cast<Eigen::Index>(basis.size());
    cmatrix a(nb, nb);
    for (Eigen::Index i = 0; i < nb; ++i) {
      for (Eigen::Index j = 0; j < nb; ++j) a(i, j) = complex(g(gen), g(gen));
    }
    const cmatrix v = basis.vandermonde(pts);
    const cmatrix vb = v * a.transpose();
    const double ld_c = gram_from_evaluations(v, mu, phi, basis.degree()).log_det;
    const double ld_b = gram_from_evaluations(vb, mu, phi, basis.degree()).log_det;
    const double log_abs_a = std::log(std::abs(a.determinant()));
    r.max_error = std::max(r.max_error, std::abs(std::expm1(ld_b - ld_c - 2.0 * log_abs_a)));
  }
  return r;
}

// N-fold sum of |VDM|^2 prod w^{2n} prod mu over all index tuples.
double gram_vdm_sum(const graded_basis& basis, const point_set& pts, std::span<const double> mu,
                    std::span<const double> phi) {
  const auto nb = static_cast<int>(basis.size());
  const cmatrix v = basis.vandermonde(pts);
  const auto m = static_cast<int>(pts.size());
  std::vector<int> idx(static_cast<std::size_t>(nb), 0);
  double total = 0.0;
  while (true) {
    cmatrix sq(nb, nb);
    double factor = 1.0;
    for (int r = 0; r < nb; ++r) {
      sq.row(r) = v.row(idx[static_cast<std::size_t>(r)]);
      const auto i = static_cast<std::size_t>(idx[static_cast<std::size_t>(r)]);
      factor *= mu[i] * std::exp(-2.0 * basis.degree() * phi[i]);
    }
    total += std::norm(sq.determinant()) * factor;
    int k = nb - 1;
    while (k >= 0 && ++idx[static_cast<std::size_t>(k)] == m) idx[static_cast<std::size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return total;
}

invariant_result gram_vdm_identity(rng& gen) {
  invariant_result r{"gram_vdm_identity", 0, 0.0, 1e-8, false};
  std::uniform_int_distribution<int> cnt(3, 5);
  for (int c = 0; c < 20; ++c, ++r.cases) {
    const graded_basis basis = c % 3 == 0 ? graded_basis(1, 1) : (c % 3 == 1 ? graded_basis(1, 2) : graded_basis(2, 1));
    auto pts = std::make_shared<const point_set>(random_points(gen, static_cast<index_t>(cnt(gen)), basis.dimension()));
    const auto w = random_gaussian_weight(gen, *pts);
    const auto mu = discrete_measure::normalized(pts, random_masses(gen, pts->size()));
    const double lhs = std::tgamma(static_cast<double>(basis.size()) + 1.0) * std::exp(gram(basis, mu, w).log_det);
    r.max_error = std::max(r.max_error, relative(lhs, gram_vdm_sum(basis, *pts, mu.weights(), w.phi())));
  }
  return r;
}

invariant_result christoffel_cross_check(rng& gen) {
  invariant_result r{"christoffel_cross_check", 0, 0.0, 1e-8, false};
  for (int c = 0; c < 10; ++c, ++r.cases) {
    const graded_basis basis(1 + c % 2, 1 + c % 3);
    auto pts = std::make_shared<const point_set>(random_points(gen, basis.size() + 5, basis.dimension()));
    const auto w = random_gaussian_weight(gen, *pts);
    const auto mu = discrete_measure::normalized(pts, random_masses(gen, pts->size()));
    const auto fact = gram(basis, mu, w);
    const auto field = christoffel(fact, basis, *pts, w);
    for (index_t i = 0; i < pts->size(); ++i) {
      const double k = christoffel_via_inverse(fact, basis, pts->point(i), w.phi(i));
      r.max_error = std::max(r.max_error, relative(field.values[i], k));
    }
  }
  return r;
}

struct curve_case {
  std::vector<double> u;
  design::design_result result;
};

std::vector<double> symmetric_grid(double half_width, int count) {
  std::vector<double> t(static_cast<std::size_t>(count));
  const int last = count - 1;
  for (int i = 0; i < count; ++i) t[static_cast<std::size_t>(i)] = half_width * (2.0 * i - last) / last;
  return t;
}

std::vector<invariant_result> derivative_and_concavity(rng& gen) {
  invariant_result der{"derivative_formula", 0, 0.0, 1e-4, false};
  invariant_result con{"concavity", 0, 0.0, 1e-8, false};
  con.max_error = -infinity;
  auto pts = std::make_shared<const point_set>(point_set::interval(-1.0, 1.0, 201));
  const auto w = admissible_weight::unit(pts->size());
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int n : {2, 4}) {
    const graded_basis basis(1, n);
    design::solver_config cfg;
    cfg.tolerance = 1e-9;
    const auto res = design::solve_optimal(pts, w, basis, cfg);
    // Random quadratic test function.
    const double c0 = coef(gen), c1 = coef(gen), c2 = coef(gen);
    std::vector<double> u(pts->size());
    for (index_t i = 0; i < u.size(); ++i) {
      const double x = pts->coord(i, 0).real();
      u[i] = c0 + c1 * x + c2 * x * x;
    }
    const auto stencil = asymptotics::make_perturbation_curve(res, w, u, basis, {-1e-4, 0.0, 1e-4});
    der.max_error = std::max(der.max_error, asymptotics::derivative_check(stencil, basis).discrepancy);
    ++der.cases;
    const auto curve = asymptotics::make_perturbation_curve(res, w, u, basis, symmetric_grid(1.0, 21));
    con.max_error = std::max(con.max_error, asymptotics::concavity_check(curve).max_second_difference);
    ++con.cases;
  }
  return {der, con};
}

}  // namespace

std::vector<invariant_result> run_invariant_suite(std::uint64_t seed, std::optional<double> tolerance_override) {
  rng gen(seed);
  std::vector<invariant_result> out;
  out.push_back(mass_identity(gen));
  out.push_back(det_monotonicity(gen));
  out.push_back(change_of_basis(gen));
  out.push_back(gram_vdm_identity(gen));
  out.push_back(christoffel_cross_check(gen));
  for (auto& r : derivative_and_concavity(gen)) out.push_back(std::move(r));
  for (auto& r : out) {
    if (tolerance_override) r.tolerance = *tolerance_override;
    r.passed = std::isfinite(r.max_error) ? r.max_error <= r.tolerance : false;
  }
  return out;
}

std::string format_invariant_table(const std::vector<invariant_result>& results) {
  std::string s = fmt::format("{:<26} {:>6} {:>12} {:>12}  {}\n", "invariant", "cases", "max_error", "tolerance",
                              "status");
  for (const auto& r : results) {
    s += fmt::format("{:<26} {:>6} {:>12.3e} {:>12.3e}  {}\n", r.name, r.cases, r.max_error, r.tolerance,
                     r.passed ? "PASS" : "FAIL");
  }
  return s;
}

}  // namespace optmeas::runner
