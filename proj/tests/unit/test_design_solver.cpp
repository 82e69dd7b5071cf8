#include <doctest.h>

#include <cmath>

#include <optmeas/design_solver.hpp>
#include <optmeas/errors.hpp>

using namespace optmeas;
using namespace optmeas::design;

namespace {

std::shared_ptr<const point_set> interval_grid(index_t count) {
  return std::make_shared<const point_set>(point_set::interval(-1.0, 1.0, count));
}

// Mass-weighted mean location of the design's mass within `radius` of `x`.
double mass_near(const discrete_measure& mu, double x, double radius) {
  double m = 0.0;
  for (index_t i = 0; i < mu.size(); ++i) {
    if (std::abs(mu.candidates().coord(i, 0).real() - x) <= radius) m += mu.weight(i);
  }
  return m;
}

}  // namespace

TEST_CASE("algorithm names") {
  for (auto a : {algorithm::multiplicative, algorithm::exchange, algorithm::hybrid}) {
    CHECK(algorithm_from_string(to_string(a)) == a);
  }
  CHECK_THROWS(algorithm_from_string("newton"));
  solver_config c;
  c.tolerance = 0.0;
  CHECK_THROWS(c.validate());
}

TEST_CASE("degree 1 on [-1, 1]: half at each endpoint") {
  auto pts = interval_grid(201);
  const graded_basis b(1, 1);
  const auto r = solve_optimal(pts, admissible_weight::unit(201), b, {});
  CHECK(r.converged);
  CHECK(r.measure.weight(0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.measure.weight(200) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.kw_gap <= 1e-6 * 2);
  // G = [[1, 0], [0, 1]] for the endpoint measure.
  CHECK(r.log_det == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("degree 2 on [-1, 1]: thirds at -1, 0, 1") {
  auto pts = interval_grid(201);
  const auto r = solve_optimal(pts, admissible_weight::unit(201), graded_basis(1, 2), {});
  CHECK(r.converged);
  CHECK(r.measure.weight(0) == doctest::Approx(1.0 / 3).epsilon(1e-5));
  CHECK(r.measure.weight(100) == doctest::Approx(1.0 / 3).epsilon(1e-5));
  CHECK(r.measure.weight(200) == doctest::Approx(1.0 / 3).epsilon(1e-5));
}

TEST_CASE("degree 3 on [-1, 1]: Gauss-Lobatto support +-1, +-1/sqrt(5)") {
  auto pts = interval_grid(2001);
  const auto r = solve_optimal(pts, admissible_weight::unit(2001), graded_basis(1, 3), {});
  CHECK(r.converged);
  const double x = 1.0 / std::sqrt(5.0);
  CHECK(mass_near(r.measure, 1.0, 1e-9) == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(mass_near(r.measure, -1.0, 1e-9) == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(mass_near(r.measure, x, 1.5e-3) == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(mass_near(r.measure, -x, 1.5e-3) == doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("converged designs certify K = N on the support") {
  auto pts = interval_grid(501);
  for (int n : {2, 4, 6}) {
    const graded_basis b(1, n);
    const auto r = solve_optimal(pts, admissible_weight::unit(501), b, {});
    REQUIRE(r.converged);
    CHECK(r.support_deviation <= 1e-5);
    CHECK(r.kw_gap <= 1e-6 * static_cast<double>(b.size()));
    // Independent re-evaluation.
    const auto ev = evaluate_design(r.measure, b.vandermonde(*pts), admissible_weight::unit(501), b);
    CHECK(ev.kw_gap == doctest::Approx(r.kw_gap).epsilon(1e-9));
  }
}

TEST_CASE("multiplicative iterations never decrease log det") {
  auto pts = interval_grid(101);
  const graded_basis b(1, 4);
  solver_config c;
  c.method = algorithm::multiplicative;
  c.max_iterations = 200;
  const auto r = solve_optimal(pts, admissible_weight::unit(101), b, c);
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    CHECK(r.trace[i].log_det >= r.trace[i - 1].log_det - 1e-12 * std::abs(r.trace[i - 1].log_det));
  }
}

TEST_CASE("hybrid iterations never decrease log det") {
  auto pts = interval_grid(301);
  const auto r = solve_optimal(pts, admissible_weight::unit(301), graded_basis(1, 5), {});
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    CHECK(r.trace[i].log_det >= r.trace[i - 1].log_det - 1e-10);
  }
}

TEST_CASE("symmetric problems give symmetric multiplicative designs") {
  auto pts = interval_grid(41);
  solver_config c;
  c.method = algorithm::multiplicative;
  c.max_iterations = 300;
  const auto r = solve_optimal(pts, admissible_weight::unit(41), graded_basis(1, 3), c);
  for (index_t i = 0; i < 41; ++i) CHECK(r.measure.weight(i) == doctest::Approx(r.measure.weight(40 - i)).epsilon(1e-10));
}

TEST_CASE("optimal measures are fixed points of the multiplicative update") {
  auto pts = interval_grid(201);
  const graded_basis b(1, 2);
  const auto w = admissible_weight::unit(201);
  const auto mu = discrete_measure::uniform_on(pts, {0, 100, 200});
  const auto ev = evaluate_design(mu, b.vandermonde(*pts), w, b);
  const auto next = multiplicative_step(mu, ev.field);
  for (index_t i = 0; i < 201; ++i) CHECK(next.weight(i) == doctest::Approx(mu.weight(i)).epsilon(1e-12));
  const auto ex = exchange_step(mu, ev.field, b.size());
  CHECK(ev.kw_gap <= 1e-12);
  CHECK(ex.weight(100) == doctest::Approx(1.0 / 3).epsilon(1e-9));
}

TEST_CASE("exchange step moves mass toward the Christoffel argmax") {
  auto pts = interval_grid(11);
  const graded_basis b(1, 1);
  const auto mu = discrete_measure::uniform_on(pts, {4, 5, 6});
  const auto ev = evaluate_design(mu, b.vandermonde(*pts), admissible_weight::unit(11), b);
  const auto next = exchange_step(mu, ev.field, b.size());
  const index_t j = ev.field.argmax_index;
  CHECK((j == 0 || j == 10));
  const double m = ev.field.max_value;
  const double alpha = (m / 2.0 - 1.0) / (m - 1.0);
  CHECK(next.weight(j) == doctest::Approx(alpha).epsilon(1e-12));
}

TEST_CASE("pairwise exchange pass increases log det") {
  auto pts = interval_grid(51);
  const graded_basis b(1, 3);
  const auto w = admissible_weight::unit(51);
  const cmatrix v = b.vandermonde(*pts);
  const auto mu = discrete_measure::uniform(pts);
  const auto ev = evaluate_design(mu, v, w, b);
  const auto next = pairwise_exchange_pass(mu, ev.fact, v, w.phi(), ev.field, 7);
  const auto ev2 = evaluate_design(next, v, w, b);
  CHECK(ev2.fact.log_det > ev.fact.log_det);
}

TEST_CASE("admissibility guard") {
  auto three = interval_grid(3);
  CHECK_THROWS_AS(solve_optimal(three, admissible_weight::unit(3), graded_basis(1, 4), {}), admissibility_error);
  auto five = interval_grid(5);
  const admissible_weight w({0.0, infinity, infinity, infinity, 0.0});
  CHECK_THROWS_AS(solve_optimal(five, w, graded_basis(1, 2), {}), admissibility_error);
  // Rank deficiency in two variables: collinear points cannot carry x and y.
  cmatrix c(4, 2);
  c << 0.0, 0.0, 1.0, 1.0, 2.0, 2.0, 3.0, 3.0;
  auto line = std::make_shared<const point_set>(c);
  CHECK_THROWS_AS(solve_optimal(line, admissible_weight::unit(4), graded_basis(2, 1), {}), admissibility_error);
}

TEST_CASE("weights vanishing on part of the grid keep the support off those points") {
  auto pts = interval_grid(101);
  std::vector<double> phi(101, 0.0);
  for (index_t i = 0; i < 10; ++i) phi[i] = infinity;
  const auto r = solve_optimal(pts, admissible_weight(phi), graded_basis(1, 2), {});
  CHECK(r.converged);
  for (index_t i = 0; i < 10; ++i) CHECK(r.measure.weight(i) == 0.0);
}

TEST_CASE("gaussian weight designs converge and stay symmetric in mass") {
  auto pts = interval_grid(401);
  const auto w = weight_spec{weight_spec::kind::gaussian, 1.0, {}}.tabulate(*pts);
  const auto r = solve_optimal(pts, w, graded_basis(1, 4), {});
  CHECK(r.converged);
  double first = 0.0;
  for (index_t i = 0; i < 401; ++i) first += r.measure.weight(i) * pts->coord(i, 0).real();
  CHECK(std::abs(first) < 1e-4);
}

TEST_CASE("disk designs converge and sit on the boundary for small n") {
  auto pts = std::make_shared<const point_set>(point_set::polar_disk(10, 32));
  const auto r = solve_optimal(pts, admissible_weight::unit(pts->size()), graded_basis(1, 3), {});
  CHECK(r.converged);
  double outer = 0.0;
  for (index_t i = 0; i < pts->size(); ++i) {
    if (std::abs(pts->coord(i, 0)) > 0.99) outer += r.measure.weight(i);
  }
  CHECK(outer == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("two-variable designs converge") {
  cmatrix c(121, 2);
  for (int i = 0; i < 11; ++i) {
    for (int j = 0; j < 11; ++j) {
      c(i * 11 + j, 0) = -1.0 + 0.2 * i;
      c(i * 11 + j, 1) = -1.0 + 0.2 * j;
    }
  }
  auto pts = std::make_shared<const point_set>(c);
  const graded_basis b(2, 2);
  const auto r = solve_optimal(pts, admissible_weight::unit(121), b, {});
  CHECK(r.converged);
  CHECK(r.support_deviation <= 1e-5);
}

TEST_CASE("solves are deterministic") {
  auto pts = interval_grid(301);
  const auto a = solve_optimal(pts, admissible_weight::unit(301), graded_basis(1, 6), {});
  const auto b = solve_optimal(pts, admissible_weight::unit(301), graded_basis(1, 6), {});
  CHECK(std::vector<double>(a.measure.weights().begin(), a.measure.weights().end()) ==
        std::vector<double>(b.measure.weights().begin(), b.measure.weights().end()));
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("KW certificate on a finer mesh") {
  auto pts = interval_grid(201);
  const graded_basis b(1, 4);
  const auto r = solve_optimal(pts, admissible_weight::unit(201), b, {});
  const point_set fine = point_set::interval(-1.0, 1.0, 2001);
  const double gap = kw_certificate(r, fine, admissible_weight::unit(2001), admissible_weight::unit(201), b);
  // The fine mesh contains the coarse grid, so the gap can only grow, and
  // only slightly between grid points.
  CHECK(gap >= r.kw_gap - 1e-9);
  CHECK(gap < 0.5);
}
