#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "aemu/evolve.hpp"
#include "aemu/ising.hpp"
#include "aemu/metrics.hpp"
#include "aemu/schedule.hpp"

using namespace aemu;

namespace {

// Plain truncated power series for exp(-i H dt), good to machine precision
// for the small steps used here.
Matrix taylor_exponential(const Matrix& H, double dt) {
  const int dim = static_cast<int>(H.rows());
  Matrix U = Matrix::Identity(dim, dim);
  Matrix term = Matrix::Identity(dim, dim);
  for (int k = 1; k < 60; ++k) {
    term = term * (Complex(0, -dt) / double(k)) * H;
    U += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  return U;
}

}  // namespace

TEST_CASE("zero anneal time leaves the initial state untouched") {
  EvolveResult r = evolve_exact(t4_model(), AnnealSchedule::linear(), 0.0);
  Vector psi0 = Vector::Constant(16, Complex(0.25, 0.0));
  CHECK((r.final_state - psi0).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sudden quench keeps the uniform distribution") {
  EvolveResult r = evolve_exact(t4_model(), AnnealSchedule::linear(), 0.01);
  for (int b = 0; b < 16; ++b) CHECK(r.populations[b] == Catch::Approx(1.0 / 16).margin(1e-3));
}

TEST_CASE("adiabatic limit splits the degenerate ground space unevenly") {
  IsingModel m = t4_model();
  EvolveResult r = evolve_exact(m, AnnealSchedule::linear(), 1000.0);

  // Degenerate perturbation theory gives (2+sqrt(3))/12 for this state, not
  // the naive 1/3 a uniform split over the connected triple would suggest.
  const double limit = (2.0 + std::sqrt(3.0)) / 12.0;
  CHECK(r.populations[state_index("uudu")] == Catch::Approx(limit).margin(5e-4));

  double gs_mass = 0.0;
  for (int idx : ground_state_indices(m)) gs_mass += r.populations[idx];
  CHECK(gs_mass > 0.99);

  Matrix HT = build_ising_hamiltonian(m);
  const double energy = (r.final_state.adjoint() * HT * r.final_state)(0, 0).real();
  CHECK(energy == Catch::Approx(-3.0).margin(0.05));
}

TEST_CASE("single-step propagators match closed forms") {
  Matrix zero2 = Matrix::Zero(2, 2);
  CHECK((propagator_step(zero2) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);

  Matrix sz(2, 2);
  sz << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  Matrix u = propagator_step(sz, kPi);
  CHECK((u + Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

  Matrix H = hamiltonian_at(0.5, AnnealSchedule::linear(), t4_model());
  Matrix expd = propagator_step(H, 0.1);
  CHECK((expd - taylor_exponential(H, 0.1)).cwiseAbs().maxCoeff() < 1e-9);

  Matrix bad(2, 2);
  bad << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
  CHECK_THROWS_AS(propagator_step(bad), std::invalid_argument);
}

TEST_CASE("norm is preserved along the trajectory") {
  std::vector<double> points = {0.0, 0.25, 0.5, 0.75, 1.0};
  EvolveResult r = evolve_exact(t4_model(), AnnealSchedule::linear(), 10.0, {}, points);
  REQUIRE(r.recorded.size() == points.size());
  for (const auto& [s, psi] : r.recorded) {
    CHECK(std::abs(psi.norm() - 1.0) < 1e-9);
  }
  CHECK(r.recorded.front().first == 0.0);
  CHECK(r.recorded.back().first == Catch::Approx(1.0));
}

TEST_CASE("negative anneal time is rejected") {
  CHECK_THROWS_AS(evolve_exact(t4_model(), AnnealSchedule::linear(), -1.0),
                  std::invalid_argument);
}

TEST_CASE("failed refinement reports its last distances") {
  ConvergenceCriteria crit;
  crit.linf_tol = 1e-300;
  crit.l1_tol = 1e-300;
  crit.max_refinements = 2;
  try {
    evolve_exact(t4_model(), AnnealSchedule::linear(), 100.0, crit);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_linf > 0.0);
    CHECK(e.last_l1 >= e.last_linf);
  }
}

TEST_CASE("converged runs satisfy the requested tolerances") {
  EvolveResult r = evolve_exact(t4_model(), AnnealSchedule::linear(), 10.0);
  CHECK(r.last_linf < 1e-4);
  CHECK(r.last_l1 < 1e-6);
  CHECK(r.refinements >= 1);
  CHECK(r.steps >= 128);
}
