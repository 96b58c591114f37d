#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "aemu/circuit.hpp"
#include "aemu/evolve.hpp"
#include "aemu/ising.hpp"
#include "aemu/metrics.hpp"
#include "aemu/noisy_circuit.hpp"
#include "aemu/schedule.hpp"
#include "aemu/types.hpp"

namespace aemu {

// Log-ish product-step grid: dense at the bottom where optima for short
// anneals live, coarser above, wide enough to bracket every optimum the
// search is expected to find.
inline std::vector<int> default_nm_grid() {
  std::vector<int> g;
  for (int v = 1; v <= 20; ++v) g.push_back(v);
  for (int v = 25; v <= 100; v += 5) g.push_back(v);
  for (int v = 110; v <= 200; v += 10) g.push_back(v);
  for (int v = 225; v <= 300; v += 25) g.push_back(v);
  for (int v = 350; v <= 700; v += 50) g.push_back(v);
  g.push_back(660);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

inline std::vector<int> default_nt_grid() { return {1, 2, 3, 4, 5, 6}; }

struct SearchCell {
  int n_m = 0;
  int n_t = 0;
  double tvd = 0.0;
  double fidelity = 0.0;
};

struct SearchResult {
  double JT = 0.0;
  double tvd_target = 0.0;
  bool feasible = false;
  int n_m = 0;
  int n_t = 0;
  double tvd = 0.0;
  double fidelity = 0.0;
  std::vector<SearchCell> cells;  // every grid cell evaluated
};

// Evaluates the discretized closed-system evolution over a (N_M, N_T) grid
// and returns the cell with TVD below target that minimizes the product
// N_M*N_T; ties go to smaller N_M, then smaller N_T. `feasible` is false if
// no cell meets the target on the given grid.
inline SearchResult find_min_steps(const IsingModel& model, const AnnealSchedule& sched,
                                   double JT, double tvd_target = kHighQualityTvd,
                                   std::vector<int> nm_grid = default_nm_grid(),
                                   std::vector<int> nt_grid = default_nt_grid(),
                                   const ConvergenceCriteria& crit = {}) {
  if (nm_grid.empty() || nt_grid.empty()) throw std::invalid_argument("grids must be nonempty");
  model.validate();
  EvolveResult ref = evolve_exact(model, sched, JT, crit);
  const RealVector ref_pop = ref.populations;
  const int dim = dense_dim(model.n_qubits);
  Vector psi0 = Vector::Constant(dim, Complex(1.0 / std::sqrt(double(dim)), 0.0));

  SearchResult res;
  res.JT = JT;
  res.tvd_target = tvd_target;
  for (int n_m : nm_grid) {
    for (int n_t : nt_grid) {
      GateCircuit c = build_circuit(TrotterPlan{n_m, n_t, JT}, model, sched);
      Vector psi = apply_circuit(c, psi0);
      SearchCell cell;
      cell.n_m = n_m;
      cell.n_t = n_t;
      cell.tvd = tvd(basis_distribution(psi), ref_pop);
      cell.fidelity = fidelity(psi, ref.final_state);
      res.cells.push_back(cell);
    }
  }

  auto better = [](const SearchCell& a, const SearchCell& b) {
    const long pa = static_cast<long>(a.n_m) * a.n_t, pb = static_cast<long>(b.n_m) * b.n_t;
    if (pa != pb) return pa < pb;
    if (a.n_m != b.n_m) return a.n_m < b.n_m;
    return a.n_t < b.n_t;
  };
  const SearchCell* best = nullptr;
  for (const auto& cell : res.cells)
    if (cell.tvd < tvd_target && (!best || better(cell, *best))) best = &cell;
  if (best) {
    res.feasible = true;
    res.n_m = best->n_m;
    res.n_t = best->n_t;
    res.tvd = best->tvd;
    res.fidelity = best->fidelity;
  }
  return res;
}

struct NoisyOptimumResult {
  int n_m = 0;
  double tvd = 0.0;
  std::vector<SearchCell> cells;
};

// N_M minimizing the noisy-circuit TVD against the converged reference at
// fixed N_T. Ties go to the smaller N_M.
inline NoisyOptimumResult noisy_optimum_magnus(const IsingModel& model,
                                               const AnnealSchedule& sched, double JT,
                                               const CircuitNoiseModel& noise, int n_t = 2,
                                               std::vector<int> nm_grid = {},
                                               const ConvergenceCriteria& crit = {}) {
  if (nm_grid.empty())
    for (int v = 1; v <= 20; ++v) nm_grid.push_back(v);
  model.validate();
  EvolveResult ref = evolve_exact(model, sched, JT, crit);
  const int dim = dense_dim(model.n_qubits);
  Matrix rho0 = Matrix::Constant(dim, dim, Complex(1.0 / dim, 0.0));

  NoisyOptimumResult res;
  for (int n_m : nm_grid) {
    GateCircuit c = build_circuit(TrotterPlan{n_m, n_t, JT}, model, sched);
    Matrix rho = simulate_noisy_circuit(c, noise, rho0);
    SearchCell cell;
    cell.n_m = n_m;
    cell.n_t = n_t;
    cell.tvd = tvd(measure_distribution(rho, noise), ref.populations);
    cell.fidelity = fidelity(ref.final_state, rho);
    res.cells.push_back(cell);
  }
  const SearchCell* best = nullptr;
  for (const auto& cell : res.cells)
    if (!best || cell.tvd < best->tvd) best = &cell;
  res.n_m = best->n_m;
  res.tvd = best->tvd;
  return res;
}

}  // namespace aemu
