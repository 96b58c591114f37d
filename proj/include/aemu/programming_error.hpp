#pragma once

#include <random>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "aemu/evolve.hpp"
#include "aemu/ising.hpp"
#include "aemu/rng.hpp"
#include "aemu/schedule.hpp"
#include "aemu/types.hpp"

namespace aemu {

// Quasi-static Gaussian misspecification of every coupling and field,
// redrawn independently per realization and frozen during each anneal.
struct ProgrammingErrorModel {
  double sigma = 0.03;       // rad/ns
  int n_realizations = 1000;
  std::uint64_t seed = 0;

  void validate() const {
    if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
    if (n_realizations < 1) throw std::invalid_argument("need at least one realization");
  }
};

struct ProgrammingErrorResult {
  RealVector mean;             // averaged basis distribution
  RealMatrix per_realization;  // one row per realization
};

// Draws the perturbed instance for one realization from its own RNG stream,
// so results do not depend on evaluation order.
inline IsingModel perturbed_instance(const IsingModel& model, double sigma, std::uint64_t seed,
                                     int realization) {
  auto rng = make_stream(seed, static_cast<std::uint64_t>(realization));
  std::normal_distribution<double> normal(0.0, 1.0);
  IsingModel out = model;
  for (auto& [i, j, J] : out.couplings) J += sigma * normal(rng);
  for (auto& [i, h] : out.fields) h += sigma * normal(rng);
  return out;
}

inline ProgrammingErrorResult evolve_with_programming_errors(
    const IsingModel& model, const AnnealSchedule& sched, double JT,
    const ProgrammingErrorModel& pe, const ConvergenceCriteria& crit = {}) {
  pe.validate();
  model.validate();
  const int dim = dense_dim(model.n_qubits);
  ProgrammingErrorResult res;
  res.per_realization = RealMatrix::Zero(pe.n_realizations, dim);
  for (int r = 0; r < pe.n_realizations; ++r) {
    IsingModel inst = perturbed_instance(model, pe.sigma, pe.seed, r);
    EvolveResult ev = evolve_exact(inst, sched, JT, crit);
    res.per_realization.row(r) = ev.populations.transpose();
  }
  res.mean = res.per_realization.colwise().mean().transpose();
  return res;
}

inline nlohmann::json to_json(const ProgrammingErrorModel& m) {
  return {{"sigma", m.sigma}, {"n_realizations", m.n_realizations}, {"seed", m.seed}};
}

inline ProgrammingErrorModel pe_from_json(const nlohmann::json& j) {
  ProgrammingErrorModel m;
  if (j.contains("sigma")) m.sigma = j.at("sigma").get<double>();
  if (j.contains("n_realizations")) m.n_realizations = j.at("n_realizations").get<int>();
  if (j.contains("seed")) m.seed = j.at("seed").get<std::uint64_t>();
  m.validate();
  return m;
}

inline ProgrammingErrorModel pe_preset(const std::string& name) {
  if (name != "pe-0.03") throw std::invalid_argument("unknown programming-error preset: " + name);
  return ProgrammingErrorModel{};
}

}  // namespace aemu
