#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "aemu/ising.hpp"
#include "aemu/rng.hpp"
#include "aemu/schedule.hpp"
#include "aemu/types.hpp"

namespace aemu {

// Classical rotors in the x-z plane, one angle per spin.
struct RotorState {
  std::vector<double> theta;

  static RotorState transverse_start(int n) {
    RotorState st;
    st.theta.assign(n, 0.5 * kPi);
    return st;
  }

  void wrap() {
    for (double& t : theta) {
      t = std::fmod(t, 2.0 * kPi);
      if (t < 0.0) t += 2.0 * kPi;
    }
  }
};

struct SvmcConfig {
  double beta = 3.19;     // inverse energy, matching schedule units
  int n_sweeps = 10001;   // one sweep per s value, evenly spaced over [0,1]
  int n_trials = 1000;
  std::uint64_t seed = 0;

  void validate() const {
    if (beta < 0.0) throw std::invalid_argument("beta must be >= 0");
    if (n_sweeps < 1) throw std::invalid_argument("n_sweeps must be >= 1");
    if (n_trials < 1) throw std::invalid_argument("n_trials must be >= 1");
  }

  double s_value(int sweep) const {
    return n_sweeps == 1 ? 1.0 : static_cast<double>(sweep) / (n_sweeps - 1);
  }
};

// Energy change of rotating spin i from its current angle to theta_p at fixed
// s: -A(s)(sin t' - sin t) + B(s)[h_i + sum_j J_ij cos t_j](cos t' - cos t).
inline double svmc_delta_e(int i, double theta_p, const RotorState& state, double s,
                           const AnnealSchedule& sched, const IsingModel& model) {
  if (i < 0 || i >= model.n_qubits) throw std::out_of_range("spin index out of range");
  const double t = state.theta[i];
  double local = 0.0;
  for (const auto& [a, h] : model.fields)
    if (a == i) local += h;
  for (const auto& [a, b, J] : model.couplings) {
    if (a == i) local += J * std::cos(state.theta[b]);
    if (b == i) local += J * std::cos(state.theta[a]);
  }
  return -sched.A(s) * (std::sin(theta_p) - std::sin(t)) +
         sched.B(s) * local * (std::cos(theta_p) - std::cos(t));
}

// One full anneal of one rotor configuration; returns the measured basis
// index (cos > 0 maps to spin up, i.e. bit 0).
inline int svmc_trial(const IsingModel& model, const AnnealSchedule& sched,
                      const SvmcConfig& cfg, std::mt19937_64& rng) {
  const int n = model.n_qubits;
  RotorState state = RotorState::transverse_start(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int sweep = 0; sweep < cfg.n_sweeps; ++sweep) {
    const double s = cfg.s_value(sweep);
    for (int i = 0; i < n; ++i) {
      const double proposal = 2.0 * kPi * unit(rng);
      const double dE = svmc_delta_e(i, proposal, state, s, sched, model);
      if (dE <= 0.0 || unit(rng) < std::exp(-cfg.beta * dE)) state.theta[i] = proposal;
    }
  }
  int idx = 0;
  for (int i = 0; i < n; ++i) {
    const double c = std::cos(state.theta[i]);
    int bit;
    if (c > 0.0) bit = 0;
    else if (c < 0.0) bit = 1;
    else bit = unit(rng) < 0.5 ? 0 : 1;
    idx |= bit << i;
  }
  return idx;
}

// Anneals n_trials independent rotor configurations and histograms the
// measured outcomes. Trials use per-trial RNG substreams, so the result is
// reproducible regardless of evaluation order.
inline RealVector run_svmc(const IsingModel& model, const AnnealSchedule& sched,
                           const SvmcConfig& cfg) {
  cfg.validate();
  model.validate();
  const int dim = dense_dim(model.n_qubits);
  RealVector counts = RealVector::Zero(dim);
  for (int t = 0; t < cfg.n_trials; ++t) {
    auto rng = make_stream(cfg.seed, static_cast<std::uint64_t>(t));
    counts[svmc_trial(model, sched, cfg, rng)] += 1.0;
  }
  return counts / static_cast<double>(cfg.n_trials);
}

inline nlohmann::json to_json(const SvmcConfig& c) {
  return {{"beta", c.beta},
          {"n_sweeps", c.n_sweeps},
          {"n_trials", c.n_trials},
          {"seed", c.seed}};
}

inline SvmcConfig svmc_from_json(const nlohmann::json& j) {
  SvmcConfig c;
  if (j.contains("beta")) c.beta = j.at("beta").get<double>();
  if (j.contains("n_sweeps")) c.n_sweeps = j.at("n_sweeps").get<int>();
  if (j.contains("n_trials")) c.n_trials = j.at("n_trials").get<int>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  c.validate();
  return c;
}

}  // namespace aemu
