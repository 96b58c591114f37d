#pragma once

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "aemu/circuit.hpp"
#include "aemu/ising.hpp"

namespace aemu {

// Wall-clock model for one discretized anneal on gate hardware, plus the
// energy scale that converts dimensionless JT to analog nanoseconds.
struct RuntimeModel {
  double C1 = 25.0;  // ns per 1-qubit gate layer
  double C2 = 25.0;  // ns per 2-qubit gate layer
  int chi1 = 0;      // chromatic index of the coupling graph
  double analog_energy_scale = 1.0;  // rad/ns

  static RuntimeModel for_model(const IsingModel& m) {
    RuntimeModel rt;
    rt.chi1 = chromatic_index(m);
    return rt;
  }

  void validate() const {
    if (C1 <= 0.0 || C2 < 0.0) throw std::invalid_argument("layer durations must be positive");
    if (chi1 < 0) throw std::invalid_argument("chromatic index must be >= 0");
    if (analog_energy_scale <= 0.0) throw std::invalid_argument("energy scale must be > 0");
  }
};

// N_M*N_T*(chi1*C2 + C1) + C1: every product step needs one fused 1-qubit
// slot and chi1 two-qubit slots, plus the one trailing 1-qubit slot.
inline double estimate_circuit_runtime(int n_m, int n_t, const RuntimeModel& rt) {
  if (n_m < 1 || n_t < 1) throw std::invalid_argument("step counts must be >= 1");
  rt.validate();
  return static_cast<double>(n_m) * n_t * (rt.chi1 * rt.C2 + rt.C1) + rt.C1;
}

inline double estimate_analog_runtime(double JT, const RuntimeModel& rt) {
  if (JT < 0.0) throw std::invalid_argument("JT must be >= 0");
  rt.validate();
  return JT / rt.analog_energy_scale;
}

inline nlohmann::json to_json(const RuntimeModel& rt) {
  return {{"c1_ns", rt.C1},
          {"c2_ns", rt.C2},
          {"chi1", rt.chi1},
          {"analog_energy_scale", rt.analog_energy_scale}};
}

inline RuntimeModel runtime_from_json(const nlohmann::json& j) {
  RuntimeModel rt;
  if (j.contains("c1_ns")) rt.C1 = j.at("c1_ns").get<double>();
  if (j.contains("c2_ns")) rt.C2 = j.at("c2_ns").get<double>();
  if (j.contains("chi1")) rt.chi1 = j.at("chi1").get<int>();
  if (j.contains("analog_energy_scale"))
    rt.analog_energy_scale = j.at("analog_energy_scale").get<double>();
  rt.validate();
  return rt;
}

}  // namespace aemu
