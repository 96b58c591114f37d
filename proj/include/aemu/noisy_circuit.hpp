#pragma once

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "aemu/circuit.hpp"
#include "aemu/kraus.hpp"
#include "aemu/types.hpp"

namespace aemu {

// Per-qubit decoherence and gate-error parameters for density-matrix
// simulation of a gate circuit. Times are in nanoseconds.
struct CircuitNoiseModel {
  int n_qubits = 0;
  std::vector<double> T1;
  std::vector<double> T2;
  double layer_duration = 25.0;
  double depolarizing_1q = 0.0;
  double depolarizing_2q = 0.0;
  std::vector<RealMatrix> readout_confusion;  // per qubit, rows sum to 1

  bool enable_dephasing = false;
  bool enable_thermal = false;
  bool enable_depolarizing = false;
  bool enable_readout = false;

  void validate() const {
    if (n_qubits <= 0) throw std::invalid_argument("noise model needs n_qubits > 0");
    auto need = [&](const std::vector<double>& v, const char* what) {
      if (static_cast<int>(v.size()) != n_qubits)
        throw std::invalid_argument(std::string(what) + " must have one entry per qubit");
      for (double x : v)
        if (x <= 0.0) throw std::invalid_argument(std::string(what) + " entries must be > 0");
    };
    if (enable_dephasing || enable_thermal) need(T2, "T2");
    if (enable_thermal) {
      need(T1, "T1");
      for (int q = 0; q < n_qubits; ++q)
        if (T2[q] > 2.0 * T1[q] + 1e-9)
          throw std::invalid_argument("T2 must not exceed 2*T1 on any qubit");
    }
    if (layer_duration < 0.0) throw std::invalid_argument("layer_duration must be >= 0");
    for (double p : {depolarizing_1q, depolarizing_2q})
      if (p < 0.0 || p > 1.0) throw std::invalid_argument("depolarizing probability outside [0,1]");
    if (enable_readout) {
      if (static_cast<int>(readout_confusion.size()) != n_qubits)
        throw std::invalid_argument("readout_confusion must have one matrix per qubit");
      for (const auto& M : readout_confusion) {
        if (M.rows() != 2 || M.cols() != 2)
          throw std::invalid_argument("confusion matrices must be 2x2");
        for (int r = 0; r < 2; ++r) {
          if (M(r, 0) < -1e-12 || M(r, 1) < -1e-12 ||
              std::abs(M(r, 0) + M(r, 1) - 1.0) > 1e-9)
            throw std::invalid_argument("confusion rows must be stochastic");
        }
      }
    }
  }
};

// Calibration snapshot of a 27-qubit device restricted to the four qubits the
// embedded problem uses, in the order the circuit addresses them.
inline CircuitNoiseModel mumbai_calibration() {
  CircuitNoiseModel m;
  m.n_qubits = 4;
  const double us = 1e3;  // microseconds to nanoseconds
  m.T1 = {159.87 * us, 172.71 * us, 95.68 * us, 71.79 * us};
  m.T2 = {161.23 * us, 36.53 * us, 69.95 * us, 123.99 * us};
  // Effective slot time fitted against the published dephasing-only TVD row;
  // the nominal per-layer figure used in runtime estimates stays at 25 ns.
  m.layer_duration = 850.0;
  m.depolarizing_1q = 3e-4;
  m.depolarizing_2q = 0.030;
  RealMatrix conf(2, 2);
  conf << 0.94, 0.06, 0.01, 0.99;
  m.readout_confusion.assign(4, conf);
  return m;
}

// Named variants: "none"/"mumbai-appendix-d" (calibration data, all channels
// off), "noisy-1" (dephasing only), "noisy-2" (thermal + depolarizing +
// readout), "noisy-3" (thermal relaxation only).
inline CircuitNoiseModel noise_preset(const std::string& name) {
  CircuitNoiseModel m = mumbai_calibration();
  if (name == "none" || name == "mumbai-appendix-d") {
    return m;
  } else if (name == "noisy-1") {
    m.enable_dephasing = true;
  } else if (name == "noisy-2") {
    m.enable_thermal = true;
    m.enable_depolarizing = true;
    m.enable_readout = true;
  } else if (name == "noisy-3") {
    m.enable_thermal = true;
  } else {
    throw std::invalid_argument("unknown noise preset: " + name);
  }
  m.validate();
  return m;
}

namespace detail {

// Embedded Kraus operators, one set per qubit, for the idle (decoherence)
// channels enabled in the model over one slot duration.
inline std::vector<std::vector<Matrix>> idle_channel_ops(const CircuitNoiseModel& m) {
  std::vector<std::vector<Matrix>> per_qubit;
  for (int q = 0; q < m.n_qubits; ++q) {
    std::vector<Matrix> ops;
    if (m.enable_thermal) {
      for (const auto& K : thermal_relaxation_channel(m.T1[q], m.T2[q], m.layer_duration).ops)
        ops.push_back(embed_operator(K, {q}, m.n_qubits));
    } else if (m.enable_dephasing) {
      for (const auto& K : phase_damping_channel(m.T2[q], m.layer_duration).ops)
        ops.push_back(embed_operator(K, {q}, m.n_qubits));
    }
    per_qubit.push_back(std::move(ops));
  }
  return per_qubit;
}

inline Matrix apply_ops(const Matrix& rho, const std::vector<Matrix>& ops) {
  if (ops.empty()) return rho;
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& K : ops) out += K * rho * K.adjoint();
  return out;
}

}  // namespace detail

// Conjugates the state through the circuit slot by slot. Adjacent one-qubit
// layers share a hardware slot; each two-qubit layer is its own slot. After
// each slot the enabled decoherence channels act on every qubit for
// layer_duration, and depolarizing errors act per gate on the qubits that
// gate touched. Readout confusion is not applied here.
inline Matrix simulate_noisy_circuit(const GateCircuit& circuit, const CircuitNoiseModel& noise,
                                     Matrix rho) {
  noise.validate();
  if (circuit.n_qubits != noise.n_qubits)
    throw std::invalid_argument("circuit and noise model qubit counts differ");
  const int dim = dense_dim(circuit.n_qubits);
  if (rho.rows() != dim || rho.cols() != dim)
    throw std::invalid_argument("initial state has wrong dimension");

  const auto idle = detail::idle_channel_ops(noise);
  std::vector<std::vector<Matrix>> depol1(noise.n_qubits);
  std::map<std::pair<int, int>, std::vector<Matrix>> depol2;
  if (noise.enable_depolarizing) {
    for (int q = 0; q < noise.n_qubits; ++q)
      for (const auto& K : depolarizing_channel_1q(noise.depolarizing_1q).ops)
        depol1[q].push_back(embed_operator(K, {q}, noise.n_qubits));
    const KrausChannel two = depolarizing_channel_2q(noise.depolarizing_2q);
    for (const auto& layer : circuit.layers)
      if (const auto* zz = std::get_if<ZzLayer>(&layer))
        for (const auto& [a, b, th] : zz->pairs) {
          (void)th;
          auto key = std::make_pair(a, b);
          if (depol2.count(key)) continue;
          for (const auto& K : two.ops) depol2[key].push_back(embed_operator(K, {a, b}, noise.n_qubits));
        }
  }

  const auto& layers = circuit.layers;
  std::size_t i = 0;
  while (i < layers.size()) {
    std::vector<int> gate_qubits;           // one entry per 1q gate in the slot
    std::vector<std::pair<int, int>> gate_pairs;
    Matrix U;
    if (std::holds_alternative<ZzLayer>(layers[i])) {
      U = layer_unitary(layers[i], circuit.n_qubits);
      for (const auto& [a, b, th] : std::get<ZzLayer>(layers[i]).pairs) {
        (void)th;
        gate_pairs.emplace_back(a, b);
      }
      ++i;
    } else {
      U = Matrix::Identity(dim, dim);
      while (i < layers.size() && !std::holds_alternative<ZzLayer>(layers[i])) {
        U = layer_unitary(layers[i], circuit.n_qubits) * U;
        const auto& angles = std::holds_alternative<RxLayer>(layers[i])
                                 ? std::get<RxLayer>(layers[i]).angles
                                 : std::get<RzLayer>(layers[i]).angles;
        for (int q = 0; q < circuit.n_qubits; ++q)
          if (angles[q] != 0.0) gate_qubits.push_back(q);
        ++i;
      }
    }

    rho = U * rho * U.adjoint();
    if (noise.enable_depolarizing) {
      for (int q : gate_qubits) rho = detail::apply_ops(rho, depol1[q]);
      for (auto [a, b] : gate_pairs) rho = detail::apply_ops(rho, depol2.at({a, b}));
    }
    for (int q = 0; q < noise.n_qubits; ++q) rho = detail::apply_ops(rho, idle[q]);
  }
  return rho;
}

// Measured distribution: diagonal of rho pushed through the per-qubit
// confusion matrices (tensor product), if readout error is enabled.
inline RealVector measure_distribution(const Matrix& rho, const CircuitNoiseModel& noise) {
  RealVector p = rho.diagonal().real();
  if (!noise.enable_readout) return p;
  noise.validate();
  const int dim = static_cast<int>(p.size());
  RealVector out = RealVector::Zero(dim);
  for (int x = 0; x < dim; ++x) {
    if (p[x] == 0.0) continue;
    for (int y = 0; y < dim; ++y) {
      double w = 1.0;
      for (int q = 0; q < noise.n_qubits; ++q) w *= noise.readout_confusion[q]((x >> q) & 1, (y >> q) & 1);
      out[y] += p[x] * w;
    }
  }
  return out;
}

inline nlohmann::json to_json(const CircuitNoiseModel& m) {
  nlohmann::json j;
  j["n_qubits"] = m.n_qubits;
  j["t1_ns"] = m.T1;
  j["t2_ns"] = m.T2;
  j["layer_duration_ns"] = m.layer_duration;
  j["depolarizing_1q"] = m.depolarizing_1q;
  j["depolarizing_2q"] = m.depolarizing_2q;
  std::vector<std::vector<std::vector<double>>> conf;
  for (const auto& M : m.readout_confusion)
    conf.push_back({{M(0, 0), M(0, 1)}, {M(1, 0), M(1, 1)}});
  j["readout_confusion"] = conf;
  std::vector<std::string> chans;
  if (m.enable_dephasing) chans.push_back("dephasing");
  if (m.enable_thermal) chans.push_back("thermal");
  if (m.enable_depolarizing) chans.push_back("depolarizing");
  if (m.enable_readout) chans.push_back("readout");
  j["channels"] = chans;
  return j;
}

inline CircuitNoiseModel noise_model_from_json(const nlohmann::json& j) {
  CircuitNoiseModel m;
  m.n_qubits = j.at("n_qubits").get<int>();
  if (j.contains("t1_ns")) m.T1 = j.at("t1_ns").get<std::vector<double>>();
  if (j.contains("t2_ns")) m.T2 = j.at("t2_ns").get<std::vector<double>>();
  if (j.contains("layer_duration_ns")) m.layer_duration = j.at("layer_duration_ns").get<double>();
  if (j.contains("depolarizing_1q")) m.depolarizing_1q = j.at("depolarizing_1q").get<double>();
  if (j.contains("depolarizing_2q")) m.depolarizing_2q = j.at("depolarizing_2q").get<double>();
  if (j.contains("readout_confusion")) {
    for (const auto& rows : j.at("readout_confusion")) {
      RealMatrix M(2, 2);
      M << rows[0][0].get<double>(), rows[0][1].get<double>(), rows[1][0].get<double>(),
          rows[1][1].get<double>();
      m.readout_confusion.push_back(M);
    }
  }
  if (j.contains("channels"))
    for (const auto& c : j.at("channels")) {
      const std::string name = c.get<std::string>();
      if (name == "dephasing") m.enable_dephasing = true;
      else if (name == "thermal") m.enable_thermal = true;
      else if (name == "depolarizing") m.enable_depolarizing = true;
      else if (name == "readout") m.enable_readout = true;
      else throw std::invalid_argument("unknown channel name: " + name);
    }
  m.validate();
  return m;
}

}  // namespace aemu
