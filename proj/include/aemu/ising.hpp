#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "aemu/schedule.hpp"
#include "aemu/types.hpp"

namespace aemu {

// Transverse-field Ising problem instance: target couplings J_ij and local
// fields h_i, annealed from the uniform-superposition driver. Energies are
// in rad/ns (hbar = 1).
struct IsingModel {
  int n_qubits = 0;
  std::vector<std::tuple<int, int, double>> couplings;  // (i, j, J_ij), i != j
  std::vector<std::pair<int, double>> fields;           // (i, h_i)

  void validate() const {
    dense_dim(n_qubits);
    for (const auto& [i, j, J] : couplings) {
      (void)J;
      if (i < 0 || i >= n_qubits || j < 0 || j >= n_qubits || i == j)
        throw std::out_of_range("coupling index out of range");
    }
    for (const auto& [i, h] : fields) {
      (void)h;
      if (i < 0 || i >= n_qubits) throw std::out_of_range("field index out of range");
    }
  }
};

// The 4-spin signature instance: a star around qubit 1 with one
// ferromagnetic arm flipped, plus biasing fields. Six degenerate ground
// states at energy -3.
inline IsingModel t4_model() {
  IsingModel m;
  m.n_qubits = 4;
  m.couplings = {{0, 1, -1.0}, {1, 2, 1.0}, {1, 3, -1.0}};
  m.fields = {{0, -1.0}, {1, 1.0}, {2, -1.0}, {3, -1.0}};
  return m;
}

// "uudu" -> basis index. Strings follow the usual computational-basis order:
// the leftmost character is the highest-numbered qubit, so "uudu" on four
// qubits puts qubit 1 in the down state. 'u' = spin up = bit 0.
inline int state_index(std::string_view kets) {
  int n = static_cast<int>(kets.size());
  int idx = 0;
  for (int pos = 0; pos < n; ++pos) {
    char c = kets[pos];
    if (c == 'd' || c == 'D' || c == '1')
      idx |= 1 << (n - 1 - pos);
    else if (c != 'u' && c != 'U' && c != '0')
      throw std::invalid_argument("ket string may contain only u/d");
  }
  return idx;
}

inline std::string state_label(int basis_index, int n_qubits) {
  std::string s(n_qubits, 'u');
  for (int q = 0; q < n_qubits; ++q)
    if ((basis_index >> q) & 1) s[n_qubits - 1 - q] = 'd';
  return s;
}

inline RealVector ising_diagonal(const IsingModel& m) {
  m.validate();
  int dim = dense_dim(m.n_qubits);
  RealVector diag = RealVector::Zero(dim);
  for (int b = 0; b < dim; ++b) {
    double e = 0.0;
    for (const auto& [i, j, J] : m.couplings) e += J * spin_of_bit(b, i) * spin_of_bit(b, j);
    for (const auto& [i, h] : m.fields) e += h * spin_of_bit(b, i);
    diag[b] = e;
  }
  return diag;
}

inline Matrix build_ising_hamiltonian(const IsingModel& m) {
  RealVector diag = ising_diagonal(m);
  Matrix H = Matrix::Zero(diag.size(), diag.size());
  for (int b = 0; b < diag.size(); ++b) H(b, b) = diag[b];
  return H;
}

// Driver -sum_i sigma^x_i; ground state is the uniform superposition with
// eigenvalue -n.
inline Matrix build_driver_hamiltonian(int n_qubits) {
  int dim = dense_dim(n_qubits);
  Matrix H = Matrix::Zero(dim, dim);
  for (int b = 0; b < dim; ++b)
    for (int q = 0; q < n_qubits; ++q) H(b, b ^ (1 << q)) += -1.0;
  return H;
}

inline Matrix hamiltonian_at(double s, const AnnealSchedule& sched, const IsingModel& m) {
  return sched.A(s) * build_driver_hamiltonian(m.n_qubits) + sched.B(s) * build_ising_hamiltonian(m);
}

inline double ground_energy(const IsingModel& m) {
  return ising_diagonal(m).minCoeff();
}

inline std::vector<int> ground_state_indices(const IsingModel& m, double tol = 1e-12) {
  RealVector diag = ising_diagonal(m);
  double e0 = diag.minCoeff();
  std::vector<int> out;
  for (int b = 0; b < diag.size(); ++b)
    if (diag[b] <= e0 + tol) out.push_back(b);
  return out;
}

inline nlohmann::json to_json(const IsingModel& m, const AnnealSchedule& sched = AnnealSchedule::linear()) {
  nlohmann::json j;
  j["n_qubits"] = m.n_qubits;
  auto& jc = j["couplings"] = nlohmann::json::array();
  for (const auto& [a, b, J] : m.couplings) jc.push_back({a, b, J});
  auto& jf = j["fields"] = nlohmann::json::array();
  for (const auto& [a, h] : m.fields) jf.push_back({a, h});
  j["schedule"] = sched.name();
  return j;
}

inline IsingModel model_from_json(const nlohmann::json& j) {
  IsingModel m;
  m.n_qubits = j.at("n_qubits").get<int>();
  if (j.contains("couplings"))
    for (const auto& c : j.at("couplings"))
      m.couplings.emplace_back(c.at(0).get<int>(), c.at(1).get<int>(), c.at(2).get<double>());
  if (j.contains("fields"))
    for (const auto& f : j.at("fields"))
      m.fields.emplace_back(f.at(0).get<int>(), f.at(1).get<double>());
  m.validate();
  return m;
}

// Named model presets for the CLI ("t4" is the only built-in instance).
inline IsingModel model_preset(std::string_view name) {
  if (name == "t4") return t4_model();
  throw std::invalid_argument("unknown model preset: " + std::string(name));
}

}  // namespace aemu
