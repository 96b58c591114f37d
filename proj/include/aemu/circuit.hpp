#pragma once

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "aemu/ising.hpp"
#include "aemu/segments.hpp"
#include "aemu/types.hpp"

namespace aemu {

// Gate layers. Angle convention throughout: R_a(theta) = exp(-i theta sigma^a / 2)
// and ZZ(theta) = exp(-i theta sigma^z sigma^z / 2).
struct RxLayer {
  std::vector<double> angles;  // one per qubit; 0 = no gate
};
struct RzLayer {
  std::vector<double> angles;
};
struct ZzLayer {
  std::vector<std::tuple<int, int, double>> pairs;  // vertex-disjoint (i, j, theta)
};
using GateLayer = std::variant<RxLayer, RzLayer, ZzLayer>;

struct GateCircuit {
  int n_qubits = 0;
  std::vector<GateLayer> layers;
};

struct TrotterPlan {
  int n_m = 1;
  int n_t = 1;
  double JT = 0.0;
};

// Greedy edge coloring, highest-degree endpoints first. Returns groups of
// vertex-disjoint edges; group count is the chromatic index chi_1 for all
// graphs we care about (exact for the star-like instances used here).
inline std::vector<std::vector<std::pair<int, int>>> color_edges(const IsingModel& m) {
  m.validate();
  std::vector<int> degree(m.n_qubits, 0);
  for (const auto& [i, j, J] : m.couplings) {
    (void)J;
    ++degree[i];
    ++degree[j];
  }
  std::vector<std::pair<int, int>> edges;
  edges.reserve(m.couplings.size());
  for (const auto& [i, j, J] : m.couplings) {
    (void)J;
    edges.emplace_back(i, j);
  }
  std::stable_sort(edges.begin(), edges.end(), [&](const auto& a, const auto& b) {
    return std::max(degree[a.first], degree[a.second]) >
           std::max(degree[b.first], degree[b.second]);
  });
  std::vector<std::vector<std::pair<int, int>>> groups;
  for (const auto& e : edges) {
    bool placed = false;
    for (auto& g : groups) {
      bool clash = false;
      for (const auto& f : g)
        if (f.first == e.first || f.first == e.second || f.second == e.first ||
            f.second == e.second) {
          clash = true;
          break;
        }
      if (!clash) {
        g.push_back(e);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({e});
  }
  return groups;
}

inline int chromatic_index(const IsingModel& m) {
  return static_cast<int>(color_edges(m).size());
}

// Emits the layered circuit for n_m averaged segments each split into n_t
// symmetric Trotter steps. Driver halves sit on the outside of each step and
// adjacent halves (within and across segments) merge into single RX layers,
// so only the first and last RX layers carry half-step angles.
inline GateCircuit build_circuit(const TrotterPlan& plan, const IsingModel& m,
                                 const AnnealSchedule& sched) {
  if (plan.n_m < 1 || plan.n_t < 1) throw std::invalid_argument("plan steps must be >= 1");
  m.validate();
  const double T = plan.JT;
  const auto segs = magnus_segments(sched, plan.n_m);
  const auto groups = color_edges(m);
  const bool any_field =
      std::any_of(m.fields.begin(), m.fields.end(), [](const auto& f) { return f.second != 0.0; });

  GateCircuit c;
  c.n_qubits = m.n_qubits;
  // Half-step driver angle for segment k: the step evolves exp(+i c sigma^x)
  // per qubit with c = T*a_k/(2*n_t), i.e. R_x(-T*a_k/n_t).
  auto half_angle = [&](int seg_idx) { return -T * segs[seg_idx].a / plan.n_t; };
  auto push_rx = [&](double theta) {
    RxLayer rx;
    rx.angles.assign(m.n_qubits, theta);
    c.layers.emplace_back(std::move(rx));
  };

  double pending = 0.0;  // accumulated RX angle awaiting emission
  for (int k = 0; k < plan.n_m; ++k) {
    const double bcoef = 2.0 * T * segs[k].b / plan.n_t;
    for (int t = 0; t < plan.n_t; ++t) {
      push_rx(pending + half_angle(k));
      if (any_field) {
        RzLayer rz;
        rz.angles.assign(m.n_qubits, 0.0);
        for (const auto& [i, h] : m.fields) rz.angles[i] += bcoef * h;
        c.layers.emplace_back(std::move(rz));
      }
      for (const auto& g : groups) {
        ZzLayer zz;
        for (const auto& [i, j] : g) {
          double J = 0.0;
          for (const auto& [a, b, Jab] : m.couplings)
            if ((a == i && b == j) || (a == j && b == i)) J += Jab;
          zz.pairs.emplace_back(i, j, bcoef * J);
        }
        c.layers.emplace_back(std::move(zz));
      }
      pending = half_angle(k);
    }
  }
  push_rx(pending);
  return c;
}

inline Matrix layer_unitary(const GateLayer& layer, int n_qubits) {
  const int dim = dense_dim(n_qubits);
  if (const auto* rx = std::get_if<RxLayer>(&layer)) {
    Matrix U = Matrix::Identity(dim, dim);
    for (int q = 0; q < n_qubits; ++q) {
      double th = rx->angles.at(q);
      if (th == 0.0) continue;
      Complex cth(std::cos(0.5 * th), 0.0), sth(0.0, -std::sin(0.5 * th));
      Matrix Uq = Matrix::Zero(dim, dim);
      for (int b = 0; b < dim; ++b) {
        Uq(b, b) = cth;
        Uq(b, b ^ (1 << q)) = sth;
      }
      U = Uq * U;
    }
    return U;
  }
  if (const auto* rz = std::get_if<RzLayer>(&layer)) {
    Vector d = Vector::Ones(dim);
    for (int b = 0; b < dim; ++b) {
      double phase = 0.0;
      for (int q = 0; q < n_qubits; ++q) phase += -0.5 * rz->angles.at(q) * spin_of_bit(b, q);
      d[b] = std::exp(Complex(0.0, phase));
    }
    return d.asDiagonal();
  }
  const auto& zz = std::get<ZzLayer>(layer);
  Vector d = Vector::Ones(dim);
  for (int b = 0; b < dim; ++b) {
    double phase = 0.0;
    for (const auto& [i, j, th] : zz.pairs)
      phase += -0.5 * th * spin_of_bit(b, i) * spin_of_bit(b, j);
    d[b] = std::exp(Complex(0.0, phase));
  }
  return d.asDiagonal();
}

inline Matrix circuit_unitary(const GateCircuit& c) {
  const int dim = dense_dim(c.n_qubits);
  Matrix U = Matrix::Identity(dim, dim);
  for (const auto& layer : c.layers) U = layer_unitary(layer, c.n_qubits) * U;
  return U;
}

// Applies the circuit to a statevector without forming any dense unitary;
// O(2^n) per gate, which keeps large-step searches cheap.
inline Vector apply_circuit(const GateCircuit& c, Vector psi) {
  const int dim = dense_dim(c.n_qubits);
  if (psi.size() != dim) throw std::invalid_argument("state dimension mismatch");
  for (const auto& layer : c.layers) {
    if (const auto* rx = std::get_if<RxLayer>(&layer)) {
      for (int q = 0; q < c.n_qubits; ++q) {
        const double th = rx->angles.at(q);
        if (th == 0.0) continue;
        const double cth = std::cos(0.5 * th), sth = std::sin(0.5 * th);
        const int bit = 1 << q;
        for (int b = 0; b < dim; ++b) {
          if (b & bit) continue;
          const Complex lo = psi[b], hi = psi[b | bit];
          psi[b] = cth * lo - Complex(0, sth) * hi;
          psi[b | bit] = cth * hi - Complex(0, sth) * lo;
        }
      }
    } else if (const auto* rz = std::get_if<RzLayer>(&layer)) {
      for (int b = 0; b < dim; ++b) {
        double phase = 0.0;
        for (int q = 0; q < c.n_qubits; ++q) phase += -0.5 * rz->angles.at(q) * spin_of_bit(b, q);
        psi[b] *= std::exp(Complex(0.0, phase));
      }
    } else {
      const auto& zz = std::get<ZzLayer>(layer);
      for (int b = 0; b < dim; ++b) {
        double phase = 0.0;
        for (const auto& [i, j, th] : zz.pairs)
          phase += -0.5 * th * spin_of_bit(b, i) * spin_of_bit(b, j);
        psi[b] *= std::exp(Complex(0.0, phase));
      }
    }
  }
  return psi;
}

inline nlohmann::json to_json(const GateCircuit& c) {
  nlohmann::json j;
  j["n_qubits"] = c.n_qubits;
  auto& jl = j["layers"] = nlohmann::json::array();
  for (const auto& layer : c.layers) {
    nlohmann::json e;
    if (const auto* rx = std::get_if<RxLayer>(&layer)) {
      e["type"] = "rx";
      e["angles"] = rx->angles;
    } else if (const auto* rz = std::get_if<RzLayer>(&layer)) {
      e["type"] = "rz";
      e["angles"] = rz->angles;
    } else {
      const auto& zz = std::get<ZzLayer>(layer);
      e["type"] = "zz";
      auto& p = e["pairs"] = nlohmann::json::array();
      for (const auto& [i, jq, th] : zz.pairs) p.push_back({i, jq, th});
    }
    jl.push_back(std::move(e));
  }
  return j;
}

inline GateCircuit circuit_from_json(const nlohmann::json& j) {
  GateCircuit c;
  c.n_qubits = j.at("n_qubits").get<int>();
  for (const auto& e : j.at("layers")) {
    std::string type = e.at("type").get<std::string>();
    if (type == "rx") {
      RxLayer rx;
      rx.angles = e.at("angles").get<std::vector<double>>();
      c.layers.emplace_back(std::move(rx));
    } else if (type == "rz") {
      RzLayer rz;
      rz.angles = e.at("angles").get<std::vector<double>>();
      c.layers.emplace_back(std::move(rz));
    } else if (type == "zz") {
      ZzLayer zz;
      for (const auto& p : e.at("pairs"))
        zz.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>(), p.at(2).get<double>());
      c.layers.emplace_back(std::move(zz));
    } else {
      throw std::invalid_argument("unknown layer type: " + type);
    }
  }
  return c;
}

// Layer count after fusing adjacent single-qubit layers into one hardware
// slot (an RX and RZ between the same ZZ blocks execute together, and the
// final half-step rotation is absorbed into the preceding slot's schedule).
// For the star topology this equals n_m*n_t*(chi_1 + 1) + 1.
inline int hardware_layer_count(const GateCircuit& c) {
  int slots = 0;
  bool prev_single = false;
  for (const auto& layer : c.layers) {
    bool single = !std::holds_alternative<ZzLayer>(layer);
    if (!(single && prev_single)) ++slots;
    prev_single = single;
  }
  return slots;
}

}  // namespace aemu
