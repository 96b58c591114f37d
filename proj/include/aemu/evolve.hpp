#pragma once

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "aemu/ising.hpp"
#include "aemu/schedule.hpp"
#include "aemu/types.hpp"

namespace aemu {

struct ConvergenceCriteria {
  double linf_tol = 1e-4;
  double l1_tol = 1e-6;
  int max_refinements = 20;
};

struct ConvergenceError : std::runtime_error {
  double last_linf, last_l1;
  ConvergenceError(double linf, double l1)
      : std::runtime_error("step-doubling did not converge (last linf=" +
                           std::to_string(linf) + ", l1=" + std::to_string(l1) + ")"),
        last_linf(linf),
        last_l1(l1) {}
};

struct EvolveResult {
  double JT = 0.0;
  Vector final_state;
  RealVector populations;
  int refinements = 0;
  int steps = 0;
  double last_linf = 0.0;
  double last_l1 = 0.0;
  std::vector<std::pair<double, Vector>> recorded;  // (s, state) at requested points
};

// exp(-i H dt) for Hermitian H, by eigendecomposition.
inline Matrix propagator_step(const Matrix& H_eff, double dt_eff = 1.0) {
  check_hermitian(H_eff, 1e-10);
  Eigen::SelfAdjointEigenSolver<Matrix> es(H_eff);
  Vector phases(H_eff.rows());
  for (int i = 0; i < H_eff.rows(); ++i)
    phases[i] = std::exp(Complex(0.0, -es.eigenvalues()[i] * dt_eff));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace detail {

// One uniform-step pass of the 4th-order Magnus integrator with two-point
// Gauss-Legendre nodes. Per step of width h starting at s0 the effective
// Hermitian generator (time-normalized, so the step unitary is exp(-iM)) is
//   M = T*(h/2)*(H(s1)+H(s2))
//     + (sqrt(3)*h^2*T^2/12)*(A(s1)B(s2)-A(s2)B(s1)) * i[H0,HI]
// with nodes s_{1,2} = s0 + (1/2 -+ sqrt(3)/6)h.
inline Vector magnus_pass(const Matrix& H0, const RealVector& hdiag,
                          const AnnealSchedule& sched, double T, int steps,
                          Vector psi,
                          const std::vector<double>* record_points = nullptr,
                          std::vector<std::pair<double, Vector>>* recorded = nullptr) {
  const int dim = static_cast<int>(psi.size());
  Matrix HI = Matrix::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) HI(b, b) = hdiag[b];
  const Matrix K = Complex(0.0, 1.0) * (H0 * HI - HI * H0);
  const double h = 1.0 / steps;
  const double off = std::sqrt(3.0) / 6.0 * h;
  std::size_t next_rec = 0;
  if (recorded) {
    recorded->clear();
    while (next_rec < record_points->size() && (*record_points)[next_rec] <= 0.0) {
      recorded->emplace_back(0.0, psi);
      ++next_rec;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  for (int k = 0; k < steps; ++k) {
    const double s0 = k * h;
    const double s1 = s0 + 0.5 * h - off;
    const double s2 = s0 + 0.5 * h + off;
    const double A1 = sched.A(s1), A2 = sched.A(s2);
    const double B1 = sched.B(s1), B2 = sched.B(s2);
    Matrix M = (T * h * 0.5) * ((A1 + A2) * H0 + (B1 + B2) * HI);
    M += (std::sqrt(3.0) * h * h * T * T / 12.0) * (A1 * B2 - A2 * B1) * K;
    es.compute(M);
    Vector phases(dim);
    for (int i = 0; i < dim; ++i)
      phases[i] = std::exp(Complex(0.0, -es.eigenvalues()[i]));
    psi = es.eigenvectors() * (phases.asDiagonal() * (es.eigenvectors().adjoint() * psi));
    if (recorded) {
      const double s_end = (k + 1) * h;
      while (next_rec < record_points->size() && (*record_points)[next_rec] <= s_end + 1e-15) {
        recorded->emplace_back(s_end, psi);
        ++next_rec;
      }
    }
  }
  return psi;
}

}  // namespace detail

// Ground truth for all comparisons: integrates the time-normalized
// Schrodinger equation i d/ds |psi> = JT * H(s) |psi> from the uniform
// superposition, doubling the step count until the elementwise L-inf and L1
// distances between density matrices at successive resolutions drop below
// the tolerances.
inline EvolveResult evolve_exact(const IsingModel& model, const AnnealSchedule& sched,
                                 double JT, ConvergenceCriteria crit = {},
                                 const std::vector<double>& record_points = {}) {
  if (JT < 0.0) throw std::invalid_argument("JT must be >= 0");
  model.validate();
  std::vector<double> rec_sorted = record_points;
  std::sort(rec_sorted.begin(), rec_sorted.end());
  const int dim = dense_dim(model.n_qubits);
  const Matrix H0 = build_driver_hamiltonian(model.n_qubits);
  const RealVector hdiag = ising_diagonal(model);
  const Vector psi0 = Vector::Constant(dim, Complex(1.0 / std::sqrt(double(dim)), 0.0));

  EvolveResult out;
  out.JT = JT;
  int steps = 64;
  Vector psi = detail::magnus_pass(H0, hdiag, sched, JT, steps, psi0,
                                   &rec_sorted, &out.recorded);
  Matrix rho = psi * psi.adjoint();
  for (int r = 1; r <= crit.max_refinements; ++r) {
    steps *= 2;
    Vector psi2 = detail::magnus_pass(H0, hdiag, sched, JT, steps, psi0,
                                      &rec_sorted, &out.recorded);
    Matrix rho2 = psi2 * psi2.adjoint();
    RealMatrix diff = (rho2 - rho).cwiseAbs().real();
    out.last_linf = diff.maxCoeff();
    out.last_l1 = diff.sum();
    out.refinements = r;
    psi = std::move(psi2);
    rho = std::move(rho2);
    if (out.last_linf < crit.linf_tol && out.last_l1 < crit.l1_tol) {
      out.final_state = psi;
      out.populations = psi.cwiseAbs2();
      out.steps = steps;
      return out;
    }
  }
  throw ConvergenceError(out.last_linf, out.last_l1);
}

inline nlohmann::json to_json(const EvolveResult& r) {
  nlohmann::json j;
  j["JT"] = r.JT;
  auto& fs = j["final_state"] = nlohmann::json::array();
  for (int i = 0; i < r.final_state.size(); ++i)
    fs.push_back({r.final_state[i].real(), r.final_state[i].imag()});
  auto& pop = j["populations"] = nlohmann::json::object();
  for (int i = 0; i < r.populations.size(); ++i)
    pop[std::to_string(i)] = r.populations[i];
  j["refinements"] = r.refinements;
  j["steps"] = r.steps;
  return j;
}

}  // namespace aemu
