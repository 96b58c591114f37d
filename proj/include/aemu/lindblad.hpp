#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "aemu/ising.hpp"
#include "aemu/metrics.hpp"
#include "aemu/schedule.hpp"
#include "aemu/types.hpp"

namespace aemu {

// Ohmic bath with exponential cutoff. Temperature is given in millikelvin;
// the conversion uses the reference point 15 mK = 1.9643 rad/ns.
struct OhmicBath {
  double temperature_mK = 15.0;
  double omega_c = 8.0 * kPi;  // rad/ns
  double eta_g2 = 0.0;         // dimensionless coupling (eta * g^2)

  double temperature_energy() const { return 1.9643 * temperature_mK / 15.0; }
  double beta() const { return 1.0 / temperature_energy(); }

  void validate() const {
    if (temperature_mK <= 0.0 || omega_c <= 0.0 || eta_g2 < 0.0)
      throw std::invalid_argument("bath parameters must be positive");
  }
};

// Ohmic spectral rate gamma(omega) = 2*pi*eta*g^2 * omega*e^{-|omega|/omega_c}
// / (1 - e^{-beta*omega}); the omega -> 0 limit is 2*pi*eta*g^2 / beta.
inline double gamma_ohmic(double omega, const OhmicBath& bath) {
  bath.validate();
  const double b = bath.beta();
  if (std::abs(omega) < 1e-14) return 2.0 * kPi * bath.eta_g2 / b;
  return 2.0 * kPi * bath.eta_g2 * omega * std::exp(-std::abs(omega) / bath.omega_c) /
         (1.0 - std::exp(-b * omega));
}

// Chooses eta*g^2 so that a single qubit with energy gap delta_E dephases in
// `target_dephasing` ns: T = 2 / (gamma(dE) * (1 + e^{-beta dE})). The rate is
// linear in the coupling, so this is a one-step solve.
inline double calibrate_coupling(double target_dephasing, double delta_E, OhmicBath bath) {
  if (target_dephasing <= 0.0) throw std::invalid_argument("dephasing time must be > 0");
  bath.eta_g2 = 1.0;
  const double rate_per_coupling = gamma_ohmic(delta_E, bath);
  const double needed = 2.0 / (target_dephasing * (1.0 + std::exp(-bath.beta() * delta_E)));
  return needed / rate_per_coupling;
}

inline OhmicBath bath_preset(const std::string& name) {
  OhmicBath b;
  if (name == "ame-15mK") {
    b.temperature_mK = 15.0;
  } else if (name == "ame-2.38mK") {
    b.temperature_mK = 2.38;
  } else {
    throw std::invalid_argument("unknown bath preset: " + name);
  }
  b.eta_g2 = calibrate_coupling(100.0, 2.0, b);
  return b;
}

// Dephasing rate for the semiclassical Lindblad model; 1/(2*gamma) is the
// single-qubit dephasing time, so "scl-100ns" means gamma = 5e-3 rad/ns.
inline double scl_gamma_preset(const std::string& name) {
  if (name == "scl-100ns") return 5e-3;
  throw std::invalid_argument("unknown dephasing preset: " + name);
}

struct LindbladOptions {
  double trace_distance_tol = 1e-6;
  int initial_steps = 64;
  int max_refinements = 20;
  std::vector<double> record_points;  // s values at which to keep rho
};

struct LindbladResult {
  double JT = 0.0;
  Matrix rho;
  RealVector populations;
  int steps = 0;
  int refinements = 0;
  double last_trace_distance = 0.0;
  bool binning_ambiguity = false;  // bins merged distinct Bohr frequencies
  std::vector<std::pair<double, Matrix>> recorded;  // (s, rho) at requested points
};

namespace detail {

template <typename Rhs>
Matrix rk4_density_pass(const Matrix& rho0, int n_steps, const Rhs& rhs,
                        const std::vector<double>* record_points = nullptr,
                        std::vector<std::pair<double, Matrix>>* recorded = nullptr) {
  Matrix rho = rho0;
  const double h = 1.0 / n_steps;
  std::size_t next_rec = 0;
  if (recorded) {
    recorded->clear();
    while (next_rec < record_points->size() && (*record_points)[next_rec] <= 0.0) {
      recorded->emplace_back(0.0, rho);
      ++next_rec;
    }
  }
  for (int k = 0; k < n_steps; ++k) {
    const double s = k * h;
    Matrix k1 = rhs(s, rho);
    Matrix k2 = rhs(s + 0.5 * h, rho + (0.5 * h) * k1);
    Matrix k3 = rhs(s + 0.5 * h, rho + (0.5 * h) * k2);
    Matrix k4 = rhs(s + h, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (recorded) {
      const double s_end = (k + 1) * h;
      while (next_rec < record_points->size() && (*record_points)[next_rec] <= s_end + 1e-15) {
        recorded->emplace_back(s_end, rho);
        ++next_rec;
      }
    }
  }
  return rho;
}

// A trace-one density matrix has entries bounded by 1; anything much larger
// means the fixed-step integrator left its stability region on this pass.
inline bool bounded_pass(const Matrix& rho) {
  return rho.allFinite() && rho.cwiseAbs().maxCoeff() < 10.0;
}

template <typename Rhs>
void converge_density(LindbladResult& out, const Matrix& rho0, const LindbladOptions& opts,
                      const Rhs& rhs) {
  std::vector<double> rec_sorted = opts.record_points;
  std::sort(rec_sorted.begin(), rec_sorted.end());
  int n = opts.initial_steps;
  Matrix prev = rk4_density_pass(rho0, n, rhs);
  bool prev_ok = bounded_pass(prev);
  for (int r = 0; r < opts.max_refinements; ++r) {
    n *= 2;
    Matrix cur = rk4_density_pass(rho0, n, rhs, rec_sorted.empty() ? nullptr : &rec_sorted,
                                  rec_sorted.empty() ? nullptr : &out.recorded);
    const bool cur_ok = bounded_pass(cur);
    if (prev_ok && cur_ok) {
      const double td = trace_distance(cur, prev);
      if (td < opts.trace_distance_tol) {
        out.rho = cur;
        out.steps = n;
        out.refinements = r + 1;
        out.last_trace_distance = td;
        out.populations = cur.diagonal().real();
        return;
      }
    }
    prev = std::move(cur);
    prev_ok = cur_ok;
  }
  throw std::runtime_error("master-equation integration did not converge");
}

inline Matrix uniform_superposition_density(int dim) {
  Matrix rho = Matrix::Constant(dim, dim, Complex(1.0 / dim, 0.0));
  return rho;
}

// Classical RK4 is only conditionally stable: over one normalized step the
// fastest coherence rotates by about JT * (E_max - E_min) / n_steps radians,
// and beyond roughly 2.8 rad/step the pass diverges instead of just losing
// accuracy. Start the step-doubling ladder above that threshold.
inline int stable_initial_steps(int requested, double JT, const AnnealSchedule& sched,
                                double driver_norm, double ising_norm) {
  double peak_a = 1.0;
  double peak_b = 1.0;
  if (sched.kind == AnnealSchedule::Kind::tabulated) {
    peak_a = 0.0;
    peak_b = 0.0;
    for (const auto& k : sched.knots) {
      peak_a = std::max(peak_a, std::abs(k[1]));
      peak_b = std::max(peak_b, std::abs(k[2]));
    }
  }
  const double spread = 2.0 * (peak_a * driver_norm + peak_b * ising_norm);
  int n = std::max(requested, 1);
  while (static_cast<double>(n) * 2.0 < JT * spread && n < (1 << 26)) n *= 2;
  return n;
}

}  // namespace detail

// Dephasing in the computational basis at uniform rate gamma on every qubit:
// drho/dt = -i[H,rho] + gamma * sum_i (Z_i rho Z_i - rho). The dissipator is
// an elementwise mask, applied here in normalized time s = t/T.
inline LindbladResult evolve_scl(const IsingModel& model, const AnnealSchedule& sched, double JT,
                                 double gamma, const LindbladOptions& opts = {}) {
  if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
  model.validate();
  const int n = model.n_qubits;
  const int dim = dense_dim(n);
  const Matrix H0 = build_driver_hamiltonian(n);
  const RealVector diag = ising_diagonal(model);

  RealMatrix mask(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      int agree = 0;
      for (int q = 0; q < n; ++q) agree += spin_of_bit(a, q) * spin_of_bit(b, q);
      mask(a, b) = static_cast<double>(agree - n);
    }

  auto rhs = [&](double s, const Matrix& rho) -> Matrix {
    Matrix H = sched.A(s) * H0;
    H += (sched.B(s) * diag).asDiagonal().toDenseMatrix().cast<Complex>();
    Matrix out = Complex(0, -1) * (H * rho - rho * H);
    out += gamma * mask.cast<Complex>().cwiseProduct(rho);
    return JT * out;
  };

  LindbladResult res;
  res.JT = JT;
  LindbladOptions run = opts;
  run.initial_steps = detail::stable_initial_steps(opts.initial_steps, JT, sched,
                                                   static_cast<double>(n),
                                                   diag.cwiseAbs().maxCoeff());
  detail::converge_density(res, detail::uniform_superposition_density(dim), run, rhs);
  return res;
}

namespace detail {

struct BohrBin {
  double omega = 0.0;
  std::vector<std::pair<int, int>> pairs;  // (a,b) with E[b]-E[a] in this bin
  double span = 0.0;
};

// Groups all ordered eigenvalue differences into bins whose members lie
// within `tol` of each other (sorted-gap clustering).
inline std::vector<BohrBin> bohr_bins(const RealVector& E, double tol) {
  const int dim = static_cast<int>(E.size());
  std::vector<std::tuple<double, int, int>> freqs;
  freqs.reserve(dim * dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) freqs.emplace_back(E[b] - E[a], a, b);
  std::sort(freqs.begin(), freqs.end(),
            [](const auto& x, const auto& y) { return std::get<0>(x) < std::get<0>(y); });

  std::vector<BohrBin> bins;
  double last = 0.0;
  for (const auto& [w, a, b] : freqs) {
    if (bins.empty() || w - last > tol) bins.push_back({w, {}, 0.0});
    bins.back().span = w - bins.back().omega;
    bins.back().pairs.emplace_back(a, b);
    last = w;
  }
  return bins;
}

}  // namespace detail

// Adiabatic master equation with independent Ohmic baths coupled through
// sigma-z on each qubit. At every integrator stage the instantaneous
// Hamiltonian is diagonalized, jump operators are assembled per Bohr
// frequency (binned with tolerance 1e-9 rad/ns), and the standard Lindblad
// dissipator with rates gamma(omega) is applied in the eigenbasis.
inline LindbladResult evolve_ame(const IsingModel& model, const AnnealSchedule& sched, double JT,
                                 const OhmicBath& bath, const LindbladOptions& opts = {}) {
  bath.validate();
  model.validate();
  const int n = model.n_qubits;
  const int dim = dense_dim(n);
  const Matrix H0 = build_driver_hamiltonian(n);
  const RealVector diag = ising_diagonal(model);
  const double bin_tol = 1e-9;

  bool ambiguity = false;

  auto rhs = [&](double s, const Matrix& rho) -> Matrix {
    Matrix H = sched.A(s) * H0;
    H += (sched.B(s) * diag).asDiagonal().toDenseMatrix().cast<Complex>();
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    const RealVector& E = es.eigenvalues();
    const Matrix& V = es.eigenvectors();

    Matrix rho_e = V.adjoint() * rho * V;
    std::vector<Matrix> A_e(n);  // sigma-z of each qubit in the eigenbasis
    for (int q = 0; q < n; ++q) {
      Vector d(dim);
      for (int b = 0; b < dim; ++b) d[b] = static_cast<double>(spin_of_bit(b, q));
      A_e[q] = V.adjoint() * d.asDiagonal() * V;
    }

    auto bins = detail::bohr_bins(E, bin_tol);
    Matrix gain = Matrix::Zero(dim, dim);  // sum gamma L rho L^dag
    Matrix P = Matrix::Zero(dim, dim);     // sum gamma L^dag L
    for (const auto& bin : bins) {
      if (bin.span > 1e-12) ambiguity = true;
      const double rate = gamma_ohmic(bin.omega, bath);
      if (rate <= 0.0) continue;
      for (int q = 0; q < n; ++q) {
        // entries of L_{omega,q}: L(a,b) = A_e[q](a,b) for pairs in the bin
        std::vector<std::tuple<int, int, Complex>> ent;
        for (const auto& [a, b] : bin.pairs) {
          const Complex v = A_e[q](a, b);
          if (std::norm(v) > 1e-28) ent.emplace_back(a, b, v);
        }
        for (const auto& [a, b, v] : ent)
          for (const auto& [c, d2, w] : ent) {
            gain(a, c) += rate * v * rho_e(b, d2) * std::conj(w);
            if (a == c) P(b, d2) += rate * std::conj(v) * w;
          }
      }
    }
    Matrix diss = gain - 0.5 * (P * rho_e + rho_e * P);
    Matrix out = Complex(0, -1) * (H * rho - rho * H);
    out += V * diss * V.adjoint();
    return JT * out;
  };

  LindbladResult res;
  res.JT = JT;
  LindbladOptions run = opts;
  run.initial_steps = detail::stable_initial_steps(opts.initial_steps, JT, sched,
                                                   static_cast<double>(n),
                                                   diag.cwiseAbs().maxCoeff());
  detail::converge_density(res, detail::uniform_superposition_density(dim), run, rhs);
  res.binning_ambiguity = ambiguity;
  return res;
}

// Gibbs state e^{-beta H} / Z of a Hermitian H.
inline Matrix gibbs_state(const Matrix& H, double beta) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(H);
  RealVector w = (-beta * (es.eigenvalues().array() - es.eigenvalues().minCoeff())).exp();
  w /= w.sum();
  return es.eigenvectors() * w.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

inline nlohmann::json to_json(const OhmicBath& b) {
  return {{"temperature_mK", b.temperature_mK}, {"omega_c", b.omega_c}, {"eta_g2", b.eta_g2}};
}

inline OhmicBath bath_from_json(const nlohmann::json& j) {
  OhmicBath b;
  b.temperature_mK = j.at("temperature_mK").get<double>();
  if (j.contains("omega_c")) b.omega_c = j.at("omega_c").get<double>();
  if (j.contains("eta_g2")) b.eta_g2 = j.at("eta_g2").get<double>();
  b.validate();
  return b;
}

}  // namespace aemu
