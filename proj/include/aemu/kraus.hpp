#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "aemu/types.hpp"

namespace aemu {

// A CPTP channel given by Kraus operators on one or two qubits.
struct KrausChannel {
  std::vector<Matrix> ops;

  int dim() const { return ops.empty() ? 0 : static_cast<int>(ops.front().rows()); }

  // max |sum K^dag K - I| entry; 0 for an exactly trace-preserving set
  double completeness_defect() const {
    if (ops.empty()) return 1.0;
    Matrix acc = Matrix::Zero(dim(), dim());
    for (const auto& K : ops) acc += K.adjoint() * K;
    return (acc - Matrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
  }

  // Choi matrix sum_i vec(K_i) vec(K_i)^dag; PSD iff the map is CP.
  Matrix choi() const {
    const int d = dim();
    Matrix C = Matrix::Zero(d * d, d * d);
    for (const auto& K : ops) {
      Vector v(d * d);
      for (int col = 0; col < d; ++col)
        for (int row = 0; row < d; ++row) v[col * d + row] = K(row, col);
      C += v * v.adjoint();
    }
    return C;
  }

  double choi_min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(choi());
    return es.eigenvalues().minCoeff();
  }
};

// Pure dephasing: off-diagonals decay by e^{-dt/T2_pure}.
inline KrausChannel phase_damping_channel(double T2_pure, double dt) {
  if (T2_pure <= 0.0) throw std::invalid_argument("T2 must be > 0");
  if (dt < 0.0) throw std::invalid_argument("dt must be >= 0");
  const double lambda = 1.0 - std::exp(-2.0 * dt / T2_pure);
  KrausChannel ch;
  Matrix K0 = Matrix::Zero(2, 2), K1 = Matrix::Zero(2, 2);
  K0(0, 0) = 1.0;
  K0(1, 1) = std::sqrt(1.0 - lambda);
  K1(1, 1) = std::sqrt(lambda);
  ch.ops = {K0, K1};
  return ch;
}

// Amplitude damping toward |0> with p = 1 - e^{-dt/T1}, composed with just
// enough extra pure dephasing that total off-diagonal decay is e^{-dt/T2}.
inline KrausChannel thermal_relaxation_channel(double T1, double T2, double dt) {
  if (T1 <= 0.0 || T2 <= 0.0) throw std::invalid_argument("T1,T2 must be > 0");
  if (T2 > 2.0 * T1 + 1e-12) throw std::invalid_argument("thermal relaxation requires T2 <= 2*T1");
  if (dt < 0.0) throw std::invalid_argument("dt must be >= 0");
  const double p = 1.0 - std::exp(-dt / T1);
  // residual dephasing beyond what amplitude damping already causes
  const double rate_phi = 1.0 / T2 - 0.5 / T1;
  const double f = std::exp(-dt * std::max(0.0, rate_phi));
  const double lambda_phi = 1.0 - f * f;

  Matrix A0 = Matrix::Zero(2, 2), A1 = Matrix::Zero(2, 2);
  A0(0, 0) = 1.0;
  A0(1, 1) = std::sqrt(1.0 - p);
  A1(0, 1) = std::sqrt(p);
  Matrix P0 = Matrix::Zero(2, 2), P1 = Matrix::Zero(2, 2);
  P0(0, 0) = 1.0;
  P0(1, 1) = std::sqrt(1.0 - lambda_phi);
  P1(1, 1) = std::sqrt(lambda_phi);

  KrausChannel ch;
  for (const Matrix& P : {P0, P1})
    for (const Matrix& A : {A0, A1}) {
      Matrix K = P * A;
      if (K.cwiseAbs().maxCoeff() > 0.0) ch.ops.push_back(K);
    }
  return ch;
}

namespace detail {

inline std::vector<Matrix> pauli_1q() {
  Matrix I = Matrix::Identity(2, 2);
  Matrix X = Matrix::Zero(2, 2), Y = Matrix::Zero(2, 2), Z = Matrix::Zero(2, 2);
  X(0, 1) = X(1, 0) = 1.0;
  Y(0, 1) = Complex(0, -1);
  Y(1, 0) = Complex(0, 1);
  Z(0, 0) = 1.0;
  Z(1, 1) = -1.0;
  return {I, X, Y, Z};
}

}  // namespace detail

inline KrausChannel depolarizing_channel_1q(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability outside [0,1]");
  auto paulis = detail::pauli_1q();
  KrausChannel ch;
  ch.ops.push_back(std::sqrt(1.0 - 0.75 * p) * paulis[0]);
  for (int i = 1; i < 4; ++i) ch.ops.push_back(std::sqrt(0.25 * p) * paulis[i]);
  return ch;
}

inline KrausChannel depolarizing_channel_2q(double p) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability outside [0,1]");
  auto paulis = detail::pauli_1q();
  KrausChannel ch;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      Matrix K = Matrix::Zero(4, 4);
      for (int r1 = 0; r1 < 2; ++r1)
        for (int c1 = 0; c1 < 2; ++c1)
          for (int r2 = 0; r2 < 2; ++r2)
            for (int c2 = 0; c2 < 2; ++c2)
              K(r2 * 2 + r1, c2 * 2 + c1) = paulis[a](r1, c1) * paulis[b](r2, c2);
      double w = (a == 0 && b == 0) ? 1.0 - 15.0 * p / 16.0 : p / 16.0;
      ch.ops.push_back(std::sqrt(w) * K);
    }
  return ch;
}

// Embeds a 1- or 2-qubit Kraus operator into the full register. `qubits`
// lists the target qubit(s); for two qubits the operator's low bit acts on
// qubits[0].
inline Matrix embed_operator(const Matrix& K, const std::vector<int>& qubits, int n_qubits) {
  const int dim = dense_dim(n_qubits);
  const int k = static_cast<int>(qubits.size());
  if ((1 << k) != K.rows()) throw std::invalid_argument("operator size does not match qubit count");
  Matrix full = Matrix::Zero(dim, dim);
  for (int b = 0; b < dim; ++b) {
    int sub_b = 0;
    for (int t = 0; t < k; ++t) sub_b |= ((b >> qubits[t]) & 1) << t;
    for (int sub_a = 0; sub_a < (1 << k); ++sub_a) {
      if (K(sub_a, sub_b) == Complex(0, 0)) continue;
      int a = b;
      for (int t = 0; t < k; ++t) {
        a &= ~(1 << qubits[t]);
        a |= ((sub_a >> t) & 1) << qubits[t];
      }
      full(a, b) += K(sub_a, sub_b);
    }
  }
  return full;
}

inline Matrix apply_channel(const Matrix& rho, const KrausChannel& ch,
                            const std::vector<int>& qubits, int n_qubits) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& K : ch.ops) {
    Matrix Kf = embed_operator(K, qubits, n_qubits);
    out += Kf * rho * Kf.adjoint();
  }
  return out;
}

}  // namespace aemu
