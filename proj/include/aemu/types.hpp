#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace aemu {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Dense-matrix work is capped well before memory becomes a problem; the
// library targets few-qubit model systems, not generic statevector HPC.
inline constexpr int kMaxDenseQubits = 10;

inline int dense_dim(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
  if (n_qubits > kMaxDenseQubits)
    throw std::invalid_argument("dense representation capped at " +
                                std::to_string(kMaxDenseQubits) + " qubits");
  return 1 << n_qubits;
}

// Basis convention used across the library: qubit q occupies bit q of the
// basis index (qubit 0 = least significant bit). Spin up (sigma^z eigenvalue
// +1) is bit value 0. Ket strings follow the usual computational-basis order
// with the highest-numbered qubit leftmost, e.g. "uudu" on four qubits puts
// qubit 1 in the down state: index 0b0010 = 2.
inline double spin_of_bit(int basis_index, int qubit) {
  return ((basis_index >> qubit) & 1) ? -1.0 : 1.0;
}

inline void check_hermitian(const Matrix& H, double tol = 1e-12) {
  if (H.rows() != H.cols()) throw std::invalid_argument("matrix not square");
  double dev = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (dev > tol)
    throw std::invalid_argument("matrix not Hermitian (max deviation " +
                                std::to_string(dev) + ")");
}

}  // namespace aemu
