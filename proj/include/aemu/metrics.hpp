#pragma once

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

#include "aemu/types.hpp"

namespace aemu {

// Any comparison below this TVD counts as high-quality reproduction; step
// searches target it.
inline constexpr double kHighQualityTvd = 0.01;

inline double fidelity(const Vector& psi, const Vector& phi) {
  if (psi.size() != phi.size()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(psi.dot(phi));  // |<psi|phi>|^2 (Eigen dot conjugates the left side)
}

// Mixed state vs. pure target: <psi| rho |psi>.
inline double fidelity(const Vector& psi, const Matrix& rho) {
  if (psi.size() != rho.rows() || rho.rows() != rho.cols())
    throw std::invalid_argument("fidelity: dimension mismatch");
  return std::real(psi.dot(rho * psi));
}

inline double tvd(const RealVector& p, const RealVector& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tvd: dimension mismatch");
  return 0.5 * (p - q).cwiseAbs().sum();
}

inline double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw std::invalid_argument("trace_distance: dimension mismatch");
  check_hermitian(rho, 1e-9);
  check_hermitian(sigma, 1e-9);
  Eigen::JacobiSVD<Matrix> svd(rho - sigma);
  return 0.5 * svd.singularValues().sum();
}

inline RealVector basis_distribution(const Vector& psi) { return psi.cwiseAbs2(); }

inline RealVector basis_distribution(const Matrix& rho) { return rho.diagonal().real(); }

// Elementwise |rho_a - rho_b| for heatmap emission.
inline RealMatrix density_diff_map(const Matrix& rho_a, const Matrix& rho_b) {
  if (rho_a.rows() != rho_b.rows() || rho_a.cols() != rho_b.cols())
    throw std::invalid_argument("density_diff_map: dimension mismatch");
  return (rho_a - rho_b).cwiseAbs().real();
}

inline bool is_valid_density(const Matrix& rho, double tol = 1e-9) {
  if (rho.rows() != rho.cols()) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace().real() - 1.0) > tol || std::abs(rho.trace().imag()) > tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  return es.eigenvalues().minCoeff() >= -tol;
}

inline double purity(const Matrix& rho) { return std::real((rho * rho).trace()); }

}  // namespace aemu
