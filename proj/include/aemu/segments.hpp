#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "aemu/schedule.hpp"

namespace aemu {

// One coarse time slice of the anneal: the integrals of A and B over
// [(k-1)/N_M, k/N_M] that parameterize the slice's averaged Hamiltonian.
struct MagnusSegment {
  int k = 0;       // 1-based
  double a = 0.0;  // integral of A(s) over the slice
  double b = 0.0;  // integral of B(s) over the slice
};

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double lo,
                               double hi, double f_lo, double f_mid, double f_hi,
                               double whole, double tol, int depth) {
  double mid = 0.5 * (lo + hi);
  double lmid = 0.5 * (lo + mid), rmid = 0.5 * (mid + hi);
  double f_lmid = f(lmid), f_rmid = f(rmid);
  double left = (mid - lo) / 6.0 * (f_lo + 4.0 * f_lmid + f_mid);
  double right = (hi - mid) / 6.0 * (f_mid + 4.0 * f_rmid + f_hi);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, lo, mid, f_lo, f_lmid, f_mid, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, mid, hi, f_mid, f_rmid, f_hi, right, tol / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double lo, double hi,
                        double tol = 1e-12) {
  double f_lo = f(lo), f_hi = f(hi), f_mid = f(0.5 * (lo + hi));
  double whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
  return adaptive_simpson(f, lo, hi, f_lo, f_mid, f_hi, whole, tol, 48);
}

}  // namespace detail

inline std::vector<MagnusSegment> magnus_segments(const AnnealSchedule& sched, int n_m) {
  if (n_m < 1) throw std::invalid_argument("n_m must be >= 1");
  std::vector<MagnusSegment> segs(n_m);
  const double delta = 1.0 / n_m;
  for (int k = 1; k <= n_m; ++k) {
    MagnusSegment& seg = segs[k - 1];
    seg.k = k;
    if (sched.kind == AnnealSchedule::Kind::linear) {
      seg.b = delta * delta * (2.0 * k - 1.0) / 2.0;
      seg.a = delta - seg.b;
    } else {
      double lo = (k - 1) * delta, hi = k * delta;
      seg.a = detail::integrate([&](double s) { return sched.A(s); }, lo, hi);
      seg.b = detail::integrate([&](double s) { return sched.B(s); }, lo, hi);
    }
  }
  return segs;
}

}  // namespace aemu
