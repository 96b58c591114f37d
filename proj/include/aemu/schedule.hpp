#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace aemu {

// Anneal schedule s -> (A(s), B(s)) on s in [0,1]. The linear schedule is
// A = 1-s, B = s; tabulated schedules interpolate sorted (s, A, B) knots.
struct AnnealSchedule {
  enum class Kind { linear, tabulated };

  Kind kind = Kind::linear;
  std::vector<std::array<double, 3>> knots;  // (s, A, B), ascending in s

  static AnnealSchedule linear() { return AnnealSchedule{}; }

  static AnnealSchedule tabulated(std::vector<std::array<double, 3>> pts) {
    if (pts.size() < 2) throw std::invalid_argument("tabulated schedule needs >= 2 knots");
    std::sort(pts.begin(), pts.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    if (pts.front()[0] != 0.0 || pts.back()[0] != 1.0)
      throw std::invalid_argument("tabulated schedule must span s in [0,1]");
    AnnealSchedule sched;
    sched.kind = Kind::tabulated;
    sched.knots = std::move(pts);
    return sched;
  }

  double A(double s) const { return eval(s, 1); }
  double B(double s) const { return eval(s, 2); }

  std::string name() const { return kind == Kind::linear ? "linear" : "tabulated"; }

 private:
  double eval(double s, int col) const {
    if (s < 0.0 || s > 1.0) throw std::domain_error("schedule argument s outside [0,1]");
    if (kind == Kind::linear) return col == 1 ? 1.0 - s : s;
    auto hi = std::lower_bound(knots.begin(), knots.end(), s,
                               [](const auto& k, double v) { return k[0] < v; });
    if (hi == knots.begin()) return (*hi)[col];
    if (hi == knots.end()) return knots.back()[col];
    auto lo = hi - 1;
    double span = (*hi)[0] - (*lo)[0];
    if (span <= 0.0) return (*hi)[col];
    double t = (s - (*lo)[0]) / span;
    return (1.0 - t) * (*lo)[col] + t * (*hi)[col];
  }
};

}  // namespace aemu
