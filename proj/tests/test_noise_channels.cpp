#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "aemu/kraus.hpp"
#include "aemu/metrics.hpp"
#include "aemu/rng.hpp"

using namespace aemu;

namespace {

Matrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  Matrix rho = a * a.adjoint();
  return rho / rho.trace();
}

Matrix apply_full(const Matrix& rho, const KrausChannel& ch) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& K : ch.ops) out += K * rho * K.adjoint();
  return out;
}

Matrix plus_state() {
  Matrix rho(2, 2);
  rho << Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0);
  return rho;
}

void check_cptp(const KrausChannel& ch) {
  CHECK(ch.completeness_defect() < 1e-12);
  CHECK(ch.choi_min_eigenvalue() > -1e-10);
}

}  // namespace

TEST_CASE("phase damping endpoints and decay rate") {
  KrausChannel id = phase_damping_channel(100.0, 0.0);
  auto rng = make_stream(20240815, 11);
  Matrix rho = random_density(2, rng);
  CHECK((apply_full(rho, id) - rho).cwiseAbs().maxCoeff() < 1e-14);

  // Coherence decays as exp(-dt/T2); after one T2 the off-diagonal of |+><+|
  // sits at e^{-1}/2.
  Matrix out = apply_full(plus_state(), phase_damping_channel(70.0, 70.0));
  CHECK(out(0, 1).real() == Catch::Approx(0.5 * std::exp(-1.0)).margin(1e-12));
  CHECK(out(0, 0).real() == Catch::Approx(0.5).margin(1e-14));

  CHECK_THROWS_AS(phase_damping_channel(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(phase_damping_channel(-5.0, 1.0), std::invalid_argument);
}

TEST_CASE("phase damping composes as a semigroup") {
  Matrix once = apply_full(plus_state(), phase_damping_channel(50.0, 30.0));
  Matrix twice = apply_full(apply_full(plus_state(), phase_damping_channel(50.0, 15.0)),
                            phase_damping_channel(50.0, 15.0));
  CHECK((once - twice).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("thermal relaxation decays the excited state at 1/T1") {
  KrausChannel id = thermal_relaxation_channel(100.0, 100.0, 0.0);
  auto rng = make_stream(20240815, 12);
  Matrix rho = random_density(2, rng);
  CHECK((apply_full(rho, id) - rho).cwiseAbs().maxCoeff() < 1e-14);

  Matrix excited = Matrix::Zero(2, 2);
  excited(1, 1) = 1.0;
  Matrix out = apply_full(excited, thermal_relaxation_channel(80.0, 100.0, 80.0));
  CHECK(out(1, 1).real() == Catch::Approx(std::exp(-1.0)).margin(1e-12));
  CHECK(out(0, 0).real() == Catch::Approx(1.0 - std::exp(-1.0)).margin(1e-12));
}

TEST_CASE("at the T2 = 2 T1 boundary no extra dephasing remains") {
  // Then all coherence loss comes from amplitude damping alone:
  // off-diagonal factor sqrt(1-p) with p = 1-exp(-dt/T1).
  const double T1 = 60.0, dt = 25.0;
  Matrix out = apply_full(plus_state(), thermal_relaxation_channel(T1, 2.0 * T1, dt));
  const double p = 1.0 - std::exp(-dt / T1);
  CHECK(out(0, 1).real() == Catch::Approx(0.5 * std::sqrt(1.0 - p)).margin(1e-12));
}

TEST_CASE("thermal relaxation rejects T2 above twice T1") {
  CHECK_THROWS_AS(thermal_relaxation_channel(50.0, 101.0, 1.0), std::invalid_argument);
  CHECK_NOTHROW(thermal_relaxation_channel(50.0, 100.0, 1.0));
}

TEST_CASE("depolarizing endpoints") {
  auto rng = make_stream(20240815, 13);
  Matrix rho = random_density(2, rng);
  CHECK((apply_full(rho, depolarizing_channel_1q(0.0)) - rho).cwiseAbs().maxCoeff() < 1e-14);
  Matrix mixed = apply_full(rho, depolarizing_channel_1q(1.0));
  CHECK((mixed - Matrix::Identity(2, 2) * Complex(0.5, 0)).cwiseAbs().maxCoeff() < 1e-12);

  Matrix rho2 = random_density(4, rng);
  CHECK((apply_full(rho2, depolarizing_channel_2q(0.0)) - rho2).cwiseAbs().maxCoeff() < 1e-14);
  Matrix mixed2 = apply_full(rho2, depolarizing_channel_2q(1.0));
  CHECK((mixed2 - Matrix::Identity(4, 4) * Complex(0.25, 0)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(depolarizing_channel_2q(0.1).ops.size() == 16);
}

TEST_CASE("every channel in the family is completely positive and trace preserving") {
  for (double dt : {0.0, 1.0, 25.0, 850.0}) {
    check_cptp(phase_damping_channel(36.5, dt));
    check_cptp(thermal_relaxation_channel(159.0, 161.0, dt));
    check_cptp(thermal_relaxation_channel(100.0, 40.0, dt));
  }
  for (double p : {0.0, 1e-4, 0.03, 0.5, 1.0}) {
    check_cptp(depolarizing_channel_1q(p));
    check_cptp(depolarizing_channel_2q(p));
  }
}

TEST_CASE("operators embed on the requested qubits") {
  Matrix sx(2, 2);
  sx << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);

  // qubit 0 is the least-significant bit
  Matrix on0 = embed_operator(sx, {0}, 2);
  Matrix want0 = Matrix::Zero(4, 4);
  want0(0, 1) = want0(1, 0) = want0(2, 3) = want0(3, 2) = 1.0;
  CHECK((on0 - want0).cwiseAbs().maxCoeff() < 1e-15);

  Matrix on1 = embed_operator(sx, {1}, 2);
  Matrix want1 = Matrix::Zero(4, 4);
  want1(0, 2) = want1(2, 0) = want1(1, 3) = want1(3, 1) = 1.0;
  CHECK((on1 - want1).cwiseAbs().maxCoeff() < 1e-15);

  // two-qubit embedding: low factor bit follows the first listed qubit
  Matrix cz = Matrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  Matrix full = embed_operator(cz, {0, 2}, 3);
  for (int b = 0; b < 8; ++b) {
    const double sign = ((b & 1) && (b & 4)) ? -1.0 : 1.0;
    CHECK(full(b, b).real() == Catch::Approx(sign));
  }
}

TEST_CASE("channels applied in place preserve density-matrix structure") {
  auto rng = make_stream(20240815, 14);
  Matrix rho = random_density(8, rng);
  Matrix out = apply_channel(rho, thermal_relaxation_channel(100.0, 80.0, 25.0), {1}, 3);
  CHECK(std::abs(out.trace().real() - 1.0) < 1e-12);
  CHECK(is_valid_density(out, 1e-9));
}
