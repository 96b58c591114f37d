#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "aemu/evolve.hpp"
#include "aemu/metrics.hpp"
#include "aemu/programming_error.hpp"

using namespace aemu;

TEST_CASE("zero disorder reproduces the clean instance exactly") {
  IsingModel m = t4_model();
  AnnealSchedule sched;
  ProgrammingErrorModel pe;
  pe.sigma = 0.0;
  pe.n_realizations = 3;
  pe.seed = 20240815;
  ProgrammingErrorResult r = evolve_with_programming_errors(m, sched, 5.0, pe);
  EvolveResult ref = evolve_exact(m, sched, 5.0);
  CHECK(tvd(r.mean, ref.populations) < 1e-12);
}

TEST_CASE("perturbed instances are deterministic per realization") {
  IsingModel m = t4_model();
  IsingModel a = perturbed_instance(m, 0.03, 42, 7);
  IsingModel b = perturbed_instance(m, 0.03, 42, 7);
  CHECK(std::get<2>(a.couplings[0]) == std::get<2>(b.couplings[0]));
  CHECK(a.fields[3].second == b.fields[3].second);

  IsingModel c = perturbed_instance(m, 0.03, 42, 8);
  CHECK(std::get<2>(a.couplings[0]) != std::get<2>(c.couplings[0]));

  // disorder is additive around the clean values
  CHECK(std::abs(std::get<2>(a.couplings[0]) - (-1.0)) < 0.2);
  CHECK(std::abs(a.fields[0].second - (-1.0)) < 0.2);
}

TEST_CASE("mean distribution is reproducible and spread shrinks with samples") {
  IsingModel m = t4_model();
  AnnealSchedule sched;
  ProgrammingErrorModel pe;
  pe.sigma = 0.03;
  pe.n_realizations = 400;
  pe.seed = 20240815;
  ProgrammingErrorResult r = evolve_with_programming_errors(m, sched, 20.0, pe);
  ProgrammingErrorResult again = evolve_with_programming_errors(m, sched, 20.0, pe);
  CHECK((r.mean - again.mean).cwiseAbs().maxCoeff() == 0.0);
  REQUIRE(r.per_realization.rows() == 400);
  CHECK(std::abs(r.mean.sum() - 1.0) < 1e-9);

  // standard error of the mean from the first 100 rows vs. all 400: the
  // ratio should be near sqrt(4) = 2 entry by entry
  auto std_err = [&](int rows, int col) {
    double mean = 0.0;
    for (int i = 0; i < rows; ++i) mean += r.per_realization(i, col);
    mean /= rows;
    double var = 0.0;
    for (int i = 0; i < rows; ++i) {
      const double d = r.per_realization(i, col) - mean;
      var += d * d;
    }
    var /= (rows - 1);
    return std::sqrt(var / rows);
  };
  double ratio_sum = 0.0;
  int counted = 0;
  for (int col = 0; col < 16; ++col) {
    const double wide = std_err(100, col);
    const double tight = std_err(400, col);
    if (tight < 1e-12) continue;
    ratio_sum += wide / tight;
    ++counted;
  }
  REQUIRE(counted > 0);
  CHECK(ratio_sum / counted == Catch::Approx(2.0).epsilon(0.20));
}

TEST_CASE("disorder model validation and presets") {
  ProgrammingErrorModel pe = pe_preset("pe-0.03");
  CHECK(pe.sigma == Catch::Approx(0.03));
  CHECK(pe.n_realizations == 1000);
  CHECK_THROWS_AS(pe_preset("pe-1.0"), std::invalid_argument);

  pe.sigma = -0.1;
  CHECK_THROWS_AS(pe.validate(), std::invalid_argument);
  pe = pe_preset("pe-0.03");
  pe.n_realizations = 0;
  CHECK_THROWS_AS(pe.validate(), std::invalid_argument);
}

TEST_CASE("disorder model JSON round trip") {
  ProgrammingErrorModel pe = pe_preset("pe-0.03");
  pe.seed = 99;
  ProgrammingErrorModel back = pe_from_json(to_json(pe));
  CHECK(back.sigma == Catch::Approx(pe.sigma));
  CHECK(back.n_realizations == pe.n_realizations);
  CHECK(back.seed == pe.seed);
}
