// End-to-end acceptance run. Each criterion prints exactly one PASS/FAIL
// line (details indented below it) and the process exits nonzero if any
// criterion fails. Tolerances are fixed here, not configurable, so a run
// either reproduces the reference behavior or says plainly that it does not.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "aemu/aemu.hpp"

using namespace aemu;

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

struct Criterion {
  int id;
  std::string label;
  bool ok = true;
  std::vector<std::string> notes;

  Criterion(int id_, std::string label_) : id(id_), label(std::move(label_)) {}

  void check(bool cond, const std::string& note) {
    ok = ok && cond;
    notes.push_back(std::string(cond ? "ok   " : "BAD  ") + note);
  }

  void note(const std::string& text) { notes.push_back("     " + text); }

  bool finish() const {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, label.c_str());
    for (const auto& n : notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    return ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Matrix random_density(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix G(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) G(i, j) = Complex(normal(rng), normal(rng));
  Matrix rho = G * G.adjoint();
  return rho / rho.trace().real();
}

const IsingModel kModel = model_preset("t4");
const AnnealSchedule kSched = AnnealSchedule::linear();

// ---------------------------------------------------------------------------

bool criterion_1_step_table() {
  Criterion c(1, "grid search reproduces the reference step/quality table");
  const auto t0 = std::chrono::steady_clock::now();

  struct Row {
    double jt;
    int n_m, n_t;
    double tvd, fid;
  };
  const std::vector<Row> expected = {
      {0.01, 1, 1, 0.0001, 0.9999},  {0.1, 1, 1, 0.0053, 0.9999},
      {1.0, 5, 1, 0.0075, 0.9999},   {10.0, 17, 1, 0.0093, 0.9996},
      {100.0, 70, 2, 0.0095, 0.9995}, {1000.0, 660, 2, 0.0082, 0.9989}};

  for (const Row& row : expected) {
    SearchResult r = find_min_steps(kModel, kSched, row.jt);
    c.check(r.feasible && r.n_m == row.n_m && r.n_t == row.n_t,
            fmt("JT=%-6g pair (%d,%d), want (%d,%d)", row.jt, r.n_m, r.n_t, row.n_m, row.n_t));
    c.check(std::abs(r.tvd - row.tvd) <= 0.002,
            fmt("JT=%-6g tvd %.4f, want %.4f +/- 0.002", row.jt, r.tvd, row.tvd));
    c.check(std::abs(r.fidelity - row.fid) <= 0.0005,
            fmt("JT=%-6g fidelity %.5f, want %.4f +/- 0.0005", row.jt, r.fidelity, row.fid));
  }

  const double wall = seconds_since(t0);
  c.check(wall < 120.0, fmt("wall time %.1f s, budget 120 s", wall));
  return c.finish();
}

bool criterion_2_step_bound() {
  Criterion c(2, "analytic step bound matches the reference ladder");
  const double constant = commutator_norm_constant(kModel);
  c.check(std::abs(constant - 54.7660) <= 0.001,
          fmt("commutator constant %.4f, want 54.7660 +/- 0.001", constant));

  struct Row {
    double jt;
    int n_m;
    long bound;
  };
  for (const Row& row : std::vector<Row>{{0.01, 1, 1},
                                         {0.1, 1, 1},
                                         {1.0, 5, 5},
                                         {10.0, 17, 56},
                                         {100.0, 70, 741},
                                         {1000.0, 660, 7639}}) {
    const long steps = trotter_bound_steps(row.jt, row.n_m, 1e-4, constant);
    c.check(std::labs(steps - row.bound) <= 1,
            fmt("JT=%-6g N_M=%-3d bound %ld, want %ld +/- 1", row.jt, row.n_m, steps, row.bound));
  }
  return c.finish();
}

bool criterion_3_adiabatic_populations() {
  Criterion c(3, "long-anneal populations concentrate on the degenerate ground space");
  EvolveResult r = evolve_exact(kModel, kSched, 1000.0);

  const double p = r.populations[state_index("uudu")];
  c.check(std::abs(p - 1.0 / 3.0) <= 0.01, fmt("P(uudu) = %.5f, want 1/3 +/- 0.01", p));
  const double limit = (2.0 + std::sqrt(3.0)) / 12.0;
  c.note(fmt("slow-anneal limit for this state is (2+sqrt 3)/12 = %.6f under the exact "
             "dynamics; measured value differs from it by %.1e",
             limit, std::abs(p - limit)));
  c.note("the 1/3 band assumes the ground space fills uniformly, which the degenerate "
         "level crossing in this instance does not produce");

  double mass = 0.0;
  for (int idx : ground_state_indices(kModel)) mass += r.populations[idx];
  c.check(mass > 0.99, fmt("ground-space mass %.5f, want > 0.99", mass));
  return c.finish();
}

bool criterion_4_noisy_circuits() {
  Criterion c(4, "noisy circuit emulation reproduces the reference error rows");

  struct Cell {
    int n_m, n_t;
    double jt, pin, tol;
  };
  const std::vector<Cell> cells = {{2, 2, 1.06, 0.039, 0.05},
                                   {3, 2, 3.40, 0.085, 0.07},
                                   {4, 2, 5.26, 0.219, 0.07},
                                   {70, 2, 100.0, 0.587, 0.07}};

  const CircuitNoiseModel dephasing = noise_preset("noisy-1");
  const CircuitNoiseModel full = noise_preset("noisy-2");
  const int dim = dense_dim(kModel.n_qubits);
  const Matrix rho0 = Matrix::Constant(dim, dim, Complex(1.0 / dim, 0.0));

  std::vector<double> tvd1, tvd2;
  for (const Cell& cell : cells) {
    EvolveResult ref = evolve_exact(kModel, kSched, cell.jt);
    GateCircuit circ = build_circuit(TrotterPlan{cell.n_m, cell.n_t, cell.jt}, kModel, kSched);
    Matrix r1 = simulate_noisy_circuit(circ, dephasing, rho0);
    Matrix r2 = simulate_noisy_circuit(circ, full, rho0);
    tvd1.push_back(tvd(measure_distribution(r1, dephasing), ref.populations));
    tvd2.push_back(tvd(measure_distribution(r2, full), ref.populations));
  }

  for (std::size_t i = 0; i < cells.size(); ++i)
    c.check(std::abs(tvd1[i] - cells[i].pin) <= cells[i].tol,
            fmt("dephasing row: (%d,%d) JT=%-5g tvd %.4f, want %.3f +/- %.2f", cells[i].n_m,
                cells[i].n_t, cells[i].jt, tvd1[i], cells[i].pin, cells[i].tol));

  for (double jt : {3.40, 5.26}) {
    NoisyOptimumResult opt = noisy_optimum_magnus(kModel, kSched, jt, dephasing);
    const int want = jt < 4.0 ? 3 : 4;
    c.check(opt.n_m == want && opt.n_m > 1 && opt.n_m < 20,
            fmt("dephasing optimum at JT=%g: N_M=%d (tvd %.4f), want interior minimum at %d", jt,
                opt.n_m, opt.tvd, want));
  }

  for (std::size_t i = 0; i < cells.size(); ++i)
    c.check(tvd2[i] >= tvd1[i],
            fmt("full noise >= dephasing alone: JT=%-5g %.4f vs %.4f", cells[i].jt, tvd2[i],
                tvd1[i]));
  c.note("at deep circuits the extra depolarizing/thermal channels push the state toward "
         "uniform, which lies closer to the reference distribution than the dephased "
         "state does, so the last column can invert");
  return c.finish();
}

bool criterion_5_analog_noise() {
  Criterion c(5, "analog noise strengths cross the accuracy threshold where expected");
  const auto t0 = std::chrono::steady_clock::now();

  EvolveResult ref10 = evolve_exact(kModel, kSched, 10.0);
  EvolveResult ref40 = evolve_exact(kModel, kSched, 40.0);

  const double scl10 = tvd(evolve_scl(kModel, kSched, 10.0, 5e-3).populations, ref10.populations);
  const double scl40 = tvd(evolve_scl(kModel, kSched, 40.0, 5e-3).populations, ref40.populations);
  c.check(scl10 < 0.1 && scl40 > 0.1,
          fmt("semiclassical dephasing tvd: %.4f at JT=10, %.4f at JT=40 (threshold 0.1)", scl10,
              scl40));

  const OhmicBath warm = bath_preset("ame-15mK");
  const OhmicBath cold = bath_preset("ame-2.38mK");
  const double ame10 = tvd(evolve_ame(kModel, kSched, 10.0, warm).populations, ref10.populations);
  const double ame40 = tvd(evolve_ame(kModel, kSched, 40.0, warm).populations, ref40.populations);
  c.check(ame10 < 0.1 && ame40 > 0.1,
          fmt("adiabatic master equation tvd: %.4f at JT=10, %.4f at JT=40 (threshold 0.1)",
              ame10, ame40));

  c.check(std::abs(warm.eta_g2 - 8.0866e-4) <= 1e-7,
          fmt("15 mK coupling calibration %.6e, want 8.0866e-04 +/- 1e-07", warm.eta_g2));
  c.check(std::abs(cold.eta_g2 - 1.7178e-3) <= 1e-6,
          fmt("2.38 mK coupling calibration %.6e, want 1.7178e-03 +/- 1e-06", cold.eta_g2));

  EvolveResult ref500 = evolve_exact(kModel, kSched, 500.0);
  const double cold500 =
      tvd(evolve_ame(kModel, kSched, 500.0, cold).populations, ref500.populations);
  const double warm500 =
      tvd(evolve_ame(kModel, kSched, 500.0, warm).populations, ref500.populations);
  c.check(cold500 <= warm500,
          fmt("long anneal favors the colder bath: tvd %.4f at 2.38 mK vs %.4f at 15 mK",
              cold500, warm500));

  ProgrammingErrorModel pe;
  pe.sigma = 0.03;
  pe.n_realizations = 1000;
  pe.seed = 20240815;
  EvolveResult ref100 = evolve_exact(kModel, kSched, 100.0);
  EvolveResult ref400 = evolve_exact(kModel, kSched, 400.0);
  const double pe100 =
      tvd(evolve_with_programming_errors(kModel, kSched, 100.0, pe).mean, ref100.populations);
  const double pe400 =
      tvd(evolve_with_programming_errors(kModel, kSched, 400.0, pe).mean, ref400.populations);
  c.check(pe100 < 0.1 && pe400 > 0.1,
          fmt("programming-error tvd: %.4f at JT=100, %.4f at JT=400 (threshold 0.1)", pe100,
              pe400));

  const double wall = seconds_since(t0);
  c.check(wall < 1800.0, fmt("wall time %.1f s, budget 1800 s", wall));
  return c.finish();
}

bool criterion_6_rotor_baseline() {
  Criterion c(6, "classical rotor baseline lands in the reference bands");
  const RealVector ref = evolve_exact(kModel, kSched, 1000.0).populations;

  struct Band {
    double beta, pin, tol;
  };
  for (const Band& band : std::vector<Band>{{3.19, 0.0976, 0.03}, {0.5092, 0.4046, 0.05}}) {
    SvmcConfig cfg;
    cfg.beta = band.beta;
    cfg.seed = 20240815;

    // Same per-trial streams as run_svmc, accumulated in 10 blocks so the
    // block-to-block scatter gives an error bar on the distance.
    const int n_blocks = 10, block = cfg.n_trials / n_blocks;
    const int dim = dense_dim(kModel.n_qubits);
    RealVector total = RealVector::Zero(dim);
    std::vector<double> block_tvds;
    for (int b = 0; b < n_blocks; ++b) {
      RealVector counts = RealVector::Zero(dim);
      for (int t = b * block; t < (b + 1) * block; ++t) {
        auto rng = make_stream(cfg.seed, static_cast<std::uint64_t>(t));
        counts[svmc_trial(kModel, kSched, cfg, rng)] += 1.0;
      }
      block_tvds.push_back(tvd(RealVector(counts / double(block)), ref));
      total += counts;
    }
    const double full = tvd(RealVector(total / double(cfg.n_trials)), ref);

    double mean = 0.0;
    for (double v : block_tvds) mean += v;
    mean /= n_blocks;
    double var = 0.0;
    for (double v : block_tvds) var += (v - mean) * (v - mean);
    const double se = std::sqrt(var / (n_blocks - 1) / n_blocks);

    c.check(std::abs(full - band.pin) <= band.tol,
            fmt("beta=%-6g tvd %.4f (blocks %.4f +/- %.4f), want %.4f +/- %.2f", band.beta, full,
                mean, se, band.pin, band.tol));
  }
  return c.finish();
}

bool criterion_7_runtime_model() {
  Criterion c(7, "hardware runtime model separates circuit and analog timescales");
  RuntimeModel rt = RuntimeModel::for_model(kModel);
  c.check(rt.chi1 == 3, fmt("edge coloring depth %d, want 3", rt.chi1));

  const double circuit_ns = estimate_circuit_runtime(70, 2, rt);
  const double analog_ns = estimate_analog_runtime(100.0, rt);
  c.check(circuit_ns == 14025.0, fmt("(70,2) circuit estimate %.0f ns, want 14025", circuit_ns));
  c.check(analog_ns == 100.0, fmt("JT=100 analog estimate %.0f ns, want 100", analog_ns));
  c.check(circuit_ns / analog_ns > 100.0,
          fmt("slowdown factor %.1fx, want > 100x", circuit_ns / analog_ns));

  struct Plan {
    int n_m, n_t;
    double jt;
  };
  for (const Plan& p : std::vector<Plan>{{1, 1, 0.01}, {2, 2, 1.06}, {5, 1, 1.0},
                                         {17, 1, 10.0}, {70, 2, 100.0}}) {
    GateCircuit circ = build_circuit(TrotterPlan{p.n_m, p.n_t, p.jt}, kModel, kSched);
    const double from_depth = hardware_layer_count(circ) * 25.0;
    const double from_formula = estimate_circuit_runtime(p.n_m, p.n_t, rt);
    c.check(from_formula == from_depth,
            fmt("(%d,%d): formula %.0f ns == 25 ns x %d scheduled layers", p.n_m, p.n_t,
                from_formula, hardware_layer_count(circ)));
  }
  return c.finish();
}

bool criterion_8_properties() {
  Criterion c(8, "structural properties hold across the library");

  // channels are CPTP
  bool cptp = true;
  for (const KrausChannel& ch :
       {phase_damping_channel(36530.0, 850.0), thermal_relaxation_channel(159870.0, 161230.0, 850.0),
        depolarizing_channel_1q(3e-4), depolarizing_channel_2q(0.030)})
    cptp = cptp && ch.completeness_defect() < 1e-12 && ch.choi_min_eigenvalue() > -1e-10;
  c.check(cptp, "calibrated noise channels are trace preserving and completely positive");

  // density matrices stay physical along an open-system trajectory
  LindbladOptions opts;
  opts.record_points = {0.0, 0.5, 1.0};
  LindbladResult ame = evolve_ame(kModel, kSched, 20.0, bath_preset("ame-15mK"), opts);
  bool valid = ame.recorded.size() == 3;
  for (const auto& [s, rho] : ame.recorded) valid = valid && is_valid_density(rho, 1e-6);
  c.check(valid, "master-equation trajectory stays a valid density matrix");

  // detailed balance of bath rates
  const OhmicBath bath = bath_preset("ame-15mK");
  bool kms = true;
  for (double omega : {0.3, 2.0, 12.0}) {
    const double ratio = gamma_ohmic(-omega, bath) / gamma_ohmic(omega, bath);
    kms = kms && std::abs(ratio / std::exp(-bath.beta() * omega) - 1.0) < 1e-9;
  }
  c.check(kms, "bath rates satisfy detailed balance at every sampled frequency");

  // measurement statistics can never distinguish states better than trace distance
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim_pick(2, 8);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int dim = dim_pick(rng);
    Matrix a = random_density(dim, rng), b = random_density(dim, rng);
    if (tvd(basis_distribution(a), basis_distribution(b)) > trace_distance(a, b) + 1e-10)
      ++violations;
  }
  c.check(violations == 0,
          fmt("diagonal distance <= trace distance on %d random pairs (%d violations)", 1000,
              violations));

  // second-order splitting: error slope -2 in the slice count
  const Matrix H0 = build_driver_hamiltonian(kModel.n_qubits);
  const Matrix HT = build_ising_hamiltonian(kModel);
  const Matrix exact = propagator_step(0.5 * H0 + 0.5 * HT, 1.0);
  std::vector<double> lx, ly;
  for (int n_t : {1, 2, 4, 8, 16}) {
    GateCircuit circ = build_circuit(TrotterPlan{1, n_t, 1.0}, kModel, kSched);
    lx.push_back(std::log(double(n_t)));
    ly.push_back(std::log(spectral_norm(circuit_unitary(circ) - exact)));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= lx.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = sxy / sxx;
  c.check(std::abs(slope + 2.0) <= 0.1, fmt("splitting error slope %.3f, want -2 +/- 0.1", slope));

  // seeded stochastic runs reproduce exactly
  SvmcConfig cfg;
  cfg.beta = 3.19;
  cfg.n_sweeps = 501;
  cfg.n_trials = 50;
  cfg.seed = 123;
  const RealVector s1 = run_svmc(kModel, kSched, cfg), s2 = run_svmc(kModel, kSched, cfg);
  ProgrammingErrorModel pe;
  pe.sigma = 0.03;
  pe.n_realizations = 25;
  pe.seed = 99;
  const RealVector p1 = evolve_with_programming_errors(kModel, kSched, 5.0, pe).mean;
  const RealVector p2 = evolve_with_programming_errors(kModel, kSched, 5.0, pe).mean;
  c.check((s1 - s2).cwiseAbs().maxCoeff() == 0.0 && (p1 - p2).cwiseAbs().maxCoeff() == 0.0,
          "seeded rotor and programming-error runs reproduce bit for bit");
  return c.finish();
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  int passed = 0, total = 0;
  for (bool ok : {criterion_1_step_table(), criterion_2_step_bound(),
                  criterion_3_adiabatic_populations(), criterion_4_noisy_circuits(),
                  criterion_5_analog_noise(), criterion_6_rotor_baseline(),
                  criterion_7_runtime_model(), criterion_8_properties()}) {
    ++total;
    passed += ok;
  }
  std::printf("acceptance: %d of %d criteria passed in %.1f s\n", passed, total,
              seconds_since(t0));
  return passed == total ? 0 : 1;
}
