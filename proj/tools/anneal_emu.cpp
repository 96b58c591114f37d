// Command-line driver for the annealing emulation library: reference solves,
// discretized circuit runs, step-count searches, noise sweeps, the classical
// rotor baseline, runtime estimates, and full report generation.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aemu/aemu.hpp"

namespace {

aemu::IsingModel load_model(const std::string& spec) {
  if (std::filesystem::exists(spec))
    return aemu::model_from_json(nlohmann::json::parse(aemu::read_text_file(spec)));
  return aemu::model_preset(spec);
}

std::string distribution_csv(const aemu::RealVector& p, int n_qubits) {
  std::string csv = "state,probability\r\n";
  for (int i = 0; i < p.size(); ++i)
    csv += aemu::csv_row({aemu::state_label(i, n_qubits), std::to_string(p[i])});
  return csv;
}

aemu::RealVector load_distribution(const std::string& path, int dim, int n_qubits) {
  auto rows = aemu::parse_csv(aemu::read_text_file(path));
  aemu::RealVector p = aemu::RealVector::Zero(dim);
  for (const auto& row : rows) {
    if (row.size() < 2 || row[0] == "state") continue;
    int idx;
    try {
      idx = std::stoi(row[0]);
    } catch (const std::exception&) {
      idx = aemu::state_index(row[0]);
    }
    if (idx < 0 || idx >= dim) throw std::runtime_error("state index out of range: " + row[0]);
    p[idx] = std::stod(row[1]);
    (void)n_qubits;
  }
  return p;
}

void maybe_write(const std::string& path, const std::string& content) {
  if (path.empty()) return;
  aemu::write_text_file(path, content);
  std::cout << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum annealing emulation toolkit"};
  app.require_subcommand(1);

  std::string model_spec = "t4";
  std::string out_path;
  std::string noise_name = "none";
  double jt = 1.0;
  int n_m = 1, n_t = 1;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub, bool with_plan) {
    sub->add_option("--model", model_spec, "model preset name or JSON file")->capture_default_str();
    sub->add_option("--jt", jt, "dimensionless anneal time JT")->capture_default_str();
    sub->add_option("--seed", seed, "master RNG seed")->capture_default_str();
    sub->add_option("--out", out_path, "output file (or directory for report)");
    if (with_plan) {
      sub->add_option("--nm", n_m, "Magnus segment count")->capture_default_str();
      sub->add_option("--nt", n_t, "Trotter steps per segment")->capture_default_str();
      sub->add_option("--noise", noise_name,
                      "noise preset: none|noisy-1|noisy-2|noisy-3|"
                      "scl-100ns|ame-15mK|ame-2.38mK|pe-0.03")
          ->capture_default_str();
    }
  };

  auto* solve = app.add_subcommand("solve", "adaptive reference solve of the continuous anneal");
  add_common(solve, false);

  auto* emulate = app.add_subcommand("emulate", "run the discretized circuit, optionally noisy");
  add_common(emulate, true);

  auto* search = app.add_subcommand("search", "minimize N_M*N_T subject to the TVD target");
  add_common(search, false);
  double tvd_target = aemu::kHighQualityTvd;
  search->add_option("--tvd-target", tvd_target, "feasibility threshold")->capture_default_str();

  auto* sweep = app.add_subcommand("noise-sweep", "TVD vs N_M at fixed N_T under a noise preset");
  add_common(sweep, true);
  int nm_max = 20;
  sweep->add_option("--nm-max", nm_max, "sweep N_M from 1 to this")->capture_default_str();

  auto* svmc = app.add_subcommand("svmc", "classical rotor baseline");
  add_common(svmc, false);
  double beta = 3.19;
  int n_trials = 1000, n_sweeps = 10001;
  std::string reference_file;
  double reference_jt = 1000.0;
  svmc->add_option("--beta", beta, "inverse temperature")->capture_default_str();
  svmc->add_option("--trials", n_trials, "independent anneal trials")->capture_default_str();
  svmc->add_option("--sweeps", n_sweeps, "Metropolis sweeps per trial")->capture_default_str();
  svmc->add_option("--reference", reference_file, "CSV distribution to compare against");
  svmc->add_option("--reference-jt", reference_jt, "or: JT of a reference solve")
      ->capture_default_str();

  auto* runtime = app.add_subcommand("runtime", "wall-clock estimates for circuit and analog");
  add_common(runtime, true);

  auto* report = app.add_subcommand("report", "emit CSV/SVG artifact bundle");
  add_common(report, false);
  std::string preset_name, config_file;
  report->add_option("--preset", preset_name,
                     "table1|table2|table3|fig-analog|fig-populations|fig-runtime|empty");
  report->add_option("--config", config_file, "experiment config JSON file");

  CLI11_PARSE(app, argc, argv);

  try {
    const aemu::IsingModel model = load_model(model_spec);
    const aemu::AnnealSchedule sched = aemu::AnnealSchedule::linear();

    if (solve->parsed()) {
      aemu::EvolveResult res = aemu::evolve_exact(model, sched, jt);
      std::cout << "JT=" << jt << " steps=" << res.steps << " refinements=" << res.refinements
                << "\n";
      for (int i = 0; i < res.populations.size(); ++i)
        if (res.populations[i] > 1e-4)
          std::cout << "  " << aemu::state_label(i, model.n_qubits) << "  "
                    << res.populations[i] << "\n";
      maybe_write(out_path, aemu::to_json(res).dump(2) + "\n");
    } else if (emulate->parsed()) {
      aemu::EvolveResult ref = aemu::evolve_exact(model, sched, jt);
      const int dim = aemu::dense_dim(model.n_qubits);
      nlohmann::json j;
      j["jt"] = jt;
      j["noise"] = noise_name;
      const bool analog = noise_name == "scl-100ns" || noise_name == "ame-15mK" ||
                          noise_name == "ame-2.38mK" || noise_name == "pe-0.03";
      if (analog) {
        if (noise_name == "pe-0.03") {
          aemu::ProgrammingErrorModel pe = aemu::pe_preset(noise_name);
          pe.seed = seed;
          aemu::ProgrammingErrorResult res =
              aemu::evolve_with_programming_errors(model, sched, jt, pe);
          j["tvd"] = aemu::tvd(res.mean, ref.populations);
        } else {
          aemu::LindbladResult res =
              noise_name == "scl-100ns"
                  ? aemu::evolve_scl(model, sched, jt, aemu::scl_gamma_preset(noise_name))
                  : aemu::evolve_ame(model, sched, jt, aemu::bath_preset(noise_name));
          j["tvd"] = aemu::tvd(res.populations, ref.populations);
          j["fidelity"] = aemu::fidelity(ref.final_state, res.rho);
        }
        std::cout << "analog @ JT=" << jt << " noise=" << noise_name
                  << "  tvd=" << j["tvd"].get<double>() << "\n";
      } else {
        aemu::GateCircuit circ =
            aemu::build_circuit(aemu::TrotterPlan{n_m, n_t, jt}, model, sched);
        j["n_m"] = n_m;
        j["n_t"] = n_t;
        j["hardware_layers"] = aemu::hardware_layer_count(circ);
        if (noise_name == "none") {
          aemu::Vector psi0 =
              aemu::Vector::Constant(dim, aemu::Complex(1.0 / std::sqrt(double(dim)), 0.0));
          aemu::Vector psi = aemu::apply_circuit(circ, psi0);
          j["tvd"] = aemu::tvd(aemu::basis_distribution(psi), ref.populations);
          j["fidelity"] = aemu::fidelity(psi, ref.final_state);
        } else {
          aemu::CircuitNoiseModel noise = aemu::noise_preset(noise_name);
          aemu::Matrix rho0 =
              aemu::Matrix::Constant(dim, dim, aemu::Complex(1.0 / dim, 0.0));
          aemu::Matrix rho = aemu::simulate_noisy_circuit(circ, noise, rho0);
          j["tvd"] = aemu::tvd(aemu::measure_distribution(rho, noise), ref.populations);
          j["fidelity"] = aemu::fidelity(ref.final_state, rho);
        }
        std::cout << "(" << n_m << "," << n_t << ") @ JT=" << jt << " noise=" << noise_name
                  << "  tvd=" << j["tvd"].get<double>()
                  << "  fidelity=" << j["fidelity"].get<double>() << "\n";
      }
      maybe_write(out_path, j.dump(2) + "\n");
    } else if (search->parsed()) {
      aemu::SearchResult res = aemu::find_min_steps(model, sched, jt, tvd_target);
      if (res.feasible)
        std::cout << "JT=" << jt << " -> (N_M, N_T) = (" << res.n_m << ", " << res.n_t
                  << "), product " << res.n_m * res.n_t << ", tvd " << res.tvd << "\n";
      else
        std::cout << "JT=" << jt << " -> infeasible at grid (tvd target " << tvd_target << ")\n";
      std::string csv = "JT,N_M,N_T,model,noise,tvd,fidelity\r\n";
      for (const auto& cell : res.cells)
        csv += aemu::csv_row({std::to_string(jt), std::to_string(cell.n_m),
                              std::to_string(cell.n_t), model_spec, "none",
                              std::to_string(cell.tvd), std::to_string(cell.fidelity)});
      maybe_write(out_path, csv);
    } else if (sweep->parsed()) {
      std::vector<int> grid;
      for (int v = 1; v <= nm_max; ++v) grid.push_back(v);
      aemu::CircuitNoiseModel noise = aemu::noise_preset(noise_name);
      aemu::NoisyOptimumResult res =
          aemu::noisy_optimum_magnus(model, sched, jt, noise, n_t, grid);
      std::cout << "JT=" << jt << " noise=" << noise_name << " optimum N_M=" << res.n_m
                << " (tvd " << res.tvd << ")\n";
      std::string csv = "JT,N_M,N_T,model,noise,tvd,fidelity\r\n";
      for (const auto& cell : res.cells)
        csv += aemu::csv_row({std::to_string(jt), std::to_string(cell.n_m),
                              std::to_string(cell.n_t), model_spec, noise_name,
                              std::to_string(cell.tvd), std::to_string(cell.fidelity)});
      maybe_write(out_path, csv);
    } else if (svmc->parsed()) {
      aemu::SvmcConfig cfg;
      cfg.beta = beta;
      cfg.n_trials = n_trials;
      cfg.n_sweeps = n_sweeps;
      cfg.seed = seed;
      aemu::RealVector dist = aemu::run_svmc(model, sched, cfg);
      const int dim = aemu::dense_dim(model.n_qubits);
      aemu::RealVector ref_pop;
      if (!reference_file.empty())
        ref_pop = load_distribution(reference_file, dim, model.n_qubits);
      else
        ref_pop = aemu::evolve_exact(model, sched, reference_jt).populations;
      std::cout << "beta=" << beta << " tvd=" << aemu::tvd(dist, ref_pop) << "\n";
      maybe_write(out_path, distribution_csv(dist, model.n_qubits));
    } else if (runtime->parsed()) {
      aemu::RuntimeModel rt = aemu::RuntimeModel::for_model(model);
      const double cns = aemu::estimate_circuit_runtime(n_m, n_t, rt);
      const double ans = aemu::estimate_analog_runtime(jt, rt);
      std::cout << "circuit (" << n_m << "," << n_t << "): " << cns << " ns\n";
      std::cout << "analog JT=" << jt << ": " << ans << " ns\n";
      if (ans > 0.0) std::cout << "ratio: " << cns / ans << "x\n";
    } else if (report->parsed()) {
      nlohmann::json config;
      if (!config_file.empty())
        config = nlohmann::json::parse(aemu::read_text_file(config_file));
      else if (!preset_name.empty())
        config = aemu::report_preset_config(preset_name, seed ? seed : 20240815ull);
      else
        throw std::runtime_error("report needs --preset or --config");
      if (model_spec != "t4") config["model"] = model_spec;
      const std::string dir = out_path.empty() ? "report-out" : out_path;
      aemu::ReportResult res = aemu::run_report(config, dir);
      for (const auto& f : res.files) std::cout << "wrote " << f << "\n";
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
