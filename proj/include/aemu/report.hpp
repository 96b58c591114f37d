#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "aemu/csv.hpp"
#include "aemu/evolve.hpp"
#include "aemu/ising.hpp"
#include "aemu/lindblad.hpp"
#include "aemu/metrics.hpp"
#include "aemu/noisy_circuit.hpp"
#include "aemu/programming_error.hpp"
#include "aemu/runtime.hpp"
#include "aemu/schedule.hpp"
#include "aemu/search.hpp"
#include "aemu/svg.hpp"
#include "aemu/svmc.hpp"
#include "aemu/types.hpp"

namespace aemu {

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Config rejected with the full list of offending keys, not just the first.
struct SchemaError : std::runtime_error {
  std::vector<std::string> keys;
  explicit SchemaError(std::vector<std::string> bad)
      : std::runtime_error("config schema error; offending keys: " + join(bad)),
        keys(std::move(bad)) {}

  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i];
    return out;
  }
};

namespace detail {

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline const char* kSweepHeader = "JT,N_M,N_T,model,noise,tvd,fidelity";

}  // namespace detail

inline std::vector<std::string> validate_report_config(const nlohmann::json& j) {
  std::vector<std::string> bad;
  if (!j.is_object()) return {"<root: expected object>"};
  if (!j.contains("model") || !(j["model"].is_string() || j["model"].is_object()))
    bad.push_back("model");
  if (j.contains("seed") && !j["seed"].is_number()) bad.push_back("seed");
  static const std::vector<std::string> known = {
      "model", "seed", "name", "sweeps", "search", "analog", "svmc", "populations",
      "runtime_curve"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) bad.push_back(it.key());
  if (j.contains("sweeps")) {
    if (!j["sweeps"].is_array()) {
      bad.push_back("sweeps");
    } else {
      int idx = 0;
      for (const auto& sw : j["sweeps"]) {
        const std::string at = "sweeps[" + std::to_string(idx++) + "].";
        if (!sw.is_object()) {
          bad.push_back(at + "<entry>");
          continue;
        }
        if (!sw.contains("name") || !sw["name"].is_string()) bad.push_back(at + "name");
        if (!sw.contains("jt") || !sw["jt"].is_array()) bad.push_back(at + "jt");
        if (!sw.contains("cells") || !sw["cells"].is_array()) bad.push_back(at + "cells");
        if (!sw.contains("noise") || !sw["noise"].is_array()) bad.push_back(at + "noise");
      }
    }
  }
  auto check_named = [&](const char* key, std::vector<std::string> required) {
    if (!j.contains(key)) return;
    if (!j[key].is_object()) {
      bad.push_back(key);
      return;
    }
    for (const auto& req : required)
      if (!j[key].contains(req)) bad.push_back(std::string(key) + "." + req);
  };
  check_named("search", {"name", "jt"});
  check_named("analog", {"name"});
  check_named("svmc", {"name", "betas", "reference_jt"});
  check_named("populations", {"name", "jt"});
  check_named("runtime_curve", {"name", "jt"});
  return bad;
}

struct ReportResult {
  std::vector<std::string> files;
  nlohmann::json manifest;
};

// Runs every section of the experiment config and writes CSV/SVG artifacts
// plus a manifest into out_dir. All randomness flows from config "seed".
inline ReportResult run_report(const nlohmann::json& config, const std::string& out_dir) {
  auto bad = validate_report_config(config);
  if (!bad.empty()) throw SchemaError(bad);
  std::filesystem::create_directories(out_dir);

  IsingModel model = config["model"].is_string()
                         ? model_preset(config["model"].get<std::string>())
                         : model_from_json(config["model"]);
  const std::string model_name =
      config["model"].is_string() ? config["model"].get<std::string>() : "custom";
  AnnealSchedule sched = AnnealSchedule::linear();
  const std::uint64_t seed = config.value("seed", 0ull);

  ReportResult res;
  res.manifest["seed"] = seed;
  res.manifest["config_hash"] = hex64(fnv1a64(config.dump()));
  res.manifest["model"] = to_json(model);
  res.manifest["files"] = nlohmann::json::array();

  auto emit = [&](const std::string& name, const std::string& content, int rows) {
    const std::string path = out_dir + "/" + name;
    write_text_file(path, content);
    res.files.push_back(path);
    res.manifest["files"].push_back(
        {{"name", name}, {"rows", rows}, {"hash", hex64(fnv1a64(content))}});
  };

  std::map<double, EvolveResult> ref_cache;
  auto reference = [&](double jt) -> const EvolveResult& {
    auto it = ref_cache.find(jt);
    if (it == ref_cache.end()) it = ref_cache.emplace(jt, evolve_exact(model, sched, jt)).first;
    return it->second;
  };

  // --- plain sweeps: fixed (JT, N_M, N_T, noise) cells ----------------------
  if (config.contains("sweeps")) {
    for (const auto& sw : config["sweeps"]) {
      std::string csv = std::string(detail::kSweepHeader) + "\r\n";
      int rows = 0;
      bool want_density_diff = sw.value("density_diff", false);
      for (const auto& jt_j : sw["jt"]) {
        const double jt = jt_j.get<double>();
        const EvolveResult& ref = reference(jt);
        for (const auto& cell : sw["cells"]) {
          const int n_m = cell[0].get<int>(), n_t = cell[1].get<int>();
          GateCircuit circ = build_circuit(TrotterPlan{n_m, n_t, jt}, model, sched);
          for (const auto& noise_j : sw["noise"]) {
            const std::string noise_name = noise_j.get<std::string>();
            double tv = 0.0, fid = 0.0;
            if (noise_name == "none") {
              const int dim = dense_dim(model.n_qubits);
              Vector psi0 = Vector::Constant(dim, Complex(1.0 / std::sqrt(double(dim)), 0.0));
              Vector psi = apply_circuit(circ, psi0);
              tv = tvd(basis_distribution(psi), ref.populations);
              fid = fidelity(psi, ref.final_state);
            } else {
              CircuitNoiseModel noise = noise_preset(noise_name);
              const int dim = dense_dim(model.n_qubits);
              Matrix rho0 = Matrix::Constant(dim, dim, Complex(1.0 / dim, 0.0));
              Matrix rho = simulate_noisy_circuit(circ, noise, rho0);
              tv = tvd(measure_distribution(rho, noise), ref.populations);
              fid = fidelity(ref.final_state, rho);
              if (want_density_diff) {
                Matrix rho_ref = ref.final_state * ref.final_state.adjoint();
                RealMatrix diff = density_diff_map(rho, rho_ref);
                std::vector<std::vector<double>> cells_v(diff.rows());
                std::vector<std::string> labels;
                for (int r = 0; r < diff.rows(); ++r) {
                  labels.push_back(std::to_string(r));
                  for (int c2 = 0; c2 < diff.cols(); ++c2) cells_v[r].push_back(diff(r, c2));
                }
                emit(sw["name"].get<std::string>() + "_density_diff.svg",
                     svg::heatmap("element-wise |rho - rho_ref|, JT=" + detail::num(jt) +
                                      " (" + std::to_string(n_m) + "," + std::to_string(n_t) +
                                      ") " + noise_name,
                                  "column", "row", labels, labels, cells_v),
                     diff.rows());
                want_density_diff = false;  // one per sweep is plenty
              }
            }
            csv += csv_row({detail::num(jt), std::to_string(n_m), std::to_string(n_t),
                            model_name, noise_name, detail::num(tv), detail::num(fid)});
            ++rows;
          }
        }
      }
      emit(sw["name"].get<std::string>() + ".csv", csv, rows);
    }
  }

  // --- step-count search over the default grid ------------------------------
  if (config.contains("search")) {
    const auto& sc = config["search"];
    std::string csv = std::string(detail::kSweepHeader) + "\r\n";
    int rows = 0;
    std::vector<double> jts;
    for (const auto& jt_j : sc["jt"]) jts.push_back(jt_j.get<double>());
    std::vector<SearchResult> results;
    for (double jt : jts) {
      SearchResult sr = find_min_steps(model, sched, jt);
      results.push_back(sr);
      csv += csv_row({detail::num(jt), std::to_string(sr.n_m), std::to_string(sr.n_t),
                      model_name, sr.feasible ? "none" : "infeasible", detail::num(sr.tvd),
                      detail::num(sr.fidelity)});
      ++rows;
    }
    emit(sc["name"].get<std::string>() + ".csv", csv, rows);

    if (sc.value("emit_heatmaps", false) && !results.empty()) {
      // (N_M, N_T) map at the largest JT searched
      const SearchResult& last = results.back();
      std::map<int, std::map<int, double>> grid;
      for (const auto& cell : last.cells) grid[cell.n_t][cell.n_m] = cell.tvd;
      std::vector<std::string> cols, rowsl;
      std::vector<std::vector<double>> vals;
      for (const auto& [nt, row] : grid) {
        rowsl.push_back(std::to_string(nt));
        std::vector<double> v;
        cols.clear();
        for (const auto& [nm, tv] : row) {
          cols.push_back(std::to_string(nm));
          v.push_back(tv);
        }
        vals.push_back(v);
      }
      emit(sc["name"].get<std::string>() + "_heatmap_nm_nt.svg",
           svg::heatmap("TVD over step grid, JT=" + detail::num(last.JT), "Magnus steps",
                        "Trotter steps", cols, rowsl, vals),
           static_cast<int>(vals.size()));

      // (N_M, JT) map at N_T fixed to 2
      std::vector<std::string> jt_labels;
      std::vector<std::vector<double>> vals2;
      std::vector<std::string> nm_labels;
      for (const auto& sr : results) {
        jt_labels.push_back(detail::num(sr.JT));
        std::vector<double> v;
        nm_labels.clear();
        for (const auto& cell : sr.cells)
          if (cell.n_t == 2) {
            nm_labels.push_back(std::to_string(cell.n_m));
            v.push_back(cell.tvd);
          }
        vals2.push_back(v);
      }
      emit(sc["name"].get<std::string>() + "_heatmap_nm_jt.svg",
           svg::heatmap("TVD at 2 Trotter steps", "Magnus steps", "JT", nm_labels, jt_labels,
                        vals2),
           static_cast<int>(vals2.size()));
    }
  }

  // --- analog master equations and programming errors -----------------------
  if (config.contains("analog")) {
    const auto& an = config["analog"];
    std::string csv = std::string(detail::kSweepHeader) + "\r\n";
    int rows = 0;
    std::vector<svg::Series> series;
    if (an.contains("scl")) {
      const double gamma = an["scl"].value("gamma", 5e-3);
      svg::Series s;
      s.label = "SCL";
      for (const auto& jt_j : an["scl"]["jt"]) {
        const double jt = jt_j.get<double>();
        LindbladResult lr = evolve_scl(model, sched, jt, gamma);
        const double tv = tvd(lr.populations, reference(jt).populations);
        s.points.emplace_back(jt, tv);
        csv += csv_row({detail::num(jt), "0", "0", model_name, "scl", detail::num(tv),
                        detail::num(fidelity(reference(jt).final_state, lr.rho))});
        ++rows;
      }
      series.push_back(s);
    }
    if (an.contains("ame")) {
      for (const auto& bath_j : an["ame"]) {
        const std::string preset = bath_j["preset"].get<std::string>();
        OhmicBath bath = bath_preset(preset);
        svg::Series s;
        s.label = "AME " + preset;
        for (const auto& jt_j : bath_j["jt"]) {
          const double jt = jt_j.get<double>();
          LindbladResult lr = evolve_ame(model, sched, jt, bath);
          const double tv = tvd(lr.populations, reference(jt).populations);
          s.points.emplace_back(jt, tv);
          csv += csv_row({detail::num(jt), "0", "0", model_name, preset, detail::num(tv),
                          detail::num(fidelity(reference(jt).final_state, lr.rho))});
          ++rows;
        }
        series.push_back(s);
      }
    }
    if (an.contains("pe")) {
      ProgrammingErrorModel pe;
      pe.sigma = an["pe"].value("sigma", 0.03);
      pe.n_realizations = an["pe"].value("n_realizations", 1000);
      pe.seed = seed;
      svg::Series s;
      s.label = "PE";
      for (const auto& jt_j : an["pe"]["jt"]) {
        const double jt = jt_j.get<double>();
        ProgrammingErrorResult pr = evolve_with_programming_errors(model, sched, jt, pe);
        const double tv = tvd(pr.mean, reference(jt).populations);
        s.points.emplace_back(jt, tv);
        csv += csv_row({detail::num(jt), "0", "0", model_name, "pe", detail::num(tv), ""});
        ++rows;
      }
      series.push_back(s);
    }
    emit(an["name"].get<std::string>() + ".csv", csv, rows);
    emit(an["name"].get<std::string>() + ".svg",
         svg::line_plot("TVD vs. anneal time under analog noise", "JT", "TVD", series, true,
                        false),
         rows);
  }

  // --- classical rotor baseline ---------------------------------------------
  if (config.contains("svmc")) {
    const auto& sv = config["svmc"];
    std::string csv = std::string(detail::kSweepHeader) + "\r\n";
    int rows = 0;
    const double ref_jt = sv["reference_jt"].get<double>();
    const RealVector& ref_pop = reference(ref_jt).populations;
    for (const auto& beta_j : sv["betas"]) {
      SvmcConfig cfg;
      cfg.beta = beta_j.get<double>();
      cfg.n_sweeps = sv.value("n_sweeps", 10001);
      cfg.n_trials = sv.value("n_trials", 1000);
      cfg.seed = seed;
      RealVector dist = run_svmc(model, sched, cfg);
      csv += csv_row({detail::num(ref_jt), "0", "0", model_name,
                      "svmc-beta-" + detail::num(cfg.beta), detail::num(tvd(dist, ref_pop)), ""});
      ++rows;
    }
    emit(sv["name"].get<std::string>() + ".csv", csv, rows);
  }

  // --- ground-state populations vs. JT --------------------------------------
  if (config.contains("populations")) {
    const auto& pc = config["populations"];
    const auto gs = ground_state_indices(model);
    std::string csv = "JT,state,probability\r\n";
    int rows = 0;
    std::vector<svg::Series> series(gs.size());
    for (std::size_t g = 0; g < gs.size(); ++g) series[g].label = state_label(gs[g], model.n_qubits);
    for (const auto& jt_j : pc["jt"]) {
      const double jt = jt_j.get<double>();
      const EvolveResult& ref = reference(jt);
      for (std::size_t g = 0; g < gs.size(); ++g) {
        series[g].points.emplace_back(jt, ref.populations[gs[g]]);
        csv += csv_row({detail::num(jt), state_label(gs[g], model.n_qubits),
                        detail::num(ref.populations[gs[g]])});
        ++rows;
      }
    }
    emit(pc["name"].get<std::string>() + ".csv", csv, rows);
    emit(pc["name"].get<std::string>() + ".svg",
         svg::line_plot("Ground-state populations vs. anneal time", "JT", "probability", series,
                        true, false),
         rows);
  }

  // --- runtime comparison ----------------------------------------------------
  if (config.contains("runtime_curve")) {
    const auto& rc = config["runtime_curve"];
    RuntimeModel rt = RuntimeModel::for_model(model);
    std::string csv = "JT,N_M,N_T,circuit_ns,analog_ns\r\n";
    int rows = 0;
    svg::Series circuit_s{"circuit", {}}, analog_s{"analog", {}};
    for (const auto& jt_j : rc["jt"]) {
      const double jt = jt_j.get<double>();
      SearchResult sr = find_min_steps(model, sched, jt);
      const double cns = sr.feasible ? estimate_circuit_runtime(sr.n_m, sr.n_t, rt) : 0.0;
      const double ans = estimate_analog_runtime(jt, rt);
      circuit_s.points.emplace_back(jt, cns);
      analog_s.points.emplace_back(jt, ans);
      csv += csv_row({detail::num(jt), std::to_string(sr.n_m), std::to_string(sr.n_t),
                      detail::num(cns), detail::num(ans)});
      ++rows;
    }
    emit(rc["name"].get<std::string>() + ".csv", csv, rows);
    emit(rc["name"].get<std::string>() + ".svg",
         svg::line_plot("Estimated wall-clock time", "JT", "ns", {circuit_s, analog_s}, true,
                        true),
         rows);
  }

  const std::string manifest_path = out_dir + "/manifest.json";
  write_text_file(manifest_path, res.manifest.dump(2) + "\n");
  res.files.push_back(manifest_path);
  return res;
}

// Built-in experiment configurations mirroring the published tables/figures.
inline nlohmann::json report_preset_config(const std::string& name, std::uint64_t seed = 20240815) {
  nlohmann::json j;
  j["model"] = "t4";
  j["seed"] = seed;
  j["name"] = name;
  if (name == "table1") {
    j["search"] = {{"name", "table1"},
                   {"jt", {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}},
                   {"emit_heatmaps", true}};
  } else if (name == "table2") {
    j["sweeps"] = nlohmann::json::array();
    nlohmann::json sw;
    sw["name"] = "table2";
    sw["jt"] = {1.06};
    sw["cells"] = {{2, 2}};
    sw["noise"] = {"noisy-1", "noisy-2", "noisy-3"};
    sw["density_diff"] = true;
    j["sweeps"].push_back(sw);
    sw["name"] = "table2b";
    sw["jt"] = {3.40};
    sw["cells"] = {{3, 2}};
    sw["density_diff"] = false;
    j["sweeps"].push_back(sw);
    sw["name"] = "table2c";
    sw["jt"] = {5.26};
    sw["cells"] = {{4, 2}};
    j["sweeps"].push_back(sw);
    sw["name"] = "table2d";
    sw["jt"] = {100.0};
    sw["cells"] = {{70, 2}};
    j["sweeps"].push_back(sw);
  } else if (name == "table3") {
    j["svmc"] = {{"name", "table3"}, {"betas", {3.19, 0.5092}}, {"reference_jt", 1000.0}};
  } else if (name == "fig-analog") {
    j["analog"] = {{"name", "fig-analog"},
                   {"scl", {{"gamma", 5e-3}, {"jt", {1.0, 5.0, 10.0, 20.0, 30.0, 40.0}}}},
                   {"ame",
                    {{{"preset", "ame-15mK"}, {"jt", {1.0, 5.0, 10.0, 20.0, 30.0, 40.0}}},
                     {{"preset", "ame-2.38mK"}, {"jt", {10.0, 40.0}}}}},
                   {"pe", {{"sigma", 0.03}, {"n_realizations", 200}, {"jt", {50.0, 100.0, 200.0, 400.0}}}}};
  } else if (name == "fig-populations") {
    j["populations"] = {{"name", "fig-populations"},
                        {"jt", {0.01, 0.1, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0}}};
  } else if (name == "fig-runtime") {
    j["runtime_curve"] = {{"name", "fig-runtime"}, {"jt", {0.01, 0.1, 1.0, 10.0, 100.0}}};
  } else if (name == "empty") {
    j["sweeps"] = nlohmann::json::array();
    nlohmann::json sw;
    sw["name"] = "empty";
    sw["jt"] = nlohmann::json::array();
    sw["cells"] = nlohmann::json::array();
    sw["noise"] = nlohmann::json::array();
    j["sweeps"].push_back(sw);
  } else {
    throw std::invalid_argument("unknown report preset: " + name);
  }
  return j;
}

}  // namespace aemu
