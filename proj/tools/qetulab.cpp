// Copyright 2026 The qetulab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch experiment driver. Subcommands reproduce the numerical artifacts
// (system-parameter table, min-max convergence, the query-count comparison,
// the noisy TFIM sweep) plus one-shot approx / phase-solve / estimate / prep
// runs. Exit codes: 0 success, 2 invariant-audit failure, 3 config error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qetulab/experiments.hpp"
#include "qetulab/qetu.hpp"
#include "qetulab/qsp.hpp"

#include <json.hpp>

namespace {

namespace fs = std::filesystem;
using qetulab::experiments::Config;

constexpr int kExitAudit = 2;
constexpr int kExitConfig = 3;

Config load_config(const std::string& path) {
  if (path.empty()) return Config::from_string("");
  return Config::from_file(path);
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << content;
}

std::string read_file(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// --check: recompute and compare byte-for-byte against the stored artifact
int check_or_write(const fs::path& out, const std::string& content,
                   bool check) {
  if (check) {
    if (!fs::exists(out)) {
      std::cerr << "check: missing reference " << out << "\n";
      return kExitAudit;
    }
    if (read_file(out) != content) {
      std::cerr << "check: output differs from " << out << "\n";
      return kExitAudit;
    }
    std::cout << "check: " << out << " reproduced bit-for-bit\n";
    return 0;
  }
  write_file(out, content);
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_approx(const Config& cfg, const fs::path& outdir, bool check) {
  using namespace qetulab;
  const double eta = cfg.num("eta", 0.1);
  const double mu = cfg.num("mu", 1.0);
  const double delta = cfg.num("delta", 0.4);
  const double c = cfg.num("c", 0.999);
  const int d = static_cast<int>(cfg.integer("degree", 20));
  const int grid = static_cast<int>(cfg.integer("grid_size", 400));

  const auto ss = cheb::shifted_sign_spec(mu, delta, eta, c);
  const auto res =
      cheb::solve_minmax(cheb::make_shifted_sign_approx(ss, d, grid));

  nlohmann::json j;
  j["degree"] = res.degree;
  j["coeffs"] = res.coeffs;
  j["epsilon_star"] = res.eps_star;
  j["spec"] = {{"eta", eta}, {"mu", mu},     {"delta", delta},
               {"c", c},     {"degree", d},  {"grid_size", grid},
               {"sigma_minus", ss.sigma_minus}, {"sigma_plus", ss.sigma_plus}};
  std::ostringstream csv;
  csv.precision(12);
  csv << "x,F\n";
  for (int i = 0; i <= 800; ++i) {
    const double x = -1.0 + 2.0 * i / 800;
    csv << x << ',' << cheb::eval_cheb(res, x) << '\n';
  }
  const int rc = check_or_write(outdir / "approx.json", j.dump(2) + "\n", check);
  if (rc != 0) return rc;
  return check_or_write(outdir / "approx.csv", csv.str(), check);
}

int cmd_phase_solve(const std::string& in, const fs::path& outdir,
                    bool check) {
  using namespace qetulab;
  const nlohmann::json j = nlohmann::json::parse(read_file(in));
  const std::vector<double> coeffs = j.at("coeffs").get<std::vector<double>>();
  const int d = j.at("degree").get<int>();
  const auto pf = qsp::solve_phases(qsp::make_qsp_target(coeffs, d));

  nlohmann::json out;
  out["d"] = pf.d;
  out["phis"] = pf.phis;
  out["residual"] = pf.residual;
  return check_or_write(outdir / "phases.json", out.dump(2) + "\n", check);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qetulab: QET-U ground-state toolkit experiment driver"};
  app.require_subcommand(1);
  app.fallthrough();  // allow `qetulab <subcommand> --config ... --out ...`

  std::string config_path, out_dir = "out", seed_set, phase_in;
  bool check = false;
  app.add_option("--config", config_path, "flat key-value config file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed-set", seed_set, "optional config overriding seeds");
  app.add_flag("--check", check, "re-run and diff against stored outputs");

  auto* c_table = app.add_subcommand("table-params", "system-parameter table");
  auto* c_conv = app.add_subcommand("convergence", "min-max degree sweep");
  auto* c_approx = app.add_subcommand("approx", "solve one min-max problem");
  auto* c_phase = app.add_subcommand("phase-solve", "phase factors for a stored polynomial");
  c_phase->add_option("--in", phase_in, "approx.json input")->required();
  auto* c_energy = app.add_subcommand("energy-estimate", "fuzzy-bisection energy run");
  auto* c_prep = app.add_subcommand("prep", "ground-state preparation run");
  auto* c_fig4 = app.add_subcommand("compare-qpe", "query-count comparison sweep");
  auto* c_fig5 = app.add_subcommand("tfim-noise", "noisy TFIM energy sweep");

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg = load_config(config_path);
    if (!seed_set.empty()) {
      const Config seeds = Config::from_file(seed_set);
      for (const char* key : {"seed", "seed_base", "seed_hamiltonian"})
        if (seeds.has(key)) cfg.set(key, seeds.str(key, ""));
    }
    const fs::path out(out_dir);

    if (c_table->parsed()) {
      return check_or_write(out / "table_params.csv",
                            qetulab::experiments::run_table_params(), check);
    }
    if (c_conv->parsed()) {
      return check_or_write(out / "convergence.csv",
                            qetulab::experiments::run_convergence(cfg), check);
    }
    if (c_approx->parsed()) return cmd_approx(cfg, out, check);
    if (c_phase->parsed()) return cmd_phase_solve(phase_in, out, check);
    if (c_energy->parsed()) {
      std::string json;
      try {
        json = qetulab::experiments::run_energy_estimate(cfg);
      } catch (const std::runtime_error& e) {
        if (std::string(e.what()).find("audit") != std::string::npos) {
          std::cerr << e.what() << "\n";
          return kExitAudit;
        }
        throw;
      }
      return check_or_write(out / "energy_estimate.json", json, check);
    }
    if (c_prep->parsed()) {
      return check_or_write(out / "prep.json",
                            qetulab::experiments::run_prep(cfg), check);
    }
    if (c_fig4->parsed()) {
      const auto res = qetulab::experiments::run_fig4_comparison(cfg);
      const int rc =
          check_or_write(out / "compare_qpe.csv", res.csv, check);
      if (rc != 0) return rc;
      return check_or_write(out / "compare_qpe_summary.json",
                            res.summary_json, check);
    }
    if (c_fig5->parsed()) {
      const auto res = qetulab::experiments::run_fig5_noise(cfg);
      return check_or_write(out / "tfim_noise.csv", res.csv, check);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    if (what.find("config") != std::string::npos) {
      std::cerr << "config error: " << what << "\n";
      return kExitConfig;
    }
    std::cerr << "error: " << what << "\n";
    return 1;
  }
  return 0;
}
