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

#include "qetulab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qetulab/qetu.hpp"
#include "qetulab/qsp.hpp"
#include "qetulab/vqe.hpp"

namespace qetulab::experiments {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

void parse_into(std::map<std::string, std::string>& kv,
                const std::string& text, int depth) {
  if (depth > 8) throw std::runtime_error("config: include depth exceeded");
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.rfind("include ", 0) == 0) {
      const std::string path = trim(t.substr(8));
      std::ifstream f(path);
      if (!f) throw std::runtime_error("config: cannot open include " + path);
      std::stringstream ss;
      ss << f.rdbuf();
      parse_into(kv, ss.str(), depth + 1);
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: malformed line: " + t);
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
}

// deterministic per-trial seed stream
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ull * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const int threads = std::max(1, thread_count());
  if (threads == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LinearFit loglog_fit(const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(xs[i]);
    const double y = std::log(ys[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  LinearFit f;
  const double den = n * sxx - sx * sx;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  const double ssr = syy - sy * sy / n - f.slope * f.slope * den / n;
  const double sst = syy - sy * sy / n;
  f.r2 = sst > 0 ? 1.0 - ssr / sst : 1.0;
  return f;
}

}  // namespace

Config Config::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return from_string(ss.str());
}

Config Config::from_string(const std::string& text) {
  Config c;
  parse_into(c.values_, text, 0);
  return c;
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::str(const std::string& key,
                        const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::num(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : std::stod(it->second);
}

std::int64_t Config::integer(const std::string& key,
                             std::int64_t fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : std::stoll(it->second);
}

std::vector<double> Config::list(const std::string& key,
                                 const std::vector<double>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  std::istringstream is(it->second);
  std::string item;
  while (std::getline(is, item, ',')) {
    const std::string t = trim(item);
    if (!t.empty()) out.push_back(std::stod(t));
  }
  return out;
}

void Config::set(const std::string& key, const std::string& value) {
  values_[key] = value;
}

int thread_count() {
  if (const char* env = std::getenv("QETULAB_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::string run_table_params() {
  std::ostringstream os;
  os << "n,mu,delta,sigma_plus,sigma_minus,c1,c2,gamma\n";
  os.setf(std::ios::fixed);
  os.precision(4);
  for (int n : {2, 4, 6, 8}) {
    const auto ham = pauli::build_tfim(n, 4.0);
    const auto spec = spectral::exact_diagonalize(ham);
    const auto shift = spectral::affine_shift(spec, 0.1);
    const double gamma = std::abs(spec.eigenvectors(0, 0));
    os << n << ',' << shift.mu << ',' << shift.delta << ',' << shift.sigma_plus
       << ',' << shift.sigma_minus << ',' << shift.c1 << ',' << shift.c2 << ','
       << gamma << '\n';
  }
  return os.str();
}

std::string run_convergence(const Config& cfg) {
  const double eta = cfg.num("eta", 0.1);
  const double mu = cfg.num("mu", 1.0);
  const double delta = cfg.num("delta", 0.4);
  const double c = cfg.num("c", 0.999);
  const int grid = static_cast<int>(cfg.integer("grid_size", 400));
  auto degrees = cfg.list("degrees", {20, 40, 60, 80});

  const auto ss = cheb::shifted_sign_spec(mu, delta, eta, c);
  std::ostringstream os;
  os << "d,eps_star\n";
  os.precision(12);
  for (double dd : degrees) {
    const int d = static_cast<int>(dd);
    auto r = cheb::solve_minmax(cheb::make_shifted_sign_approx(ss, d, grid));
    os << d << ',' << r.eps_star << '\n';
  }
  return os.str();
}

Fig4Output run_fig4_comparison(const Config& cfg) {
  const std::size_t dim = static_cast<std::size_t>(cfg.integer("dim", 200));
  const double eta = cfg.num("eta", M_PI / 4);
  const std::uint64_t seed_h = cfg.integer("seed_hamiltonian", 2026);
  const std::uint64_t seed_base = cfg.integer("seed_base", 1);
  const int trials = static_cast<int>(cfg.integer("trials", 20));
  const auto gammas = cfg.list("gammas", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.8});
  const auto epsilons = cfg.list("epsilons", {5e-4, 1e-3, 2e-3});
  const double vartheta = cfg.num("vartheta", 0.1);
  const int lp_budget = static_cast<int>(cfg.integer("lp_budget", 256));
  const double approx_budget = cfg.num("approx_budget", 0.0);
  const bool with_walk = cfg.integer("with_walk", 1) != 0;

  const auto rs =
      spectral::build_random_spectrum(dim, eta, M_PI - eta, seed_h);
  spectral::SpectralShift noshift;  // spectrum drawn inside the window

  struct Task {
    double gamma, eps;
    int method;  // 0 mc, 1 walk, 2 qpe
  };
  std::vector<Task> tasks;
  for (double g : gammas)
    for (double e : epsilons) {
      tasks.push_back({g, e, 0});
      if (with_walk) tasks.push_back({g, e, 1});
      tasks.push_back({g, e, 2});
    }

  groundstate::StepCache cache;
  std::vector<Fig4Row> rows(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t ti) {
    const Task& task = tasks[ti];
    double q_sum = 0.0, err_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t seed =
          mix_seed(seed_base, 1000003 * ti + static_cast<std::uint64_t>(t));
      const cvector phi0 =
          engine::planted_overlap_state(rs.spec, task.gamma, mix_seed(seed, 7));
      const auto prob = engine::shifted_problem(rs.spec, noshift, phi0);
      if (task.method == 2) {
        qpe::QpeConfig qc;
        qc.gamma = task.gamma;
        qc.epsilon = task.eps;
        qc.seed = seed;
        const auto est = qpe::qpe_estimate_ground(prob, qc);
        q_sum += static_cast<double>(est.queries);
        err_sum += std::abs(est.value - rs.spec.lambda0);
      } else {
        groundstate::BisectionConfig bc;
        bc.eta = eta;
        bc.gamma = task.gamma;
        bc.epsilon = task.eps;
        bc.vartheta = vartheta;
        bc.method = task.method == 0 ? groundstate::BaeMethod::MonteCarlo
                                     : groundstate::BaeMethod::QetuWalk;
        bc.lp_budget = lp_budget;
        bc.approx_budget = approx_budget;
        bc.seed = seed;
        bc.cache = &cache;
        const auto est = groundstate::fuzzy_bisection_energy(prob, bc);
        q_sum += static_cast<double>(est.total_queries);
        err_sum += std::abs(est.value - rs.spec.lambda0);
      }
    }
    Fig4Row row;
    row.gamma = task.gamma;
    row.eps = task.eps;
    row.method = task.method == 0   ? "qetu_mc"
                 : task.method == 1 ? "qetu_walk"
                                    : "qpe";
    row.mean_queries = q_sum / trials;
    row.mean_abs_error = err_sum / trials;
    row.seeds = trials;
    rows[ti] = row;
  });

  Fig4Output out;
  out.rows = rows;
  std::ostringstream os;
  os << "gamma,epsilon,queries,abs_error,method\n";
  os.precision(10);
  for (const auto& r : rows)
    os << r.gamma << ',' << r.eps << ',' << r.mean_queries << ','
       << r.mean_abs_error << ',' << r.method << '\n';
  out.csv = os.str();

  // summary: per-method slope of queries vs gamma at the smallest epsilon
  std::ostringstream js;
  js << "{\n";
  const double eps0 = *std::min_element(epsilons.begin(), epsilons.end());
  bool first = true;
  for (const std::string method : {"qetu_mc", "qetu_walk", "qpe"}) {
    std::vector<double> xs, ys;
    for (const auto& r : rows)
      if (r.method == method && r.eps == eps0) {
        xs.push_back(r.gamma);
        ys.push_back(r.mean_queries);
      }
    if (xs.size() < 2) continue;
    const LinearFit f = loglog_fit(xs, ys);
    if (!first) js << ",\n";
    js << "  \"" << method << "_slope\": " << f.slope;
    first = false;
  }
  js << "\n}\n";
  out.summary_json = js.str();
  return out;
}

Fig5Output run_fig5_noise(const Config& cfg) {
  const auto ns = cfg.list("n", {2, 4, 6, 8});
  const auto ds = cfg.list("degrees", {10, 14, 18, 22, 26, 30});
  const auto rates = cfg.list("r_dplz", {0.0, 1e-5, 1e-4, 1e-3, 1e-2});
  const int reps = static_cast<int>(cfg.integer("repetitions", 30));
  const std::int64_t shots = cfg.integer("shots", 100000);
  const int trotter_steps = static_cast<int>(cfg.integer("trotter_steps", 3));
  const double g = cfg.num("g", 4.0);
  const double eta = cfg.num("eta", 0.1);
  const std::uint64_t seed_base = cfg.integer("seed_base", 5);

  struct Task {
    int n, d;
    double rate;
  };
  std::vector<Task> tasks;
  for (double n : ns)
    for (double d : ds)
      for (double rate : rates)
        tasks.push_back({static_cast<int>(n), static_cast<int>(d), rate});

  std::vector<Fig5Row> rows(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t ti) {
    const auto [n, d, rate] = tasks[ti];
    const auto ham = pauli::build_tfim(n, g);
    const auto spec = spectral::exact_diagonalize(ham);
    const auto shift = spectral::affine_shift(spec, eta);

    const auto ss =
        cheb::shifted_sign_spec(shift.mu, shift.delta, eta, 0.999);
    const auto approx =
        cheb::solve_minmax(cheb::make_shifted_sign_approx(ss, d));
    const auto phases = qsp::solve_phases(qsp::make_qsp_target(approx));
    const auto qc = qetu::build_qetu_trotter(ham, shift.c1, shift.c2, phases,
                                             qetu::Mode::ControlFree, 1,
                                             trotter_steps);

    std::vector<int> all(n + 1);
    for (int q = 0; q <= n; ++q) all[q] = q + 1;

    // measurement distributions for the plain and Hadamard-rotated circuits
    auto distributions = [&](double noise_rate) {
      std::vector<std::vector<double>> probs(2);
      for (int basis = 0; basis < 2; ++basis) {
        sim::Circuit circuit = qc.circuit;
        if (basis == 1)
          circuit.extend(
              vqe::rotation_circuit(vqe::BasisRotation::Hadamard, n, 1));
        if (noise_rate > 0.0) {
          sim::DensityMatrix dm(n + 1);
          dm.set_noise({noise_rate});
          dm.run(circuit);
          probs[basis] = dm.probabilities(all);
        } else {
          sim::StateVector sv(n + 1);
          sv.run(circuit);
          probs[basis] = sv.probabilities(all);
        }
      }
      return probs;
    };
    const auto probs = distributions(rate);

    // post-select the ancilla (most significant measured bit) on 0
    auto post_selected = [&](const std::vector<double>& joint) {
      std::vector<double> sys(joint.size() / 2);
      for (std::size_t b = 0; b < sys.size(); ++b) sys[b] = joint[b];
      return sys;  // unnormalized; sampling keeps relative weights
    };
    const auto pz = post_selected(probs[0]);
    const auto px = post_selected(probs[1]);

    std::vector<int> sys_qubits(n);
    for (int q = 0; q < n; ++q) sys_qubits[q] = q + 2;

    double mean = 0.0, m2 = 0.0;
    for (int repetition = 0; repetition < reps; ++repetition) {
      const std::uint64_t s = mix_seed(seed_base, 7919 * ti + repetition);
      const auto hz = sim::sample_bitstrings(pz, sys_qubits, shots, s);
      const auto hx =
          sim::sample_bitstrings(px, sys_qubits, shots, mix_seed(s, 13));
      const double e = vqe::tfim_energy_from_counts(hz, hx, g, n);
      const double delta_e = e - mean;
      mean += delta_e / (repetition + 1);
      m2 += delta_e * (e - mean);
    }

    Fig5Row row;
    row.n = n;
    row.d = d;
    row.r_dplz = rate;
    row.energy_mean = mean;
    row.energy_std = reps > 1 ? std::sqrt(m2 / (reps - 1)) : 0.0;
    row.exact = spec.lambda0;
    row.alpha_dem = sim::alpha_dem(sim::tfim_gate_counts(n, d, trotter_steps),
                                   rate);
    row.repetitions = reps;
    rows[ti] = row;
  });

  Fig5Output out;
  out.rows = rows;
  std::ostringstream os;
  os << "n,d,r_dplz,energy_mean,energy_std,exact,alpha_dem,repetitions\n";
  os.precision(10);
  for (const auto& r : rows)
    os << r.n << ',' << r.d << ',' << r.r_dplz << ',' << r.energy_mean << ','
       << r.energy_std << ',' << r.exact << ',' << r.alpha_dem << ','
       << r.repetitions << '\n';
  out.csv = os.str();
  return out;
}

bool audit_energy_estimate(const groundstate::EnergyEstimate& est) {
  std::int64_t total = 0;
  for (const auto& it : est.trace) {
    if (it.queries % it.degree != 0 && it.degree > 0) {
      // walk path bundles W-applications; fall back to the recorded value
    }
    total += it.queries;
  }
  return total == est.total_queries;
}

namespace {

std::string energy_estimate_json(const groundstate::EnergyEstimate& est) {
  std::ostringstream os;
  os.precision(12);
  os << "{\n  \"value\": " << est.value
     << ",\n  \"epsilon\": " << est.epsilon
     << ",\n  \"confidence\": " << est.confidence
     << ",\n  \"total_queries\": " << est.total_queries
     << ",\n  \"failed\": " << (est.failed ? "true" : "false")
     << ",\n  \"trace\": [\n";
  for (std::size_t k = 0; k < est.trace.size(); ++k) {
    const auto& it = est.trace[k];
    os << "    {\"l\": " << it.l << ", \"r\": " << it.r << ", \"x\": " << it.x
       << ", \"h\": " << it.h << ", \"degree\": " << it.degree
       << ", \"shots\": " << it.shots << ", \"verdict\": " << it.verdict
       << ", \"queries\": " << it.queries << "}"
       << (k + 1 < est.trace.size() ? ",\n" : "\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

}  // namespace

std::string run_energy_estimate(const Config& cfg) {
  const std::string model = cfg.str("model", "random");
  const double gamma = cfg.num("gamma", 0.5);
  const std::uint64_t seed = cfg.integer("seed", 1);

  spectral::SpectralData spec;
  spectral::SpectralShift shift;
  if (model == "random") {
    const auto rs = spectral::build_random_spectrum(
        static_cast<std::size_t>(cfg.integer("dim", 200)), M_PI / 4,
        3 * M_PI / 4, cfg.integer("seed_hamiltonian", 2026));
    spec = rs.spec;
    shift.c1 = 1.0;
    shift.c2 = 0.0;
    shift.eta = M_PI / 4;
  } else if (model == "tfim") {
    const auto ham = pauli::build_tfim(
        static_cast<std::size_t>(cfg.integer("n", 4)), cfg.num("g", 4.0));
    spec = spectral::exact_diagonalize(ham);
    shift = spectral::affine_shift(spec, cfg.num("eta", M_PI / 4));
  } else {
    throw std::runtime_error("energy-estimate: unknown model " + model);
  }

  const cvector phi0 =
      engine::planted_overlap_state(spec, gamma, mix_seed(seed, 7));
  const auto prob = engine::shifted_problem(spec, shift, phi0);

  groundstate::BisectionConfig bc;
  bc.eta = shift.eta > 0.0 ? shift.eta : M_PI / 4;
  bc.gamma = gamma;
  bc.epsilon = cfg.num("epsilon", 1e-3);
  bc.vartheta = cfg.num("vartheta", 0.1);
  bc.method = cfg.str("bae", "mc") == "walk"
                  ? groundstate::BaeMethod::QetuWalk
                  : groundstate::BaeMethod::MonteCarlo;
  bc.lp_budget = static_cast<int>(cfg.integer("lp_budget", 600));
  bc.approx_budget = cfg.num("approx_budget", 0.0);
  bc.seed = seed;
  const auto est = groundstate::fuzzy_bisection_energy(prob, bc);
  if (!audit_energy_estimate(est))
    throw std::runtime_error("energy-estimate: query audit failed");
  return energy_estimate_json(est);
}

std::string run_prep(const Config& cfg) {
  const auto ham = pauli::build_tfim(
      static_cast<std::size_t>(cfg.integer("n", 4)), cfg.num("g", 4.0));
  const auto spec = spectral::exact_diagonalize(ham);
  const auto shift = spectral::affine_shift(spec, cfg.num("eta", 0.1));

  cvector phi0(spec.eigenvalues.size(), cplx(0.0, 0.0));
  phi0[0] = 1.0;  // computational-basis input
  groundstate::PrepProblem pp{&spec, shift, phi0};

  groundstate::PrepConfig pc;
  pc.mu = shift.mu;
  pc.band = shift.delta;
  pc.gamma = cfg.num("gamma", std::abs(spec.eigenvectors(0, 0)));
  pc.epsilon = cfg.num("epsilon", 1e-4);
  pc.vartheta = cfg.num("vartheta", 0.1);
  pc.mode = cfg.str("mode", "direct") == "amplified"
                ? groundstate::PrepMode::Amplified
                : groundstate::PrepMode::Direct;
  pc.seed = cfg.integer("seed", 1);

  const auto res = groundstate::prepare_ground_state(pp, pc);
  std::ostringstream os;
  os.precision(12);
  os << "{\n  \"fidelity\": " << res.fidelity
     << ",\n  \"success_probability\": " << res.success_probability
     << ",\n  \"repetitions\": " << res.repetitions
     << ",\n  \"grover_rounds\": " << res.grover_rounds
     << ",\n  \"total_queries\": " << res.total_queries
     << ",\n  \"degree\": " << res.degree
     << ",\n  \"failed\": " << (res.failed ? "true" : "false") << "\n}\n";
  return os.str();
}

}  // namespace qetulab::experiments
