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

#include "qetulab/vqe.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qetulab::vqe {

namespace {

using pauli::Op;

// letter type of a term: Z-only, X-only, Y-only (identity letters aside)
int letter_class(const pauli::PauliString& p) {
  int cls = -1;
  for (Op op : p.ops) {
    if (op == Op::I) continue;
    const int c = op == Op::Z ? 0 : op == Op::X ? 1 : 2;
    if (cls == -1) cls = c;
    if (cls != c) return -2;  // mixed
  }
  return cls;  // -1 for the identity term
}

std::uint64_t parity_mask(const pauli::PauliString& p) {
  std::uint64_t mask = 0;
  const std::size_t n = p.n();
  for (std::size_t q = 0; q < n; ++q)
    if (p.ops[q] != Op::I) mask |= std::uint64_t{1} << (n - 1 - q);
  return mask;
}

}  // namespace

std::vector<MeasurementGroup> make_measurement_groups(
    const pauli::PauliSumHamiltonian& h) {
  MeasurementGroup gz, gx, gy;
  gz.rotation = BasisRotation::Identity;
  gx.rotation = BasisRotation::Hadamard;
  gy.rotation = BasisRotation::HadamardSdag;
  for (const auto& term : h.all_terms()) {
    const int cls = letter_class(term);
    if (cls == -2)
      throw std::runtime_error(
          "make_measurement_groups: mixed-letter term is not diagonalized by "
          "a product rotation");
    const MeasuredTerm mt{term.coeff, parity_mask(term)};
    if (cls == -1 || cls == 0)
      gz.terms.push_back(mt);
    else if (cls == 1)
      gx.terms.push_back(mt);
    else
      gy.terms.push_back(mt);
  }
  std::vector<MeasurementGroup> out;
  for (auto& g : {gz, gx, gy})
    if (!g.terms.empty()) out.push_back(g);
  return out;
}

sim::Circuit rotation_circuit(BasisRotation rot, int n, int qubit_offset) {
  sim::Circuit c;
  c.nq = n + qubit_offset;
  for (int q = 1; q <= n; ++q) {
    const int target = q + qubit_offset;
    if (rot == BasisRotation::Hadamard) {
      c.append(sim::hadamard(target));
    } else if (rot == BasisRotation::HadamardSdag) {
      c.append(sim::phase_gate_s_dag(target));
      c.append(sim::hadamard(target));
    }
  }
  return c;
}

double group_energy_from_counts(const MeasurementGroup& group,
                                const sim::Histogram& counts) {
  if (counts.shots <= 0)
    throw std::invalid_argument("group_energy_from_counts: empty histogram");
  double e = 0.0;
  for (const auto& term : group.terms) {
    if (term.mask == 0) {
      e += term.coeff;
      continue;
    }
    std::int64_t signed_sum = 0;
    for (const auto& [bits, cnt] : counts.counts) {
      const int par = __builtin_popcountll(bits & term.mask) & 1;
      signed_sum += par ? -cnt : cnt;
    }
    e += term.coeff * static_cast<double>(signed_sum) /
         static_cast<double>(counts.shots);
  }
  return e;
}

double grouped_energy(const std::vector<MeasurementGroup>& groups,
                      const std::vector<sim::Histogram>& histograms) {
  if (groups.size() != histograms.size())
    throw std::invalid_argument("grouped_energy: group/histogram mismatch");
  double e = 0.0;
  for (std::size_t k = 0; k < groups.size(); ++k)
    e += group_energy_from_counts(groups[k], histograms[k]);
  return e;
}

double tfim_energy_from_counts(const sim::Histogram& counts_z,
                               const sim::Histogram& counts_x, double g,
                               int n) {
  if (counts_z.shots <= 0 || counts_x.shots <= 0)
    throw std::invalid_argument("tfim_energy_from_counts: empty histogram");
  double e = 0.0;
  for (int j = 0; j + 1 < n; ++j) {
    const std::uint64_t mask = (std::uint64_t{3} << (n - 2 - j));
    std::int64_t s = 0;
    for (const auto& [bits, cnt] : counts_z.counts)
      s += (__builtin_popcountll(bits & mask) & 1) ? -cnt : cnt;
    e -= static_cast<double>(s) / counts_z.shots;
  }
  for (int j = 0; j < n; ++j) {
    const std::uint64_t mask = std::uint64_t{1} << (n - 1 - j);
    std::int64_t s = 0;
    for (const auto& [bits, cnt] : counts_x.counts)
      s += (bits & mask) ? -cnt : cnt;
    e -= g * static_cast<double>(s) / counts_x.shots;
  }
  return e;
}

EnergyEstimate grouped_energy_with_error(
    const std::vector<MeasurementGroup>& groups,
    const std::vector<sim::Histogram>& histograms) {
  if (groups.size() != histograms.size())
    throw std::invalid_argument("grouped_energy_with_error: size mismatch");
  EnergyEstimate out;
  double var = 0.0;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const auto& counts = histograms[k];
    if (counts.shots <= 0)
      throw std::invalid_argument("grouped_energy_with_error: empty histogram");
    // per-shot group value v(z) = sum_t coeff_t (-1)^{parity_t(z)}
    double m1 = 0.0, m2 = 0.0;
    for (const auto& [bits, cnt] : counts.counts) {
      double v = 0.0;
      for (const auto& term : groups[k].terms) {
        const int par = __builtin_popcountll(bits & term.mask) & 1;
        v += par ? -term.coeff : term.coeff;
      }
      const double w = static_cast<double>(cnt) / counts.shots;
      m1 += w * v;
      m2 += w * v * v;
    }
    out.energy += m1;
    var += std::max(0.0, m2 - m1 * m1) / static_cast<double>(counts.shots);
  }
  out.stderr_ = std::sqrt(var);
  return out;
}

std::string EnergyEstimate::to_json() const {
  std::ostringstream os;
  os.precision(12);
  os << "{\"energy\": " << energy << ", \"stderr\": " << stderr_ << "}";
  return os.str();
}

sim::Histogram parse_histogram_csv(const std::string& csv) {
  sim::Histogram h;
  std::istringstream is(csv);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line.rfind("bitstring", 0) == 0) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("parse_histogram_csv: malformed line " + line);
    const std::string bits = line.substr(0, comma);
    const std::int64_t cnt = std::stoll(line.substr(comma + 1));
    std::uint64_t packed = 0;
    for (char c : bits) {
      if (c != '0' && c != '1')
        throw std::invalid_argument("parse_histogram_csv: bad bitstring " + bits);
      packed = (packed << 1) | static_cast<std::uint64_t>(c - '0');
    }
    if (h.qubits.empty())
      for (std::size_t q = 1; q <= bits.size(); ++q)
        h.qubits.push_back(static_cast<int>(q));
    h.counts.emplace_back(packed, cnt);
    h.shots += cnt;
  }
  if (h.shots <= 0) throw std::invalid_argument("parse_histogram_csv: empty");
  return h;
}

double grouped_energy_exact(const std::vector<MeasurementGroup>& groups,
                            const std::vector<std::vector<double>>& probs) {
  if (groups.size() != probs.size())
    throw std::invalid_argument("grouped_energy_exact: size mismatch");
  double e = 0.0;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    for (const auto& term : groups[k].terms) {
      double ev = 0.0;
      for (std::size_t b = 0; b < probs[k].size(); ++b) {
        const int par = __builtin_popcountll(b & term.mask) & 1;
        ev += (par ? -1.0 : 1.0) * probs[k][b];
      }
      e += term.coeff * ev;
    }
  }
  return e;
}

}  // namespace qetulab::vqe
