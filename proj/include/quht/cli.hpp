// Copyright 2026 The quht-lab Authors
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

#pragma once

// The `quht` command line: threshold, simulate, bounds, inequality-suite,
// pinsker-scan. run() is callable in-process so tests can drive it.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "quht/experiments.hpp"
#include "quht/io.hpp"
#include "quht/linalg.hpp"
#include "quht/parallel.hpp"
#include "quht/tomography.hpp"

namespace quht::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kIo = 3 };

namespace detail {

inline std::string pad(const std::string& key, std::size_t width = 22) {
  return key.size() >= width ? key + " " : key + std::string(width - key.size(), ' ');
}

struct ThresholdArgs {
  std::string scheme;
  std::uint64_t m = 0;
  std::optional<std::uint64_t> n;
  double alpha = 0.0;
  std::size_t d = 2;
  std::optional<std::size_t> r;
  std::size_t b = 1;
  bool weakened = false;
  std::optional<double> g;
  std::optional<double> c;
};

inline ConcentrationBound make_bound(const ThresholdArgs& a) {
  const auto scheme = parse_scheme(a.scheme);
  if (!scheme) throw std::invalid_argument("unknown scheme '" + a.scheme + "'");
  switch (*scheme) {
    case Scheme::PauliQubit: return bound_pauli_qubit();
    case Scheme::PauliString: return bound_pauli_string(a.b);
    case Scheme::IndepTwoDesign: return bound_indep_two_design(a.d, a.r.value_or(a.d), a.weakened);
    case Scheme::Entangled: return bound_entangled(a.d, a.r.value_or(a.d), a.weakened);
    case Scheme::Generic:
      if (!a.g || !a.c) throw std::invalid_argument("the generic scheme needs --g and --C");
      return bound_generic(*a.g, *a.c);
  }
  throw std::invalid_argument("unknown scheme");
}

inline int cmd_threshold(const ThresholdArgs& a, std::ostream& out, std::ostream& err) {
  const ConcentrationBound bound = make_bound(a);
  const bool two = a.n.has_value();
  const double c = two ? threshold_two_sample(bound, a.m, *a.n, a.alpha) : threshold_one_sample(bound, a.m, a.alpha);
  out << pad("scheme") << scheme_name(bound.label) << "\n";
  out << pad("test") << (two ? "two-sample" : "one-sample") << "\n";
  out << pad("m") << a.m << "\n";
  if (two) out << pad("n") << *a.n << "\n";
  out << pad("alpha") << format_double(a.alpha) << "\n";
  out << pad("dim") << bound.dim << "\n";
  if (bound.label == Scheme::IndepTwoDesign || bound.label == Scheme::Entangled) {
    out << pad("rank") << bound.rank << (bound.weakened ? " (weakened)" : "") << "\n";
  }
  out << pad("g(m)") << format_double(bound.prefactor(a.m)) << "\n";
  if (two) out << pad("g(n)") << format_double(bound.prefactor(*a.n)) << "\n";
  out << pad("C") << format_double(bound.exponent_C) << "\n";
  out << pad(two ? "threshold c_k" : "threshold c_m") << format_double(c) << "\n";
  out << "\n" << pad("t") << "envelope\n";
  for (double f : {0.5, 1.0, 1.5, 2.0}) {
    const double t = f * c;
    const double env = two ? two_sample_envelope(bound, a.m, *a.n, t) : bound.evaluate(a.m, t);
    out << pad(format_double(t)) << format_double(std::min(1.0, env)) << "\n";
  }
  if (c == 0.0) err << "note: g <= alpha, so the threshold is 0\n";
  if (!bound.within_validity(two ? c / 2.0 : c)) {
    err << "warning: threshold lies outside the range t < " << format_double(*bound.t_limit)
        << " for which the " << scheme_name(bound.label) << " envelope is stated\n";
  }
  return kOk;
}

inline std::filesystem::path json_path_for(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p.replace_extension(".summary.json");
  return p;
}

inline int cmd_simulate(const std::string& config_path, const std::string& output, std::optional<unsigned> threads,
                        std::ostream& out) {
  const std::string text = read_file(config_path);
  ExperimentPlan plan = plan_from_json(parse_json_text(text));
  const unsigned cap = resolve_thread_count();
  plan.threads = threads ? std::max(1U, std::min(*threads, cap)) : cap;
  const ExperimentResult result = run_experiment(plan);
  const std::filesystem::path csv = output;
  const std::filesystem::path json = json_path_for(csv);
  write_file_atomic(csv, results_csv(result));
  write_file_atomic(json, result_to_json(result).dump(2) + "\n");
  out << "wrote " << csv.string() << " and " << json.string() << ": " << result.points.size() << " grid points, "
      << (result.beta_run ? "type II" : "type I") << " run";
  if (result.beta_run) {
    if (result.fit) {
      out << ", fitted exponent " << format_double(result.fit->slope);
    } else {
      out << ", no exponent fit (" << result.fit_note << ")";
    }
    if (result.theoretical_exponent) out << ", theoretical " << format_double(*result.theoretical_exponent);
  }
  out << "\n";
  return kOk;
}

inline DensityOperator load_state(const std::string& path) {
  return state_from_json(parse_json_text(read_file(path)));
}

inline int cmd_bounds(const std::string& rho_path, const std::string& sigma_path, std::uint64_t m, std::ostream& out) {
  const DensityOperator rho = load_state(rho_path);
  const DensityOperator sigma = load_state(sigma_path);
  quht::detail::require_same_dim(rho.dim(), sigma.dim(), "bounds");
  const double norm = trace_norm(rho.hermitian() - sigma.hermitian());
  const double d = relative_entropy(rho, sigma);
  out << pad("dim") << rho.dim() << "\n";
  out << pad("trace_distance") << format_double(trace_distance(rho, sigma)) << "\n";
  out << pad("fidelity") << format_double(fidelity(rho, sigma)) << "\n";
  out << pad("relative_entropy") << format_double(d) << "\n";
  out << pad("renyi_half") << format_double(sandwiched_renyi_half(rho, sigma)) << "\n";
  try {
    out << pad("helstrom(m=" + std::to_string(m) + ")") << format_double(helstrom_bound(rho, sigma, m)) << "\n";
  } catch (const std::length_error& e) {
    out << pad("helstrom(m=" + std::to_string(m) + ")") << "unavailable: " << e.what() << "\n";
  }
  out << pad("pinsker_slack") << format_double(d - 0.5 * norm * norm) << "\n";
  return kOk;
}

inline int cmd_inequality_suite(std::uint64_t seed, std::size_t pairs, const std::vector<std::size_t>& dims,
                                std::ostream& out) {
  bool ok = true;
  out << "seed " << seed << ", " << pairs << " pairs per dimension\n";
  for (std::size_t d : dims) {
    const InequalityReport rep = quantum_inequality_suite(seed, pairs, d);
    out << "d=" << d << " fuchs-van-de-graaf violations " << rep.fvdg_violations << " min slack "
        << format_double(rep.min_fvdg_slack) << "; quantum-pinsker violations " << rep.pinsker_violations
        << " min slack " << format_double(rep.min_pinsker_slack) << "\n";
    for (const auto& v : rep.violations) {
      const Json j{{"pair", v.pair_index},
                   {"inequality", v.inequality},
                   {"slack", v.slack},
                   {"rho", state_to_json(v.rho)},
                   {"sigma", state_to_json(v.sigma)}};
      out << "violation " << j.dump() << "\n";
    }
    ok = ok && rep.passed();
  }
  out << (ok ? "all inequalities hold\n" : "VIOLATIONS FOUND\n");
  return ok ? kOk : kCheckFailed;
}

inline int cmd_pinsker_scan(double epsilon, std::ostream& out) {
  const SharpnessWitness w = pinsker_sharpness_scan(epsilon);
  out << pad("epsilon") << format_double(epsilon) << "\n";
  out << pad("t") << format_double(w.t) << "\n";
  out << pad("P") << format_double(w.p[0]) << "," << format_double(w.p[1]) << "\n";
  out << pad("Q") << format_double(w.q[0]) << "," << format_double(w.q[1]) << "\n";
  out << pad("ratio") << format_double(w.ratio) << "\n";
  return kOk;
}

}  // namespace detail

/// Runs the command line given by args (program name excluded), writing
/// normal output to `out` and diagnostics to `err`. Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Universal quantum hypothesis testing simulator", "quht"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("quht-lab ") + kVersion);

  detail::ThresholdArgs th;
  auto* threshold = app.add_subcommand("threshold", "Print the calibrated acceptance threshold for a scheme");
  threshold->add_option("--scheme", th.scheme, "pauli-qubit | pauli-string | two-design | entangled | generic")
      ->required();
  threshold->add_option("--m", th.m, "Copies of the unknown state")->required()->check(CLI::PositiveNumber);
  threshold->add_option("--n", th.n, "Copies of the reference state (two-sample)")->check(CLI::PositiveNumber);
  threshold->add_option("--alpha", th.alpha, "Target type I error")->required();
  threshold->add_option("--d", th.d, "Dimension (two-design, entangled)");
  threshold->add_option("--r", th.r, "Rank bound (two-design, entangled; default d)");
  threshold->add_option("--b", th.b, "Qubit count (pauli-string)");
  threshold->add_flag("--weakened", th.weakened, "Use the rank-free form of the bound");
  threshold->add_option("--g", th.g, "Prefactor (generic)");
  threshold->add_option("--C", th.c, "Exponent constant (generic)");

  std::string config_path, output_path;
  std::optional<unsigned> threads;
  auto* simulate = app.add_subcommand("simulate", "Run a Monte Carlo experiment from a JSON config");
  simulate->add_option("--config", config_path, "Experiment config (JSON)")->required();
  simulate->add_option("--output", output_path, "Results CSV; the JSON summary is written to <stem>.summary.json")->required();
  simulate->add_option("--threads", threads, "Worker threads (capped by QUHT_THREADS)")->check(CLI::PositiveNumber);

  std::string rho_path, sigma_path;
  std::uint64_t copies = 1;
  auto* bounds = app.add_subcommand("bounds", "Compare two states: distances, divergences, Helstrom bound");
  bounds->add_option("--rho", rho_path, "First state (JSON)")->required();
  bounds->add_option("--sigma", sigma_path, "Second state (JSON)")->required();
  bounds->add_option("--m", copies, "Copies for the Helstrom bound")->check(CLI::PositiveNumber);

  std::uint64_t seed = 1;
  std::size_t pairs = 1000;
  std::vector<std::size_t> dims{2};
  auto* ineq = app.add_subcommand("inequality-suite", "Check trace-distance inequalities on random state pairs");
  ineq->add_option("--seed", seed, "Master seed");
  ineq->add_option("--pairs", pairs, "Random pairs per dimension");
  ineq->add_option("--d", dims, "Dimensions (repeatable)")->check(CLI::Range(std::size_t{2}, std::size_t{64}));

  double epsilon = 0.01;
  auto* pinsker = app.add_subcommand("pinsker-scan", "Find binary distributions with Pinsker ratio within epsilon of 1/2");
  pinsker->add_option("--epsilon", epsilon, "Allowed excess over 1/2")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (threshold->parsed()) return detail::cmd_threshold(th, out, err);
    if (simulate->parsed()) return detail::cmd_simulate(config_path, output_path, threads, out);
    if (bounds->parsed()) return detail::cmd_bounds(rho_path, sigma_path, copies, out);
    if (ineq->parsed()) return detail::cmd_inequality_suite(seed, pairs, dims, out);
    if (pinsker->parsed()) return detail::cmd_pinsker_scan(epsilon, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ConfigError& e) {
    err << "config error at " << e.what() << "\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace quht::cli
