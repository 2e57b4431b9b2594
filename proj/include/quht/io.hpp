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

// JSON and CSV formats: states, outcome records, estimates, verdicts,
// experiment plans and results.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include <json.hpp>

#include "quht/experiments.hpp"
#include "quht/hypothesis.hpp"
#include "quht/linalg.hpp"
#include "quht/measurement.hpp"
#include "quht/states.hpp"
#include "quht/tomography.hpp"

namespace quht {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::json;

/// Bad configuration content. `where` is a JSON pointer to the offending
/// field, or "line L, column C" for syntax errors.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest round-tripping form is not required; 17 significant digits is.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// States

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ii = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ii.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return Json{{"matrix", {{"re", std::move(re)}, {"im", std::move(im)}}}};
}

inline Json state_to_json(const DensityOperator& rho) { return matrix_to_json(rho.matrix()); }

namespace detail {

inline std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
inline std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

inline const Json& require_field(const Json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "/" : path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(child(path, key), "missing required field");
  return *it;
}

inline double as_number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  return v.get<double>();
}

inline std::uint64_t as_count(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

inline bool as_bool(const Json& v, const std::string& path) {
  if (!v.is_boolean()) throw ConfigError(path, "expected true or false");
  return v.get<bool>();
}

inline std::string as_string(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ConfigError(path, "expected a string");
  return v.get<std::string>();
}

inline const Json& as_array(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array");
  return v;
}

inline ComplexMatrix parse_square(const Json& re, const Json& im, const std::string& path) {
  as_array(re, child(path, "re"));
  const std::size_t d = re.size();
  if (d == 0) throw ConfigError(child(path, "re"), "matrix is empty");
  ComplexMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  m.setZero();
  const bool has_im = !im.is_null();
  if (has_im && (!im.is_array() || im.size() != d)) throw ConfigError(child(path, "im"), "shape must match re");
  for (std::size_t i = 0; i < d; ++i) {
    const std::string row = child(child(path, "re"), i);
    if (!re[i].is_array() || re[i].size() != d) throw ConfigError(row, "matrix must be square");
    if (has_im && (!im[i].is_array() || im[i].size() != d)) {
      throw ConfigError(child(child(path, "im"), i), "shape must match re");
    }
    for (std::size_t j = 0; j < d; ++j) {
      const double a = as_number(re[i][j], child(row, j));
      const double b = has_im ? as_number(im[i][j], child(child(child(path, "im"), i), j)) : 0.0;
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Complex(a, b);
    }
  }
  return m;
}

}  // namespace detail

/// Parses {"bloch": [x,y,z]}, {"ket": [[re,im],...]} or
/// {"matrix": {"re": [[..]], "im": [[..]]}}. Validation failures of the
/// underlying constructors are reported against `path`.
inline DensityOperator state_from_json(const Json& j, const std::string& path = "") {
  if (!j.is_object() || j.size() != 1) {
    throw ConfigError(path.empty() ? "/" : path, "a state needs exactly one of \"bloch\", \"ket\", \"matrix\"");
  }
  try {
    if (j.contains("bloch")) {
      const std::string p = detail::child(path, "bloch");
      const Json& v = detail::as_array(j["bloch"], p);
      if (v.size() != 3) throw ConfigError(p, "a Bloch vector has 3 components");
      return density_from_bloch({detail::as_number(v[0], detail::child(p, 0)),
                                 detail::as_number(v[1], detail::child(p, 1)),
                                 detail::as_number(v[2], detail::child(p, 2))});
    }
    if (j.contains("ket")) {
      const std::string p = detail::child(path, "ket");
      const Json& v = detail::as_array(j["ket"], p);
      if (v.empty()) throw ConfigError(p, "ket is empty");
      ComplexVector amp(static_cast<Eigen::Index>(v.size()));
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string pi = detail::child(p, i);
        if (v[i].is_number()) {
          amp(static_cast<Eigen::Index>(i)) = Complex(v[i].get<double>(), 0.0);
        } else if (v[i].is_array() && v[i].size() == 2) {
          amp(static_cast<Eigen::Index>(i)) =
              Complex(detail::as_number(v[i][0], detail::child(pi, 0)), detail::as_number(v[i][1], detail::child(pi, 1)));
        } else {
          throw ConfigError(pi, "amplitude must be a number or [re, im]");
        }
      }
      return pure_state(amp);
    }
    if (j.contains("matrix")) {
      const std::string p = detail::child(path, "matrix");
      const Json& m = j["matrix"];
      const Json& re = detail::require_field(m, p, "re");
      const Json im = m.contains("im") ? m["im"] : Json();
      return DensityOperator(detail::parse_square(re, im, p));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path.empty() ? "/" : path, e.what());
  }
  throw ConfigError(path.empty() ? "/" : path, "a state needs one of \"bloch\", \"ket\", \"matrix\"");
}

// ---------------------------------------------------------------------------
// Records, estimates, verdicts

inline Json record_to_json(const OutcomeRecord& r) {
  return Json{{"povm_id", r.povm_id}, {"labels", r.labels}, {"counts", r.counts}, {"shots", r.shots}};
}

inline OutcomeRecord record_from_json(const Json& j, const std::string& path = "") {
  OutcomeRecord r;
  r.povm_id = detail::as_string(detail::require_field(j, path, "povm_id"), detail::child(path, "povm_id"));
  const Json& labels = detail::as_array(detail::require_field(j, path, "labels"), detail::child(path, "labels"));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    r.labels.push_back(detail::as_number(labels[i], detail::child(detail::child(path, "labels"), i)));
  }
  const Json& counts = detail::as_array(detail::require_field(j, path, "counts"), detail::child(path, "counts"));
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    r.counts.push_back(detail::as_count(counts[i], detail::child(detail::child(path, "counts"), i)));
    total += r.counts.back();
  }
  r.shots = detail::as_count(detail::require_field(j, path, "shots"), detail::child(path, "shots"));
  if (r.counts.size() != r.labels.size()) throw ConfigError(detail::child(path, "counts"), "one count per label");
  if (total != r.shots) throw ConfigError(detail::child(path, "shots"), "counts do not sum to shots");
  return r;
}

inline Json estimate_to_json(const TomographyEstimate& e) {
  Json j = matrix_to_json(e.estimate.matrix());
  j["scheme"] = std::string(scheme_name(e.scheme));
  j["shots_used"] = e.shots_used;
  j["physical"] = e.physical;
  return j;
}

inline Json verdict_to_json(const TestVerdict& v, const TestConfig& config) {
  Json j{{"decision", decision_name(v.decision)},
         {"statistic", v.statistic},
         {"threshold", v.threshold},
         {"scheme", config.kind == TestKind::PureStateOneSample ? "pure-state" : std::string(scheme_name(config.scheme()))},
         {"m", config.m},
         {"n", config.n},
         {"alpha", config.alpha}};
  if (v.type2_envelope) j["type2_envelope"] = *v.type2_envelope;
  return j;
}

// ---------------------------------------------------------------------------
// Experiment plans

namespace detail {

inline ConcentrationBound bound_from_json(const Json& j, const std::string& path, std::size_t state_dim) {
  const std::string name = as_string(require_field(j, path, "name"), child(path, "name"));
  const auto scheme = parse_scheme(name);
  if (!scheme) throw ConfigError(child(path, "name"), "unknown scheme '" + name + "'");
  auto opt_count = [&](const char* key, std::size_t fallback) -> std::size_t {
    return j.contains(key) ? static_cast<std::size_t>(as_count(j[key], child(path, key))) : fallback;
  };
  const bool weakened = j.contains("weakened") ? as_bool(j["weakened"], child(path, "weakened")) : false;
  try {
    switch (*scheme) {
      case Scheme::PauliQubit: return bound_pauli_qubit();
      case Scheme::PauliString: {
        std::size_t b = 0;
        while ((std::size_t{1} << b) < state_dim) ++b;
        return bound_pauli_string(opt_count("b", b));
      }
      case Scheme::IndepTwoDesign: {
        const std::size_t d = opt_count("d", state_dim);
        return bound_indep_two_design(d, opt_count("r", d), weakened);
      }
      case Scheme::Entangled: {
        const std::size_t d = opt_count("d", state_dim);
        return bound_entangled(d, opt_count("r", d), weakened);
      }
      case Scheme::Generic:
        return bound_generic(as_number(require_field(j, path, "g"), child(path, "g")),
                             as_number(require_field(j, path, "C"), child(path, "C")));
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  throw ConfigError(child(path, "name"), "unknown scheme");
}

inline std::vector<std::uint64_t> count_list(const Json& v, const std::string& path) {
  as_array(v, path);
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_count(v[i], child(path, i)));
  return out;
}

}  // namespace detail

/// Experiment plan from a simulate config:
///
///   {"test": "pure-state" | "one-sample" | "two-sample",
///    "scheme": {"name": ..., "b"|"d"|"r"|"weakened"|"g"|"C": ...},
///    "synthetic": false, "nominal": <state>, "true_state": <state>,
///    "alpha": 0.05, "m_grid": [...], "n_grid": [...], "trials": N,
///    "seed": S, "shot_budget": B}
///
/// Unknown top-level keys are rejected.
inline ExperimentPlan plan_from_json(const Json& j) {
  static const char* const kKeys[] = {"test",   "scheme", "synthetic", "nominal", "true_state", "alpha",
                                      "m_grid", "n_grid", "trials",    "seed",    "shot_budget"};
  if (!j.is_object()) throw ConfigError("/", "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw ConfigError("/" + key, "unknown field");
  }
  const std::string test = detail::as_string(detail::require_field(j, "", "test"), "/test");
  ExperimentPlan plan(state_from_json(detail::require_field(j, "", "nominal"), "/nominal"));
  if (test == "pure-state") {
    plan.kind = TestKind::PureStateOneSample;
  } else if (test == "one-sample") {
    plan.kind = TestKind::OneSample;
  } else if (test == "two-sample") {
    plan.kind = TestKind::TwoSample;
  } else {
    throw ConfigError("/test", "expected \"pure-state\", \"one-sample\" or \"two-sample\", got \"" + test + "\"");
  }
  if (plan.kind != TestKind::PureStateOneSample) {
    plan.bound = detail::bound_from_json(detail::require_field(j, "", "scheme"), "/scheme", plan.nominal.dim());
    plan.alpha = detail::as_number(detail::require_field(j, "", "alpha"), "/alpha");
  } else if (j.contains("scheme")) {
    throw ConfigError("/scheme", "the pure-state rule takes no tomography scheme");
  }
  if (j.contains("synthetic")) plan.synthetic = detail::as_bool(j["synthetic"], "/synthetic");
  if (j.contains("true_state")) plan.true_state = state_from_json(j["true_state"], "/true_state");
  plan.m_grid = detail::count_list(detail::require_field(j, "", "m_grid"), "/m_grid");
  if (j.contains("n_grid")) plan.n_grid = detail::count_list(j["n_grid"], "/n_grid");
  plan.trials = detail::as_count(detail::require_field(j, "", "trials"), "/trials");
  plan.master_seed = detail::as_count(detail::require_field(j, "", "seed"), "/seed");
  if (j.contains("shot_budget")) plan.shot_budget = detail::as_number(j["shot_budget"], "/shot_budget");
  try {
    validate_plan(plan);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("/", e.what());
  }
  return plan;
}

/// Parses JSON text, reporting syntax errors by line and column.
inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col), "JSON syntax error");
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes via a sibling temporary file and rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move results into '" + path.string() + "'");
  }
}

// ---------------------------------------------------------------------------
// Results

inline constexpr const char* kResultsHeader = "m,trials,alpha_hat,beta_hat,ci_lo,ci_hi,envelope,exponent_fit";

/// First line is "# quht-lab <version>", second is kResultsHeader. Columns
/// that do not apply to the run are left empty.
inline std::string results_csv(const ExperimentResult& r) {
  std::string out = std::string("# quht-lab ") + kVersion + "\n" + kResultsHeader + "\n";
  const std::string fit = r.fit ? format_double(r.fit->slope) : "";
  for (const auto& p : r.points) {
    out += std::to_string(p.m) + "," + std::to_string(p.trials) + ",";
    out += (r.beta_run ? "" : format_double(p.rate)) + ",";
    out += (r.beta_run ? format_double(p.rate) : "") + ",";
    out += format_double(p.ci.lo) + "," + format_double(p.ci.hi) + "," + format_double(p.envelope) + ",";
    out += fit + "\n";
  }
  return out;
}

inline Json result_to_json(const ExperimentResult& r) {
  Json points = Json::array();
  for (const auto& p : r.points) {
    Json pj{{"m", p.m},
            {r.beta_run ? "beta_hat" : "alpha_hat", p.rate},
            {"trials", p.trials},
            {"errors", p.errors},
            {"ci", {p.ci.lo, p.ci.hi}},
            {"envelope", p.envelope},
            {"threshold", p.threshold},
            {"vacuous", p.vacuous}};
    if (r.kind == TestKind::TwoSample) pj["n"] = p.n;
    if (p.errors == 0) pj["rule_of_three"] = p.rule_of_three;
    points.push_back(std::move(pj));
  }
  Json j{{"version", kVersion},
         {"test", test_kind_name(r.kind)},
         {"scheme", r.scheme ? Json(std::string(scheme_name(*r.scheme))) : Json()},
         {"run", r.beta_run ? "type-ii" : "type-i"},
         {"synthetic", r.synthetic},
         {"alpha", r.alpha},
         {"seed", r.master_seed},
         {"points", std::move(points)}};
  if (r.beta_run) {
    j["separation"] = r.separation;
    j["theoretical_exponent"] = r.theoretical_exponent ? Json(*r.theoretical_exponent) : Json();
    if (r.fit) {
      j["fitted_exponent"] = {{"slope", r.fit->slope},
                              {"intercept", r.fit->intercept},
                              {"rms_residual", r.fit->rms_residual},
                              {"max_abs_residual", r.fit->max_abs_residual},
                              {"points_used", r.fit->points_used}};
    } else {
      j["fitted_exponent"] = nullptr;
      j["fit_note"] = r.fit_note;
    }
  }
  return j;
}

}  // namespace quht
