#pragma once

// Job configuration, table building and output formatting for the
// `wickenum` command-line tool.

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wickenum/asymptotics.hpp"
#include "wickenum/colorings.hpp"
#include "wickenum/exact_enum.hpp"
#include "wickenum/validation.hpp"

namespace wickenum::cli {

inline constexpr const char* tool_version = "1.0.0";

enum class ExitCode : int { ok = 0, other = 1, config = 2, cap = 3, validation = 4, degenerate = 5 };

// Errors raised while assembling a JobConfig.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct JobConfig {
  std::string command;
  std::optional<int> c, k;
  std::optional<std::string> weights;  // JSON text
  std::optional<std::string> family;   // "ek"
  std::optional<int> n;
  std::optional<std::string> n_range;  // start:stop[:step], stop inclusive
  std::uint64_t seed = 42;
  int restarts = 0;
  int precision_bits = 64;
  std::string output_format = "csv";
  std::optional<std::string> output_path;
  std::string mode = "exact";     // colorings
  std::string method = "series";  // exact
  std::optional<std::string> output_dir;  // validate
};

inline const std::set<std::string>& commands() {
  static const std::set<std::string> s{"exact", "asym", "crit", "colorings", "expected", "converge", "validate"};
  return s;
}

// [{"w": [..], "num": p, "den": q}, ...] -> WeightSpec.
inline WeightSpec parse_weights(const std::string& text, int c, int k) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("weights are not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ConfigError("weights must be a JSON array");
  WeightSpec spec(c, k);
  std::set<MultiIndex, GradedLex> seen;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("w") || !item.contains("num"))
      throw ConfigError("each weight needs \"w\" and \"num\"");
    std::vector<int> w;
    try {
      w = item.at("w").get<std::vector<int>>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("weight key w must be an integer array");
    }
    for (int e : w)
      if (e < 0) throw ConfigError("weight key entries must be non-negative");
    const MultiIndex key(w);
    if (!seen.insert(key).second) throw ConfigError("duplicate weight key " + key.str());
    auto as_integer = [](const nlohmann::json& j, const char* what) {
      if (j.is_number_integer()) return Integer(j.get<long>());
      if (j.is_string()) {
        Integer z;
        if (z.set_str(j.get<std::string>(), 10) != 0) throw ConfigError(std::string("bad integer for ") + what);
        return z;
      }
      throw ConfigError(std::string(what) + " must be an integer");
    };
    const Integer num = as_integer(item.at("num"), "num");
    const Integer den = item.contains("den") ? as_integer(item.at("den"), "den") : Integer(1);
    if (den == 0) throw ConfigError("weight denominator is zero");
    try {
      spec.set(key, make_rational(num, den));
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  return spec;
}

inline nlohmann::json weights_to_json(const WeightSpec& spec) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [w, q] : spec.weights()) {
    nlohmann::json item;
    item["w"] = w.exps;
    const Integer num = q.get_num(), den = q.get_den();
    if (num.fits_slong_p() && den.fits_slong_p()) {
      item["num"] = num.get_si();
      item["den"] = den.get_si();
    } else {
      item["num"] = num.get_str();
      item["den"] = den.get_str();
    }
    out.push_back(item);
  }
  return out;
}

inline std::vector<int> parse_n_range(const std::string& text) {
  std::vector<long> parts;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ':');) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stol(tok, &used));
      if (used != tok.size()) throw ConfigError("bad n range " + text);
    } catch (const std::logic_error&) {
      throw ConfigError("bad n range " + text);
    }
  }
  if (parts.size() < 2 || parts.size() > 3) throw ConfigError("n range must be start:stop or start:stop:step");
  const long step = parts.size() == 3 ? parts[2] : 1;
  if (step <= 0 || parts[0] < 0 || parts[1] < parts[0]) throw ConfigError("bad n range " + text);
  std::vector<int> ns;
  for (long n = parts[0]; n <= parts[1]; n += step) ns.push_back(static_cast<int>(n));
  return ns;
}

// Overrides fields of `cfg` with the keys present in a JSON config file.
inline void apply_config_file(JobConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  static const std::set<std::string> known{"command", "c", "k", "weights", "family", "n", "n_range", "seed", "restarts",
                                           "precision_bits", "output_format", "output_path", "mode", "method", "output_dir"};
  try {
    for (const auto& [key, val] : j.items()) {
      if (!known.count(key)) throw ConfigError("unknown config key " + key);
      if (key == "command") cfg.command = val.get<std::string>();
      else if (key == "c") cfg.c = val.get<int>();
      else if (key == "k") cfg.k = val.get<int>();
      else if (key == "weights") cfg.weights = val.is_string() ? val.get<std::string>() : val.dump();
      else if (key == "family") cfg.family = val.get<std::string>();
      else if (key == "n") cfg.n = val.get<int>();
      else if (key == "n_range") cfg.n_range = val.get<std::string>();
      else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
      else if (key == "restarts") cfg.restarts = val.get<int>();
      else if (key == "precision_bits") cfg.precision_bits = val.get<int>();
      else if (key == "output_format") cfg.output_format = val.get<std::string>();
      else if (key == "output_path") cfg.output_path = val.get<std::string>();
      else if (key == "mode") cfg.mode = val.get<std::string>();
      else if (key == "method") cfg.method = val.get<std::string>();
      else if (key == "output_dir") cfg.output_dir = val.get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config value has the wrong type: ") + e.what());
  }
}

// A validated job: the resolved weights and n values.
struct Job {
  JobConfig cfg;
  std::optional<WeightSpec> spec;
  std::vector<int> ns;
  Precision precision = Precision::extended;

  MaximizerOptions maximizer() const {
    MaximizerOptions m;
    m.seed = cfg.seed;
    m.restarts = cfg.restarts;
    m.precision = precision;
    return m;
  }
};

inline Job validate_config(const JobConfig& cfg) {
  Job job{cfg, std::nullopt, {}, Precision::extended};
  if (!commands().count(cfg.command)) throw ConfigError("unknown command '" + cfg.command + "'");
  if (cfg.output_format != "csv" && cfg.output_format != "json") throw ConfigError("output format must be csv or json");
  try {
    job.precision = precision_from_bits(cfg.precision_bits);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.restarts < 0) throw ConfigError("restarts must be non-negative");
  if (cfg.command == "validate") return job;

  if (!cfg.k || !cfg.c) throw ConfigError("--c and --k are required");
  if (*cfg.c < 1 || *cfg.k < 1) throw ConfigError("c and k must be positive");
  if (cfg.n && cfg.n_range) throw ConfigError("give either --n or --n-range, not both");
  if (cfg.n) {
    if (*cfg.n < 0) throw ConfigError("n must be non-negative");
    job.ns = {*cfg.n};
  } else if (cfg.n_range) {
    job.ns = parse_n_range(*cfg.n_range);
  } else if (cfg.command != "crit") {
    throw ConfigError("--n or --n-range is required");
  }

  const bool builtin = cfg.command == "colorings" || cfg.command == "expected";
  if (cfg.family && *cfg.family != "ek") throw ConfigError("the only built-in family is ek");
  if ((builtin || cfg.family) && cfg.weights) throw ConfigError("weights cannot be combined with a built-in family");
  if (builtin || cfg.family) {
    if (*cfg.k > *cfg.c && !builtin) throw ConfigError("e_k needs k <= c");
    if (!builtin) job.spec = elementary_symmetric_weights(*cfg.c, *cfg.k);
  } else {
    if (!cfg.weights) throw ConfigError("--weights or --family is required");
    job.spec = parse_weights(*cfg.weights, *cfg.c, *cfg.k);
  }
  if (cfg.command == "colorings") {
    static const std::set<std::string> modes{"exact", "closed_form", "via_critical_points", "brute_force"};
    if (!modes.count(cfg.mode)) throw ConfigError("unknown colorings mode " + cfg.mode);
  }
  if (cfg.command == "exact") {
    static const std::set<std::string> methods{"series", "partition-sum", "brute-force"};
    if (!methods.count(cfg.method)) throw ConfigError("unknown method " + cfg.method);
  }
  if ((cfg.command == "asym" || cfg.command == "crit" || cfg.command == "converge" ||
       (cfg.command == "colorings" && cfg.mode == "via_critical_points")) &&
      *cfg.k < 3)
    throw ConfigError("critical-point commands need k >= 3");
  return job;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> formulas;
};

inline std::string to_csv(const Table& t) {
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += "\n";
  };
  line(t.columns);
  for (const auto& r : t.rows) line(r);
  return out;
}

inline nlohmann::json config_echo(const Job& job) {
  const JobConfig& c = job.cfg;
  nlohmann::json j;
  j["command"] = c.command;
  if (c.c) j["c"] = *c.c;
  if (c.k) j["k"] = *c.k;
  if (c.family) j["family"] = *c.family;
  if (c.weights && job.spec) j["weights"] = weights_to_json(*job.spec);
  if (c.n) j["n"] = *c.n;
  if (c.n_range) j["n_range"] = *c.n_range;
  j["seed"] = c.seed;
  j["restarts"] = c.restarts;
  j["precision_bits"] = c.precision_bits;
  if (c.command == "colorings") j["mode"] = c.mode;
  if (c.command == "exact") j["method"] = c.method;
  return j;
}

inline std::string to_json(const Table& t, const Job& job) {
  nlohmann::ordered_json out;
  out["metadata"]["tool"] = "wickenum";
  out["metadata"]["version"] = tool_version;
  out["metadata"]["formulas"] = t.formulas;
  out["metadata"]["config"] = config_echo(job);
  out["columns"] = t.columns;
  out["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json row;
    for (std::size_t i = 0; i < t.columns.size(); ++i) row[t.columns[i]] = r[i];
    out["rows"].push_back(row);
  }
  return out.dump(2) + "\n";
}

namespace detail {

inline std::vector<std::string> value_cells(const LogMagnitudeValue& v) {
  if (v.is_zero()) return {"0", "-inf", "0"};
  return {std::to_string(v.sign()), format_real(v.log10_abs()),
          std::isfinite(v.to_real()) && v.to_real() != 0 ? format_real(v.to_real()) : "overflow"};
}

inline std::vector<std::string> rational_cells(const Rational& q) {
  return {to_string(q), std::to_string(sgn(q)), q == 0 ? "-inf" : format_real(log_abs(q) / std::log(10.0L)),
          format_real(to_floating(q))};
}

}  // namespace detail

inline Table run_exact(const Job& job) {
  Table t{{"n", "A", "sign", "log10_abs", "decimal"}, {}, {"A_series", "A_partition_sum", "A_half_edge"}};
  const CountMethod m = job.cfg.method == "partition-sum" ? CountMethod::partition_sum
                        : job.cfg.method == "brute-force" ? CountMethod::brute_force
                                                          : CountMethod::series;
  t.formulas = {std::string("A_") + to_string(m)};
  for (int n : job.ns) {
    std::vector<std::string> row{std::to_string(n)};
    for (auto& cell : detail::rational_cells(exact_A(n, *job.spec, m))) row.push_back(cell);
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table run_asym(const Job& job) {
  Table t{{"n", "l", "sign", "log10_abs", "decimal", "diagnostic", "sphere_form_log10"},
          {},
          {"saddle_sum_over_psi", "sphere_maxima_sum"}};
  const RationalPolynomial v = potential(*job.spec);
  const CriticalData crit = critical_data(v, job.maximizer());
  for (int n : job.ns) {
    const EstimateRequest req{n, *job.cfg.k, *job.cfg.c};
    const Estimate e = estimate_critical_sum(req, crit.psi);
    const Estimate p = estimate_sphere_maxima(req, v, crit.phi);
    std::vector<std::string> row{std::to_string(n), req.integral() ? std::to_string(req.ell()) : format_real(req.twice_m() / 2.0L - n)};
    for (auto& cell : detail::value_cells(e.value)) row.push_back(cell);
    row.push_back(to_string(e.diagnostic));
    row.push_back(p.value.is_zero() ? "-inf" : format_real(p.value.log10_abs()));
    t.rows.push_back(std::move(row));
  }
  return t;
}

// Rows for `crit`; sets `degenerate` when any record is degenerate.
inline Table run_crit(const Job& job, bool& degenerate) {
  Table t;
  t.formulas = {"sphere_maxima", "tau_roots", "hessian_g"};
  for (int i = 1; i <= *job.cfg.c; ++i) t.columns.push_back("x" + std::to_string(i));
  for (const char* col : {"tau_re", "tau_im", "g_re", "g_im", "hessdet_re", "hessdet_im", "nondegenerate"})
    t.columns.push_back(col);
  const CriticalData crit = critical_data(potential(*job.spec), job.maximizer());
  degenerate = false;
  for (const auto& r : crit.psi) {
    std::vector<std::string> row;
    for (long double xi : r.x) row.push_back(format_real(xi));
    for (long double val : {r.tau.real(), r.tau.imag(), r.g_of_z.real(), r.g_of_z.imag(), r.hess_det_g.real(), r.hess_det_g.imag()})
      row.push_back(format_real(val));
    row.push_back(r.nondegenerate ? "1" : "0");
    degenerate = degenerate || !r.nondegenerate;
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table run_colorings(const Job& job) {
  const int k = *job.cfg.k, c = *job.cfg.c;
  const std::string& mode = job.cfg.mode;
  Table t{{"n", "mode", "P", "sign", "log10_abs", "decimal"}, {}, {"colorings_" + mode}};
  std::optional<std::vector<CriticalPointRecord>> psi;
  for (int n : job.ns) {
    std::vector<std::string> row{std::to_string(n), mode};
    if (mode == "exact" || mode == "brute_force") {
      const Rational p = mode == "exact" ? exact_P({n, k, c})
                                         : Rational(brute_force_tuples(n, k, c)) /
                                               Rational(factorial(static_cast<unsigned long>(n)));
      for (auto& cell : detail::rational_cells(p)) row.push_back(cell);
    } else {
      LogMagnitudeValue v;
      if (mode == "closed_form") {
        v = closed_form_P({n, k, c});
      } else if (k <= c) {
        if (!psi) {
          const auto e = build_elementary_symmetric(c, k);
          psi = build_Psi(e, find_maxima(e, job.maximizer()));
        }
        v = estimate_critical_sum({n, k, c}, *psi).value;
      }
      row.push_back("-");
      for (auto& cell : detail::value_cells(v)) row.push_back(cell);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline Table run_expected(const Job& job) {
  const int k = *job.cfg.k, c = *job.cfg.c;
  Table t{{"n", "empirical_log10", "closed_log10", "ratio", "abs_ratio_minus_1"}, {}, {"expected_colorings_closed_form", "multigraph_count"}};
  for (int n : job.ns) {
    const auto emp = empirical_E({n, k, c});
    const auto cf = closed_form_E({n, k, c});
    const long double ratio = safe_ratio(emp, cf);
    t.rows.push_back({std::to_string(n), emp.is_zero() ? "-inf" : format_real(emp.log10_abs()),
                      cf.is_zero() ? "-inf" : format_real(cf.log10_abs()), format_real(ratio), format_real(std::fabs(ratio - 1))});
  }
  return t;
}

inline Table run_converge(const Job& job) {
  Table t{{"n", "l", "A_exact_log10", "A_est_log10", "ratio", "abs_ratio_minus_1"}, {}, {"A_series", "saddle_sum_over_psi"}};
  for (const auto& row : convergence_table(*job.spec, job.ns, job.maximizer()))
    t.rows.push_back({std::to_string(row.n), format_real(row.ell),
                      row.exact_log.is_zero() ? "-inf" : format_real(row.exact_log.log10_abs()),
                      row.estimate.is_zero() ? "-inf" : format_real(row.estimate.log10_abs()), format_real(row.ratio),
                      format_real(row.abs_ratio_minus_1)});
  return t;
}

// Writes criterion_NN.csv files and summary.csv into dir.
inline void write_validation(const std::vector<CriterionResult>& results, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::string summary = "criterion,name,passed\n";
  for (const auto& r : results) {
    char name[32];
    std::snprintf(name, sizeof name, "criterion_%02d.csv", r.id);
    std::ofstream(dir / name, std::ios::binary) << r.csv;
    summary += std::to_string(r.id) + "," + r.name + "," + (r.passed ? "1" : "0") + "\n";
  }
  std::ofstream(dir / "summary.csv", std::ios::binary) << summary;
}

inline std::string result_line(const CriterionResult& r) {
  return std::string(r.passed ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + " (" + r.name + "): " + r.detail;
}

inline std::string error_json(const std::string& kind, const std::string& message, ExitCode code) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  j["exit_code"] = static_cast<int>(code);
  return j.dump();
}

}  // namespace wickenum::cli
