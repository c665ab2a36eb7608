#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "wickenum/cli.hpp"

using namespace wickenum;
using namespace wickenum::cli;

namespace {

struct Flags {
  JobConfig cfg;
  std::optional<std::string> config_path;
};

void add_common(CLI::App* sub, Flags& f, bool needs_shape) {
  auto& c = f.cfg;
  if (needs_shape) {
    sub->add_option("--c", c.c, "number of colors");
    sub->add_option("--k", c.k, "vertex degree");
    sub->add_option("--n", c.n, "vertex count");
    sub->add_option("--n-range", c.n_range, "vertex counts start:stop[:step], stop inclusive");
  }
  sub->add_option("--seed", c.seed, "seed for the multistart sphere search")->capture_default_str();
  sub->add_option("--restarts", c.restarts, "sphere search restarts, 0 = max(200, 100 c)")->capture_default_str();
  sub->add_option("--precision-bits", c.precision_bits, "floating mantissa bits: 53 or 64")->capture_default_str();
  sub->add_option("--format", c.output_format, "csv or json")->capture_default_str();
  sub->add_option("--output", c.output_path, "write the table here instead of stdout");
  sub->add_option("--config", f.config_path, "JSON file whose keys override the flags");
}

void add_weights(CLI::App* sub, Flags& f) {
  sub->add_option("--weights", f.cfg.weights, R"(vertex weights, e.g. '[{"w":[3],"num":1,"den":1}]')");
  sub->add_option("--family", f.cfg.family, "built-in weights: ek (1 on squarefree compositions, V = e_k)");
}

int emit(const Table& t, const Job& job) {
  const std::string text = job.cfg.output_format == "json" ? to_json(t, job) : to_csv(t);
  if (job.cfg.output_path) {
    std::ofstream out(*job.cfg.output_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + *job.cfg.output_path);
    out << text;
  } else {
    std::cout << text;
  }
  return 0;
}

int run(const Job& job) {
  const std::string& cmd = job.cfg.command;
  if (cmd == "exact") return emit(run_exact(job), job);
  if (cmd == "asym") return emit(run_asym(job), job);
  if (cmd == "colorings") return emit(run_colorings(job), job);
  if (cmd == "expected") return emit(run_expected(job), job);
  if (cmd == "converge") return emit(run_converge(job), job);
  if (cmd == "crit") {
    bool degenerate = false;
    emit(run_crit(job, degenerate), job);
    if (degenerate) {
      std::cerr << error_json("degenerate_critical_point", "at least one critical point has a singular Hessian",
                              ExitCode::degenerate)
                << "\n";
      return static_cast<int>(ExitCode::degenerate);
    }
    return 0;
  }
  // validate
  ValidationOptions opts;
  opts.seed = job.cfg.seed;
  opts.restarts = job.cfg.restarts;
  const auto results = run_validation(opts);
  bool all = true;
  for (const auto& r : results) {
    std::cout << result_line(r) << "\n";
    all = all && r.passed;
  }
  if (job.cfg.output_dir) write_validation(results, *job.cfg.output_dir);
  return all ? 0 : static_cast<int>(ExitCode::validation);
}

int fail(const std::string& kind, const std::string& msg, ExitCode code) {
  std::cerr << error_json(kind, msg, code) << "\n";
  return static_cast<int>(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wickenum: exact and asymptotic counts of edge-colored regular multigraphs"};
  app.require_subcommand(1);
  Flags f;

  auto* exact = app.add_subcommand("exact", "exact A(n) as a rational: coefficient extraction from V^n/n!, "
                                            "multiplicity sum, or half-edge enumeration");
  add_common(exact, f, true);
  add_weights(exact, f);
  exact->add_option("--method", f.cfg.method, "series, partition-sum or brute-force")->capture_default_str();

  auto* asym = app.add_subcommand("asym", "leading-order estimate (l-1)!/(2 pi) sum (-g(z))^-l / sqrt((-1)^(c-1) det Hess g(z)) "
                                          "over critical points z = tau x, plus the same sum over sphere maxima");
  add_common(asym, f, true);
  add_weights(asym, f);

  auto* crit = app.add_subcommand("crit", "maxima x of |V| on the sphere and critical points z = tau x of g, "
                                          "tau^(2-k) = k V(x)");
  add_common(crit, f, true);
  add_weights(crit, f);

  auto* colorings = app.add_subcommand("colorings", "weighted proper edge-coloring count P for V = e_k");
  add_common(colorings, f, true);
  colorings->add_option("--mode", f.cfg.mode, "exact, closed_form, via_critical_points or brute_force")->capture_default_str();

  auto* expected = app.add_subcommand("expected", "expected proper colorings: n! P / multigraph count versus the closed form");
  add_common(expected, f, true);

  auto* converge = app.add_subcommand("converge", "exact A(n) against the leading-order estimate");
  add_common(converge, f, true);
  add_weights(converge, f);

  auto* validate = app.add_subcommand("validate", "run the acceptance checks; exit 4 on any failure");
  add_common(validate, f, false);
  validate->add_option("--output-dir", f.cfg.output_dir, "write one CSV per check here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("config_error", e.what(), ExitCode::config);
  }
  for (auto* sub : app.get_subcommands()) f.cfg.command = sub->get_name();

  try {
    if (f.config_path) apply_config_file(f.cfg, *f.config_path);
    return run(validate_config(f.cfg));
  } catch (const CapExceeded& e) {
    return fail("cap_exceeded", e.what(), ExitCode::cap);
  } catch (const DegenerateCriticalPoint& e) {
    return fail("degenerate_critical_point", e.what(), ExitCode::degenerate);
  } catch (const InvalidArgument& e) {
    return fail("config_error", e.what(), ExitCode::config);
  } catch (const std::exception& e) {
    return fail("error", e.what(), ExitCode::other);
  }
}
