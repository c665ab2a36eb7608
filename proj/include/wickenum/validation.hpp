#pragma once

// Acceptance checks shared by the acceptance binary and `wickenum validate`.
// Each check returns a pass flag, a one-line detail and a CSV artifact; the
// artifacts depend only on the options, never on timing.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "wickenum/asymptotics.hpp"
#include "wickenum/colorings.hpp"
#include "wickenum/exact_enum.hpp"
#include "wickenum/sphere_critical.hpp"
#include "wickenum/weights.hpp"

namespace wickenum {

struct ValidationOptions {
  std::uint64_t seed = 42;
  int restarts = 0;

  MaximizerOptions maximizer() const {
    MaximizerOptions m;
    m.seed = seed;
    m.restarts = restarts;
    return m;
  }
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  std::string csv;
};

inline std::string format_real(long double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15Lg", x);
  return buf;
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline const std::vector<std::pair<int, int>>& ek_family() {
  static const std::vector<std::pair<int, int>> f{{3, 3}, {3, 4}, {3, 5}, {4, 4}, {4, 5}};
  return f;
}

inline WeightSpec random_spec(std::mt19937_64& rng, int c, int k, int lo, int hi) {
  std::uniform_int_distribution<int> num(lo, hi), den(1, 5);
  WeightSpec s(c, k);
  for (const auto& w : compositions(k, c)) s.set(w, make_rational(num(rng), den(rng)));
  if (s.empty()) s.set(compositions(k, c).front(), 1);
  return s;
}

inline long double ek_det(int k, int c) { return critical_data_ek(k, c).front().hess_det_g.real(); }

inline long double rel_err(long double a, long double b) { return std::fabs(a / b - 1); }

}  // namespace detail

inline CriterionResult check_exact_agreement(const ValidationOptions& o) {
  const auto t0 = detail::Clock::now();
  CriterionResult r{1, "exact triple agreement", true, "", "c,k,n,A\n"};
  std::mt19937_64 rng(o.seed);
  int cases = 0;
  for (auto [c, k] : std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 3}}) {
    for (int trial = 0; trial < 3; ++trial) {
      const WeightSpec spec = detail::random_spec(rng, c, k, -6, 9);
      for (int n = 0; n * k <= 8; ++n) {
        const Rational a = exact_A_series(n, spec);
        const bool ok = a == exact_A_partition_sum(n, spec) && a == brute_force_A(n, spec);
        r.passed = r.passed && ok;
        ++cases;
        r.csv += std::to_string(c) + "," + std::to_string(k) + "," + std::to_string(n) + "," + to_string(a) + "\n";
      }
    }
  }
  const double secs = detail::seconds_since(t0);
  r.passed = r.passed && secs < 60;
  r.detail = std::to_string(cases) + " cases, " + format_real(secs) + " s";
  return r;
}

inline CriterionResult check_small_values(const ValidationOptions&) {
  CriterionResult r{2, "known small values", true, "", "quantity,value\n"};
  WeightSpec cubic(1, 3);
  cubic.set({3}, 1);
  const Rational a2 = exact_A_series(2, cubic);
  const Rational p = exact_P({2, 3, 3});
  const Integer t = brute_force_tuples(2, 3, 3);
  r.passed = a2 == Rational(5, 24) && p == Rational(1, 2) && t == 1;
  r.csv += "A(2) c=1 k=3," + to_string(a2) + "\nP(2) k=3 c=3," + to_string(p) + "\ntuples(2;3;3)," + to_string(t) + "\n";
  r.detail = "A(2)=" + to_string(a2) + " P=" + to_string(p) + " tuples=" + to_string(t);
  return r;
}

inline CriterionResult check_ek_critical_points(const ValidationOptions& o) {
  const auto t0 = detail::Clock::now();
  CriterionResult r{3, "critical points of e_k", true, "", "k,c,representatives,records,max_coord_spread,hessdet,expected,rel_err\n"};
  long double worst = 0;
  for (auto [k, c] : detail::ek_family()) {
    const auto v = build_elementary_symmetric(c, k);
    const auto phi = find_maxima(v, o.maximizer());
    const auto psi = build_Psi(v, phi);
    const std::size_t expect_reps = c == k ? (1u << (k - 1)) : 1u;
    bool ok = phi.size() == expect_reps && psi.size() == phi.size() * static_cast<std::size_t>(k - 2);
    long double spread = 0;
    for (const auto& m : phi)
      for (long double xi : m.x) spread = std::max(spread, std::fabs(std::fabs(xi) - 1 / std::sqrt(static_cast<long double>(c))));
    ok = ok && spread <= 1e-8L;
    for (const auto& m : phi) {
      std::size_t fiber = 0;
      for (const auto& rec : psi) fiber += rec.x == m.x;
      ok = ok && fiber == static_cast<std::size_t>(k - 2);
    }
    const long double expected = detail::ek_det(k, c);
    long double err = 0;
    for (const auto& rec : psi) err = std::max(err, std::abs(rec.hess_det_g - Complex(expected)) / std::fabs(expected));
    ok = ok && err <= 1e-8L;
    worst = std::max(worst, err);
    r.passed = r.passed && ok;
    r.csv += std::to_string(k) + "," + std::to_string(c) + "," + std::to_string(phi.size()) + "," +
             std::to_string(psi.size()) + "," + format_real(spread < 1e-12L ? 0 : spread) + "," +
             format_real(psi.front().hess_det_g.real()) + "," + format_real(expected) + "," +
             (err <= 1e-8L ? "ok" : format_real(err)) + "\n";
  }
  const double secs = detail::seconds_since(t0);
  r.passed = r.passed && secs < 30;
  r.detail = "max det rel err " + format_real(worst) + ", " + format_real(secs) + " s";
  return r;
}

inline CriterionResult check_hessian_identity(const ValidationOptions& o) {
  CriterionResult r{4, "Hessian transformation identity", true, "", "case,c,k,records,ok\n"};
  long double worst = 0;
  auto check = [&](const std::string& label, const RationalPolynomial& v, int c, int k) {
    const auto psi = build_Psi(v, find_maxima(v, o.maximizer()));
    bool ok = true;
    for (const auto& rec : psi) {
      const Complex rhs = std::pow(static_cast<long double>(k), c - 1) / (k - 2) * rec.hess_det_g;
      const long double err = std::abs(Complex(rec.hess_det_sphere) - rhs) / std::abs(rhs);
      worst = std::max(worst, err);
      ok = ok && err <= 1e-8L;
    }
    r.passed = r.passed && ok;
    r.csv += label + "," + std::to_string(c) + "," + std::to_string(k) + "," + std::to_string(psi.size()) + "," +
             (ok ? "1" : "0") + "\n";
  };
  for (auto [k, c] : detail::ek_family()) check("e" + std::to_string(k), build_elementary_symmetric(c, k), c, k);
  std::mt19937_64 rng(o.seed + 4);
  for (int i = 0; i < 20; ++i) {
    const int c = 2 + i % 2, k = 3 + (i / 2) % 2;
    check("random" + std::to_string(i), potential(detail::random_spec(rng, c, k, 1, 9)), c, k);
  }
  r.detail = "max rel err " + format_real(worst);
  return r;
}

inline CriterionResult check_quadrature(const ValidationOptions& o) {
  const auto t0 = detail::Clock::now();
  CriterionResult r{5, "sphere quadrature", true, "", "c,k,n,exact,quadrature,error\n"};
  std::mt19937_64 rng(o.seed + 5);
  std::vector<std::pair<RationalPolynomial, std::pair<int, int>>> cases;
  for (auto [c, k] : std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 3}, {3, 4}})
    cases.push_back({potential(detail::random_spec(rng, c, k, -5, 7)), {c, k}});
  cases.push_back({build_elementary_symmetric(3, 3), {3, 3}});
  long double worst12 = 0, worst3 = 0;
  for (const auto& [v, ck] : cases) {
    const auto [c, k] = ck;
    for (int n = 0; n * k <= 8; ++n) {
      const auto q = quadrature_check({n, k, c}, v);
      const long double tol = c == 3 ? 1e-6L : 1e-8L;
      r.passed = r.passed && q.error <= tol;
      (c == 3 ? worst3 : worst12) = std::max(c == 3 ? worst3 : worst12, q.error);
      r.csv += std::to_string(c) + "," + std::to_string(k) + "," + std::to_string(n) + "," + to_string(q.exact) + "," +
               format_real(q.quadrature) + "," + (q.error <= tol ? "ok" : format_real(q.error)) + "\n";
    }
  }
  const double secs = detail::seconds_since(t0);
  r.passed = r.passed && secs < 60;
  r.detail = "max err c<=2 " + format_real(worst12) + ", c=3 " + format_real(worst3) + ", " + format_real(secs) + " s";
  return r;
}

inline std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
  std::string s;
  for (const auto& row : rows)
    s += std::to_string(row.n) + "," + format_real(row.ell) + "," + format_real(row.exact_log.log10_abs()) + "," +
         format_real(row.estimate.log10_abs()) + "," + format_real(row.ratio) + "," + format_real(row.abs_ratio_minus_1) + "\n";
  return s;
}

inline CriterionResult check_convergence(const ValidationOptions& o) {
  CriterionResult r{6, "asymptotic convergence", true, "", "case,n,l,A_exact_log10,A_est_log10,ratio,abs_ratio_minus_1\n"};
  auto run = [&](const std::string& label, const WeightSpec& spec, int last, long double bound) {
    std::vector<int> ns;
    for (int n = 10; n <= last; n += 2) ns.push_back(n);
    const auto rows = convergence_table(spec, ns, o.maximizer());
    bool ok = rows.back().abs_ratio_minus_1 <= bound;
    for (std::size_t i = 1; i < rows.size(); ++i) ok = ok && rows[i].abs_ratio_minus_1 < rows[i - 1].abs_ratio_minus_1;
    std::istringstream lines(convergence_csv(rows));
    for (std::string line; std::getline(lines, line);) r.csv += label + "," + line + "\n";
    r.passed = r.passed && ok;
    r.detail += label + " final |ratio-1| " + format_real(rows.back().abs_ratio_minus_1) + (ok ? "" : " (FAIL)") + "; ";
  };
  WeightSpec cubic(1, 3);
  cubic.set({3}, 1);
  run("c1k3", cubic, 30, 0.1L);
  run("e3c3", elementary_symmetric_weights(3, 3), 20, 0.15L);
  return r;
}

inline CriterionResult check_closed_forms(const ValidationOptions&) {
  CriterionResult r{7, "closed-form cross-check", true, "", "k,c,n,l,estimate_log10,closed_log10,status\n"};
  long double worst = 0;
  for (auto [k, c] : detail::ek_family()) {
    const auto psi = critical_data_ek(k, c);
    for (int n = 1; n <= 100; ++n) {
      const ColoringRequest req{n, k, c};
      const EstimateRequest e = req.estimate();
      if (e.integral() && e.ell() > 50) continue;
      const auto est = estimate_critical_sum(e, psi);
      const auto cf = closed_form_P(req);
      std::string status;
      if (!e.integral() || (c == k && n % 2 == 1)) {
        const bool ok = est.value.is_zero() && cf.is_zero();
        r.passed = r.passed && ok;
        status = ok ? "zero" : "nonzero";
      } else {
        const long double err = std::fabs((est.value / cf).to_real() - 1);
        worst = std::max(worst, err);
        r.passed = r.passed && err <= 1e-10L;
        status = err <= 1e-10L ? "ok" : format_real(err);
      }
      r.csv += std::to_string(k) + "," + std::to_string(c) + "," + std::to_string(n) + "," +
               (e.integral() ? std::to_string(e.ell()) : std::string("-")) + "," +
               format_real(est.value.is_zero() ? 0 : std::round(est.value.log10_abs() * 1e8L) / 1e8L) + "," +
               format_real(cf.is_zero() ? 0 : std::round(cf.log10_abs() * 1e8L) / 1e8L) + "," + status + "\n";
    }
  }
  r.detail = "max rel err " + format_real(worst);
  return r;
}

inline CriterionResult check_expected_colorings(const ValidationOptions&) {
  CriterionResult r{8, "expected colorings", true, "", "k,c,n,empirical_log10,closed_log10,abs_ratio_minus_1\n"};
  for (auto [k, c] : std::vector<std::pair<int, int>>{{3, 3}, {3, 4}}) {
    long double prev = std::numeric_limits<long double>::infinity();
    bool decreasing = true;
    std::string devs;
    for (int n = 10; n <= 20; n += 2) {
      const auto emp = empirical_E({n, k, c});
      const auto cf = closed_form_E({n, k, c});
      const long double dev = std::fabs((emp / cf).to_real() - 1);
      decreasing = decreasing && dev < prev;
      prev = dev;
      devs += (devs.empty() ? "" : " ") + format_real(std::round(dev * 1e5L) / 1e5L);
      r.csv += std::to_string(k) + "," + std::to_string(c) + "," + std::to_string(n) + "," + format_real(emp.log10_abs()) +
               "," + format_real(cf.log10_abs()) + "," + format_real(dev) + "\n";
    }
    r.passed = r.passed && decreasing;
    r.detail += "(" + std::to_string(k) + "," + std::to_string(c) + ") " + (decreasing ? "decreasing" : "NOT decreasing") +
                " [" + devs + "]; ";
  }
  long double worst = 0;
  for (int n = 2; n <= 40; n += 2) {
    const long double direct = 2 * std::pow(2 / std::sqrt(3.0L), n);
    worst = std::max(worst, detail::rel_err(closed_form_E({n, 3, 3}).to_real(), direct));
  }
  r.passed = r.passed && worst <= 1e-12L;
  r.detail += "closed form vs 2(2/sqrt3)^n rel err " + format_real(worst);
  return r;
}

inline CriterionResult check_estimate_consistency(const ValidationOptions& o) {
  CriterionResult r{9, "estimate consistency", true, "", "k,c,l,ratio_minus_1\n"};
  long double worst = 0;
  for (auto [k, c] : detail::ek_family()) {
    const auto v = build_elementary_symmetric(c, k);
    const auto crit = critical_data(v, o.maximizer());
    for (int n = 1; n <= 100; ++n) {
      const EstimateRequest e{n, k, c};
      if (!e.integral() || e.ell() < 10 || e.ell() > 50) continue;
      const auto a = estimate_critical_sum(e, crit.psi), b = estimate_sphere_maxima(e, v, crit.phi);
      long double dev = 0;
      if (a.value.is_zero() || b.value.is_zero())
        dev = a.value.is_zero() && b.value.is_zero() ? 0 : std::numeric_limits<long double>::infinity();
      else
        dev = std::fabs((a.value / b.value).to_real() - 1);
      worst = std::max(worst, dev);
      r.passed = r.passed && dev <= 2.0L / static_cast<long double>(e.ell());
      r.csv += std::to_string(k) + "," + std::to_string(c) + "," + std::to_string(e.ell()) + "," +
               (dev < 1e-12L ? std::string("<1e-12") : format_real(dev)) + "\n";
    }
  }
  r.detail = "max |ratio-1| " + format_real(worst);
  return r;
}

inline std::vector<std::function<CriterionResult(const ValidationOptions&)>> criterion_checks() {
  return {check_exact_agreement, check_small_values,  check_ek_critical_points,
          check_hessian_identity, check_quadrature,   check_convergence,
          check_closed_forms,     check_expected_colorings, check_estimate_consistency};
}

// Runs checks 1 to 9, then repeats them to confirm byte-identical artifacts.
inline std::vector<CriterionResult> run_validation(const ValidationOptions& o = {}) {
  std::vector<CriterionResult> results;
  for (const auto& check : criterion_checks()) {
    try {
      results.push_back(check(o));
    } catch (const std::exception& e) {
      CriterionResult failed;
      failed.id = static_cast<int>(results.size()) + 1;
      failed.name = "check " + std::to_string(failed.id);
      failed.detail = std::string("exception: ") + e.what();
      results.push_back(std::move(failed));
    }
  }
  CriterionResult det{10, "determinism", true, "", "criterion,identical\n"};
  for (std::size_t i = 0; i < results.size(); ++i) {
    std::string again;
    try {
      again = criterion_checks()[i](o).csv;
    } catch (const std::exception&) {
    }
    const bool same = again == results[i].csv;
    det.passed = det.passed && same;
    det.csv += std::to_string(results[i].id) + "," + (same ? "1" : "0") + "\n";
  }
  det.detail = det.passed ? "all artifacts identical on rerun" : "artifacts differ on rerun";
  results.push_back(std::move(det));
  return results;
}

}  // namespace wickenum
