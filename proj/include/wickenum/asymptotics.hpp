#pragma once

// Leading-order estimates of A(n) from the critical points of g, the
// equivalent form over spherical maxima, and a quadrature check of the
// sphere-integral representation.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "wickenum/errors.hpp"
#include "wickenum/exact_enum.hpp"
#include "wickenum/log_value.hpp"
#include "wickenum/sphere_critical.hpp"
#include "wickenum/weights.hpp"

namespace wickenum {

struct EstimateRequest {
  int n = 0;
  int k = 3;
  int c = 1;

  long twice_m() const { return static_cast<long>(n) * k; }
  bool integral() const { return twice_m() % 2 == 0; }
  long m() const { return twice_m() / 2; }
  // n(k/2 - 1), meaningful when integral()
  long ell() const { return m() - n; }
};

enum class Diagnostic { none, parity_cancellation, non_integral };

inline const char* to_string(Diagnostic d) {
  switch (d) {
    case Diagnostic::none: return "none";
    case Diagnostic::parity_cancellation: return "parity-cancellation";
    case Diagnostic::non_integral: return "non-integral";
  }
  return "?";
}

struct Estimate {
  LogMagnitudeValue value;
  Diagnostic diagnostic = Diagnostic::none;
  long double imag_ratio = 0;  // |Im| / |Re| of the sum before projection
};

inline constexpr long double cancellation_threshold = 1e-10L;
inline constexpr long double imaginary_tolerance = 1e-8L;

namespace detail {

inline LogMagnitudeValue principal_sqrt(const Complex& w) {
  if (w == Complex(0)) throw DegenerateCriticalPoint("square root of a vanishing determinant");
  return LogMagnitudeValue::from_log(std::log(std::abs(w)) / 2, std::polar(1.0L, std::arg(w) / 2));
}

inline Estimate finish_sum(std::span<const LogMagnitudeValue> terms, const LogMagnitudeValue& prefactor) {
  Estimate est;
  const LogSum s = log_sum(terms);
  if (s.total.is_zero() || s.relative_log() < std::log(cancellation_threshold)) {
    est.diagnostic = Diagnostic::parity_cancellation;
    return est;
  }
  const Complex ph = s.total.phase();
  est.imag_ratio = ph.real() == 0 ? std::numeric_limits<long double>::infinity() : std::fabs(ph.imag() / ph.real());
  if (std::fabs(ph.imag()) > imaginary_tolerance * std::fabs(ph.real()) + 1e-300L)
    throw Error("estimate has an imaginary part of relative size " + std::to_string(static_cast<double>(est.imag_ratio)));
  est.value = s.total.real_part() * prefactor;
  return est;
}

inline void check_request(const EstimateRequest& req) {
  if (req.n < 0) throw InvalidArgument("n must be non-negative");
  if (req.k < 3) throw InvalidArgument("estimates need k >= 3");
  if (req.c < 1) throw InvalidArgument("estimates need c >= 1");
}

}  // namespace detail

// (l-1)!/(2 pi) sum_z (-g(z))^{-l} / sqrt((-1)^{c-1} det Hess g(z)) over the
// supplied critical points.
inline Estimate estimate_critical_sum(const EstimateRequest& req, std::span<const CriticalPointRecord> psi) {
  detail::check_request(req);
  Estimate est;
  if (!req.integral()) {
    est.diagnostic = Diagnostic::non_integral;
    return est;
  }
  const long ell = req.ell();
  if (ell < 1) throw InvalidArgument("the estimate needs l = n(k/2 - 1) >= 1");
  if (psi.empty()) throw InvalidArgument("no critical points supplied");

  std::vector<LogMagnitudeValue> terms;
  const long double sign = (req.c - 1) % 2 == 0 ? 1 : -1;
  for (const auto& r : psi) {
    if (static_cast<int>(r.z.size()) != req.c) throw DimensionMismatch("critical point has the wrong length");
    if (!r.nondegenerate) throw DegenerateCriticalPoint("degenerate critical point at tau = " + std::to_string(static_cast<double>(std::abs(r.tau))));
    const LogMagnitudeValue neg_g = LogMagnitudeValue::from_complex(-r.g_of_z);
    terms.push_back(neg_g.pow(-ell) / detail::principal_sqrt(sign * r.hess_det_g));
  }
  const auto prefactor =
      LogMagnitudeValue::from_log(std::lgamma(static_cast<long double>(ell)) - std::log(2 * std::numbers::pi_v<long double>));
  return detail::finish_sum(terms, prefactor);
}

// The same leading term written over the maxima x and -x of |V|:
//   k^{m+(c-1)/2} (k/2-1)^{n-m} sqrt(k/2-1) / (sqrt 8 pi) Gamma(m-n)
//     sum V(x)^n / sqrt((-1)^{c-1} det H_S(x)).
inline Estimate estimate_sphere_maxima(const EstimateRequest& req, const RationalPolynomial& v,
                                std::span<const SphericalMaximizer> phi) {
  detail::check_request(req);
  Estimate est;
  if (!req.integral()) {
    est.diagnostic = Diagnostic::non_integral;
    return est;
  }
  const long ell = req.ell();
  if (ell < 1) throw InvalidArgument("the estimate needs m - n >= 1");
  if (phi.empty()) throw InvalidArgument("no maximizers supplied");

  const long double sign = (req.c - 1) % 2 == 0 ? 1 : -1;
  const long double antipode = (static_cast<long>(req.k) * req.n) % 2 == 0 ? 1 : -1;
  std::vector<LogMagnitudeValue> terms;
  for (const auto& x : phi) {
    if (static_cast<int>(x.x.size()) != req.c) throw DimensionMismatch("maximizer has the wrong length");
    const long double det = sign * hessian_det_sphere(v, x);
    if (det <= 0) throw DegenerateCriticalPoint("spherical Hessian is singular");
    const LogMagnitudeValue vn = LogMagnitudeValue::from_real(x.value).pow(req.n);
    const LogMagnitudeValue root = LogMagnitudeValue::from_log(std::log(det) / 2);
    terms.push_back(vn / root);
    terms.push_back(vn * LogMagnitudeValue::from_real(antipode) / root);
  }
  const long double k = req.k, c = req.c, half = k / 2 - 1;
  const long double log_pref = (req.m() + (c - 1) / 2) * std::log(k) - ell * std::log(half) + std::log(half) / 2 -
                               std::log(std::sqrt(8.0L) * std::numbers::pi_v<long double>) +
                               std::lgamma(static_cast<long double>(ell));
  return detail::finish_sum(terms, LogMagnitudeValue::from_log(log_pref));
}

// 2^{m+(c-2)/2} Gamma(m + c/2) / ((2 pi)^{c/2} n!), as a logarithm.
inline long double sphere_prefactor_log(const EstimateRequest& req) {
  const long double m = req.twice_m() / 2.0L, c = req.c;
  return (m + (c - 2) / 2) * std::log(2.0L) + std::lgamma(m + c / 2) -
         (c / 2) * std::log(2 * std::numbers::pi_v<long double>) - std::lgamma(req.n + 1.0L);
}

struct QuadratureReport {
  long double quadrature = 0;
  Rational exact;
  long double error = 0;  // relative, or absolute when exact == 0
  bool relative = true;
};

namespace detail {

// Gauss-Legendre nodes and weights on [-1, 1] from the Jacobi matrix.
inline std::pair<std::vector<long double>, std::vector<long double>> gauss_legendre(int nodes) {
  using M = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  M j = M::Zero(nodes, nodes);
  for (int i = 1; i < nodes; ++i) {
    const long double b = i / std::sqrt(4.0L * i * i - 1);
    j(i, i - 1) = j(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<M> eig(j);
  std::vector<long double> x(static_cast<std::size_t>(nodes)), w(static_cast<std::size_t>(nodes));
  for (int i = 0; i < nodes; ++i) {
    x[static_cast<std::size_t>(i)] = eig.eigenvalues()[i];
    const long double v0 = eig.eigenvectors()(0, i);
    w[static_cast<std::size_t>(i)] = 2 * v0 * v0;
  }
  return {x, w};
}

}  // namespace detail

// Integral of V^n over the unit sphere S^{c-1}, c <= 3.
inline long double sphere_integral(const RationalPolynomial& v, int n) {
  using std::cos, std::sin;
  constexpr long double two_pi = 2 * std::numbers::pi_v<long double>;
  const FloatPolynomial<long double> f(v);
  auto vn = [&](std::initializer_list<long double> x) {
    const std::vector<long double> pt(x);
    return std::pow(f(pt), n);
  };
  switch (v.nvars()) {
    case 1:
      return vn({1}) + vn({-1});
    case 2: {
      long double err = 0;
      const long double val = boost::math::quadrature::gauss_kronrod<long double, 61>::integrate(
          [&](long double t) { return vn({cos(t), sin(t)}); }, 0.0L, two_pi, 15, 1e-13L, &err);
      return val;
    }
    case 3: {
      long double prev = 0;
      for (int nodes = 8, pts = 16; nodes <= 512; nodes *= 2, pts *= 2) {
        const auto [u, w] = detail::gauss_legendre(nodes);
        long double total = 0, mag = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
          // theta = pi (u + 1) / 2
          const long double th = std::numbers::pi_v<long double> * (u[i] + 1) / 2;
          long double ring = 0, ring_abs = 0;
          for (int j = 0; j < pts; ++j) {
            const long double ph = two_pi * j / pts;
            const long double val = vn({sin(th) * cos(ph), sin(th) * sin(ph), cos(th)});
            ring += val;
            ring_abs += std::fabs(val);
          }
          const long double jac = w[i] * std::numbers::pi_v<long double> / 2 * sin(th) * two_pi / pts;
          total += ring * jac;
          mag += ring_abs * jac;
        }
        if (nodes > 8 && std::fabs(total - prev) <= 1e-9L * std::max(std::fabs(total), mag * 1e-6L)) return total;
        prev = total;
      }
      throw ConvergenceFailure("sphere quadrature did not stabilise");
    }
    default:
      throw InvalidArgument("quadrature check supports c <= 3");
  }
}

inline QuadratureReport quadrature_check(const EstimateRequest& req, const RationalPolynomial& v) {
  if (req.c != static_cast<int>(v.nvars())) throw DimensionMismatch("request and V disagree on c");
  if (req.c > 3) throw InvalidArgument("quadrature check supports c <= 3");
  QuadratureReport rep;
  rep.exact = exact_A_series(req.n, v);
  rep.quadrature = std::exp(sphere_prefactor_log(req)) * sphere_integral(v, req.n);
  if (rep.exact == 0) {
    rep.relative = false;
    rep.error = std::fabs(rep.quadrature);
  } else {
    rep.error = std::fabs(rep.quadrature / to_floating(rep.exact) - 1);
  }
  return rep;
}

// Maxima and critical points of a potential, computed once per table.
struct CriticalData {
  std::vector<SphericalMaximizer> phi;
  std::vector<CriticalPointRecord> psi;
};

inline CriticalData critical_data(const RationalPolynomial& v, const MaximizerOptions& mopts = {},
                                  const PsiOptions& popts = {}) {
  CriticalData d;
  d.phi = find_maxima(v, mopts);
  d.psi = build_Psi(v, d.phi, popts);
  return d;
}

struct ConvergenceRow {
  int n = 0;
  long double ell = 0;
  Rational exact;
  LogMagnitudeValue exact_log;
  LogMagnitudeValue estimate;
  long double ratio = 1;
  long double abs_ratio_minus_1 = 0;
};

// exact / estimate, with 1 when both vanish.
inline long double safe_ratio(const LogMagnitudeValue& exact, const LogMagnitudeValue& est) {
  if (exact.is_zero() && est.is_zero()) return 1;
  if (est.is_zero()) return std::numeric_limits<long double>::infinity();
  if (exact.is_zero()) return 0;
  return (exact / est).to_real();
}

inline std::vector<ConvergenceRow> convergence_table(const WeightSpec& spec, std::span<const int> ns,
                                                     const MaximizerOptions& mopts = {}) {
  if (!std::is_sorted(ns.begin(), ns.end())) throw InvalidArgument("n list must be ascending");
  const RationalPolynomial v = potential(spec);
  const CriticalData crit = critical_data(v, mopts);
  std::vector<ConvergenceRow> rows;
  for (int n : ns) {
    ConvergenceRow row;
    row.n = n;
    const EstimateRequest req{n, spec.degree(), spec.colors()};
    row.ell = static_cast<long double>(req.twice_m()) / 2 - n;
    row.exact = exact_A_series(n, v);
    row.exact_log = LogMagnitudeValue::from_rational(row.exact);
    row.estimate = estimate_critical_sum(req, crit.psi).value;
    row.ratio = safe_ratio(row.exact_log, row.estimate);
    row.abs_ratio_minus_1 = std::fabs(row.ratio - 1);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wickenum
