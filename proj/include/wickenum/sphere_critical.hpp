#pragma once

// Maxima of |V| on the real unit sphere, the critical points z = tau x of
// g = -|z|^2/2 + V built from them, and the two Hessian determinants.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "wickenum/errors.hpp"
#include "wickenum/multipoly.hpp"

namespace wickenum {

using Complex = std::complex<long double>;

struct SphericalMaximizer {
  std::vector<long double> x;
  long double value = 0;      // V(x), signed
  long double grad_norm = 0;  // Riemannian gradient norm after polishing
  bool antipodal_rep = true;
};

struct MaximizerOptions {
  int restarts = 0;  // 0: max(200, 100 c)
  std::uint64_t seed = 42;
  long double tol_stat = 1e-10;  // relative to max(1, k |V(x)|)
  long double cluster_angle = 1e-6;
  long double global_rel_tol = 1e-9;
  Precision precision = Precision::extended;

  int effective_restarts(std::size_t c) const {
    return restarts > 0 ? restarts : std::max(200, 100 * static_cast<int>(c));
  }
};

namespace detail {

template <class Real>
using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <class Real>
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

template <class Real>
struct Jet {
  FloatJet<Real> jet;
  int k;

  explicit Jet(const RationalPolynomial& v) : jet(v), k(*v.homogeneous_degree()) {}

  Real value(const Vec<Real>& x) const { return jet.value(std::span<const Real>(x.data(), x.size())); }

  Vec<Real> grad(const Vec<Real>& x) const {
    Vec<Real> g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = jet.grad[i](std::span<const Real>(x.data(), x.size()));
    return g;
  }

  Mat<Real> hess(const Vec<Real>& x) const {
    const auto c = x.size();
    Mat<Real> h(c, c);
    for (Eigen::Index i = 0; i < c; ++i)
      for (Eigen::Index j = 0; j < c; ++j) h(i, j) = jet.hess[i][j](std::span<const Real>(x.data(), c));
    return h;
  }
};

// Columns form an orthonormal basis of the tangent space at the unit vector x.
template <class Real>
Mat<Real> tangent_basis(const Vec<Real>& x) {
  const auto c = x.size();
  Mat<Real> q = Eigen::HouseholderQR<Mat<Real>>(Mat<Real>(x)).householderQ() * Mat<Real>::Identity(c, c);
  return q.rightCols(c - 1);
}

// Lexicographic comparison that ignores coordinate differences below tol.
template <class Real>
int lex_compare(const Vec<Real>& a, const Vec<Real>& b, Real tol) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] > b[i] + tol) return 1;
    if (a[i] < b[i] - tol) return -1;
  }
  return 0;
}

template <class Real>
Vec<Real> fold_antipodal(const Vec<Real>& x) {
  const Vec<Real> neg = -x;
  return lex_compare<Real>(x, neg, Real(1e-9)) >= 0 ? x : neg;
}

template <class Real>
Real angle_between(const Vec<Real>& a, const Vec<Real>& b) {
  const Real chord = std::min<Real>((a - b).norm(), 2);
  return 2 * std::asin(chord / 2);
}

struct Candidate {
  std::vector<long double> x;
  long double value;
  long double grad_norm;
};

// Ascent on s V from x0 followed by Newton polishing; nullopt if the run
// does not reach a stationary local maximum.
template <class Real>
std::optional<Candidate> climb(const Jet<Real>& f, Vec<Real> x, int s, const MaximizerOptions& opts) {
  const Eigen::Index c = x.size();
  auto fval = [&](const Vec<Real>& y) { return s * f.value(y); };
  auto rgrad = [&](const Vec<Real>& y) {
    Vec<Real> g = s * f.grad(y);
    return Vec<Real>(g - y.dot(g) * y);
  };
  auto scale = [&](const Vec<Real>& y) { return std::max<Real>(1, f.k * std::fabs(f.value(y))); };

  Real step = 1;
  Real fx = fval(x);
  for (int it = 0; it < 5000; ++it) {
    const Vec<Real> rg = rgrad(x);
    const Real gn2 = rg.squaredNorm();
    if (std::sqrt(gn2) <= Real(1e-7) * std::max<Real>(std::fabs(fx) * f.k, Real(1e-300))) break;
    Real t = step;
    bool moved = false;
    while (t > Real(1e-30)) {
      const Vec<Real> xn = (x + t * rg).normalized();
      const Real fn = fval(xn);
      if (fn >= fx + Real(1e-4) * t * gn2) {
        x = xn;
        fx = fn;
        step = 2 * t;
        moved = true;
        break;
      }
      t /= 2;
    }
    if (!moved) break;
  }
  if (fx <= 0) return std::nullopt;

  for (int it = 0; it < 40; ++it) {
    const Vec<Real> g = s * f.grad(x);
    const Mat<Real> b = tangent_basis<Real>(x);
    const Vec<Real> gr = b.transpose() * g;
    if (gr.norm() <= std::numeric_limits<Real>::epsilon() * 4 * scale(x)) break;
    const Mat<Real> hr =
        b.transpose() * (s * f.hess(x)) * b - x.dot(g) * Mat<Real>::Identity(c - 1, c - 1);
    const Vec<Real> d = -hr.fullPivLu().solve(gr);
    const Vec<Real> xn = (x + b * d).normalized();
    if (rgrad(xn).norm() >= gr.norm()) break;
    x = xn;
  }

  const Vec<Real> g = s * f.grad(x);
  const Mat<Real> b = tangent_basis<Real>(x);
  const Mat<Real> hr = b.transpose() * (s * f.hess(x)) * b - x.dot(g) * Mat<Real>::Identity(c - 1, c - 1);
  const Real gn = rgrad(x).norm();
  if (gn > Real(opts.tol_stat) * scale(x)) return std::nullopt;
  Eigen::SelfAdjointEigenSolver<Mat<Real>> eig(hr, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().maxCoeff() > Real(1e-8) * scale(x)) return std::nullopt;

  Candidate out;
  out.x.assign(x.data(), x.data() + c);
  out.value = f.value(x);
  out.grad_norm = gn;
  return out;
}

template <class Real>
std::vector<SphericalMaximizer> find_maxima_impl(const RationalPolynomial& v, const MaximizerOptions& opts) {
  const auto c = static_cast<Eigen::Index>(v.nvars());
  const Jet<Real> f(v);

  if (c == 1) {
    const Vec<Real> one = Vec<Real>::Ones(1);
    SphericalMaximizer m;
    m.x = {1};
    m.value = f.value(one);
    if (m.value == 0) throw InvalidArgument("V vanishes on the sphere");
    return {m};
  }

  std::vector<Candidate> found;
  const int restarts = opts.effective_restarts(static_cast<std::size_t>(c));
  for (int r = 0; r < restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint64_t>(opts.seed), static_cast<std::uint64_t>(r)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    Vec<Real> x(c);
    for (Eigen::Index i = 0; i < c; ++i) x[i] = static_cast<Real>(normal(rng));
    if (x.norm() == 0) continue;
    x.normalize();
    for (int s : {1, -1})
      if (auto cand = climb<Real>(f, x, s, opts)) found.push_back(std::move(*cand));
  }
  if (found.empty()) throw ConvergenceFailure("no restart reached a stationary maximum of |V|");

  struct Cluster {
    Vec<Real> x;
    Candidate best;
  };
  std::vector<Cluster> clusters;
  for (const auto& cand : found) {
    Vec<Real> x = Eigen::Map<const Eigen::Matrix<long double, Eigen::Dynamic, 1>>(cand.x.data(), c).template cast<Real>();
    bool merged = false;
    for (auto& cl : clusters) {
      const Real a = std::min(angle_between<Real>(cl.x, x), angle_between<Real>(cl.x, Vec<Real>(-x)));
      if (a <= Real(opts.cluster_angle)) {
        if (cand.grad_norm < cl.best.grad_norm) cl.best = cand;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.push_back({x, cand});
  }

  long double best = 0;
  for (const auto& cl : clusters) best = std::max(best, std::fabs(cl.best.value));
  if (best == 0) throw InvalidArgument("V vanishes on the sphere");

  std::vector<std::pair<Vec<Real>, SphericalMaximizer>> kept;
  for (const auto& cl : clusters) {
    if (std::fabs(cl.best.value) < (1 - opts.global_rel_tol) * best) continue;
    Vec<Real> x = Eigen::Map<const Eigen::Matrix<long double, Eigen::Dynamic, 1>>(cl.best.x.data(), c).template cast<Real>();
    x = fold_antipodal<Real>(x);
    SphericalMaximizer m;
    m.x.assign(x.data(), x.data() + c);
    m.value = f.value(x);
    m.grad_norm = cl.best.grad_norm;
    kept.emplace_back(x, m);
  }
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return lex_compare<Real>(a.first, b.first, Real(1e-9)) > 0; });
  std::vector<SphericalMaximizer> out;
  for (auto& [x, m] : kept) out.push_back(std::move(m));
  return out;
}

}  // namespace detail

inline std::vector<SphericalMaximizer> find_maxima(const RationalPolynomial& v, const MaximizerOptions& opts = {}) {
  if (v.is_zero()) throw InvalidArgument("V vanishes on the sphere");
  if (!v.homogeneous_degree()) throw InvalidArgument("V must be homogeneous");
  if (opts.precision == Precision::double_precision) return detail::find_maxima_impl<double>(v, opts);
  return detail::find_maxima_impl<long double>(v, opts);
}

// The k-2 solutions of tau^{2-k} = k value: principal root of 1/(k value)
// times the (k-2)-th roots of unity.
inline std::vector<Complex> tau_roots(long double value, int k) {
  if (k < 3) throw InvalidArgument("tau roots need k >= 3");
  if (value == 0) throw InvalidArgument("tau roots need V(x) != 0");
  const int p = k - 2;
  const Complex base = Complex(1) / Complex(k * value);
  const Complex principal = std::polar(std::pow(std::abs(base), 1.0L / p), std::arg(base) / p);
  std::vector<Complex> roots;
  for (int j = 0; j < p; ++j) {
    Complex t = principal * std::polar(1.0L, 2 * std::numbers::pi_v<long double> * j / p);
    // rounding residue of cos and sin at multiples of pi/2
    const long double eps = 1e-15L * std::abs(t);
    if (std::fabs(t.real()) < eps) t.real(0);
    if (std::fabs(t.imag()) < eps) t.imag(0);
    roots.push_back(t);
  }
  return roots;
}

// det [d_i d_j g](z) with g = -|z|^2/2 + V, by partial-pivot LU.
inline Complex hessian_det_g(const RationalPolynomial& v, std::span<const Complex> z) {
  if (z.size() != v.nvars()) throw DimensionMismatch("z has the wrong length");
  const auto c = static_cast<Eigen::Index>(z.size());
  const auto h = hessian(v);
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> m(c, c);
  for (Eigen::Index i = 0; i < c; ++i)
    for (Eigen::Index j = 0; j < c; ++j)
      m(i, j) = FloatPolynomial<long double>(h[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])(z) -
                (i == j ? Complex(1) : Complex(0));
  return m.partialPivLu().determinant();
}

// det of (1/V(x)) P HessV(x) P^T - k I on the tangent space at x.
inline long double hessian_det_sphere(const RationalPolynomial& v, std::span<const long double> x) {
  if (x.size() != v.nvars()) throw DimensionMismatch("x has the wrong length");
  const auto c = static_cast<Eigen::Index>(x.size());
  if (c == 1) return 1;
  using Real = long double;
  const detail::Jet<Real> f(v);
  const detail::Vec<Real> xv = Eigen::Map<const detail::Vec<Real>>(x.data(), c);
  const Real val = f.value(xv);
  if (val == 0) throw InvalidArgument("spherical Hessian needs V(x) != 0");
  const detail::Mat<Real> p = detail::tangent_basis<Real>(xv).transpose();
  const detail::Mat<Real> hs = p * f.hess(xv) * p.transpose() / val - f.k * detail::Mat<Real>::Identity(c - 1, c - 1);
  Eigen::SelfAdjointEigenSolver<detail::Mat<Real>> eig(hs, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().maxCoeff() > 1e-9L * f.k)
    throw NotAMaximum("spherical Hessian has a positive eigenvalue");
  return hs.determinant();
}

inline long double hessian_det_sphere(const RationalPolynomial& v, const SphericalMaximizer& m) {
  return hessian_det_sphere(v, std::span<const long double>(m.x));
}

struct CriticalPointRecord {
  std::vector<long double> x;
  Complex tau;
  std::vector<Complex> z;
  Complex g_of_z;
  Complex hess_det_g;
  long double hess_det_sphere = 0;
  bool nondegenerate = false;
  long double lagrange_residual = 0;  // max_i |d_i g(z)| / max(1, |z|)
  long double radial_residual = 0;    // |Hess g(z) z - (k-2) z| / |(k-2) z|
  bool residual_ok = false;
};

struct PsiOptions {
  long double tol_crit = 1e-9;
  long double tol_degen = 1e-8;
};

// One record per antipodal representative and tau root.  The maximizer -x
// gives the roots -tau and hence the same points z.
inline std::vector<CriticalPointRecord> build_Psi(const RationalPolynomial& v,
                                                  std::span<const SphericalMaximizer> maxima,
                                                  const PsiOptions& opts = {}) {
  if (maxima.empty()) throw InvalidArgument("no maximizers supplied");
  const auto k = v.homogeneous_degree();
  if (!k || *k < 3) throw InvalidArgument("critical points need V homogeneous of degree >= 3");
  const std::size_t c = v.nvars();
  const FloatJet<long double> jet(v);

  std::vector<CriticalPointRecord> out;
  for (const auto& m : maxima) {
    if (m.x.size() != c) throw DimensionMismatch("maximizer has the wrong length");
    const long double det_s = hessian_det_sphere(v, m);
    for (const Complex& tau : tau_roots(m.value, *k)) {
      CriticalPointRecord r;
      r.x = m.x;
      r.tau = tau;
      for (long double xi : m.x) r.z.push_back(tau * xi);
      const std::span<const Complex> z(r.z);

      Complex sq = 0;
      for (const auto& zi : r.z) sq += zi * zi;
      r.g_of_z = jet.value(z) - sq / 2.0L;

      long double zn = 0, res = 0;
      for (const auto& zi : r.z) zn += std::norm(zi);
      zn = std::sqrt(zn);
      std::vector<Complex> hz(c, 0);
      for (std::size_t i = 0; i < c; ++i) {
        res = std::max(res, std::abs(jet.grad[i](z) - r.z[i]));
        for (std::size_t j = 0; j < c; ++j) hz[i] += (jet.hess[i][j](z) - (i == j ? 1.0L : 0.0L)) * r.z[j];
      }
      r.lagrange_residual = res / std::max(1.0L, zn);
      long double rad = 0;
      for (std::size_t i = 0; i < c; ++i) rad += std::norm(hz[i] - static_cast<long double>(*k - 2) * r.z[i]);
      r.radial_residual = std::sqrt(rad) / ((*k - 2) * zn);
      r.residual_ok = r.lagrange_residual <= opts.tol_crit && r.radial_residual <= 1e-8L;

      r.hess_det_g = hessian_det_g(v, z);
      r.hess_det_sphere = det_s;
      r.nondegenerate = std::abs(r.hess_det_g) > opts.tol_degen;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace wickenum
