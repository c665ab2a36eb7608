#pragma once

// Proper c-edge-colorings of k-regular multigraphs: the potential e_k,
// closed-form asymptotics, and a matrix-tuple oracle.

#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "wickenum/asymptotics.hpp"
#include "wickenum/errors.hpp"
#include "wickenum/exact_enum.hpp"
#include "wickenum/log_value.hpp"
#include "wickenum/sphere_critical.hpp"
#include "wickenum/weights.hpp"

namespace wickenum {

struct ColoringRequest {
  int n = 0;
  int k = 3;
  int c = 3;

  EstimateRequest estimate() const { return {n, k, c}; }
};

namespace detail {

inline void check_coloring(const ColoringRequest& r) {
  if (r.n < 0) throw InvalidArgument("n must be non-negative");
  if (r.k < 1 || r.c < 1) throw InvalidArgument("k and c must be positive");
}

inline long double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0L) - std::lgamma(k + 1.0L) - std::lgamma(n - k + 1.0L);
}

inline constexpr long double log_two_pi = 1.8378770664093454835606594728112353L;

}  // namespace detail

// Weighted count of proper c-edge-colorings, exact.
inline Rational exact_P(const ColoringRequest& r) {
  detail::check_coloring(r);
  if (r.k > r.c) return r.n == 0 ? Rational(1) : Rational(0);
  return exact_A_series(r.n, build_elementary_symmetric(r.c, r.k));
}

// Leading asymptotics of P in closed form.  Zero when l or m is not
// integral, when c < k, and for c = k with n odd.
inline LogMagnitudeValue closed_form_P(const ColoringRequest& r) {
  detail::check_coloring(r);
  if (r.k < 3) throw InvalidArgument("closed forms need k >= 3");
  const EstimateRequest e = r.estimate();
  if (!e.integral() || r.c < r.k) return LogMagnitudeValue::zero();
  const long ell = e.ell();
  if (ell < 1) throw InvalidArgument("closed forms need l >= 1");
  const long double k = r.k, c = r.c, n = r.n, l = static_cast<long double>(ell);
  if (r.c == r.k) {
    if (r.n % 2 != 0) return LogMagnitudeValue::zero();
    // (l-1)! 2^{k/2} / (2 pi) (2/(k-2))^{l - 1/2}
    return LogMagnitudeValue::from_log(std::lgamma(l) + (k / 2) * std::log(2.0L) - detail::log_two_pi +
                                       (l - 0.5L) * std::log(2 / (k - 2)));
  }
  const long double gt = (k - 1) / (c - 1);
  return LogMagnitudeValue::from_log(std::lgamma(l) + std::log(k - 2) / 2 - detail::log_two_pi +
                                     (1 - c) / 2 * std::log(gt + 1) +
                                     n * (std::log(k) + detail::log_binomial(r.c, r.k)) - n * k / 2 * std::log(c) +
                                     l * std::log(2 * k / (k - 2)));
}

// Critical points of g for V = e_k, from the known maximizers: all sign
// patterns of c^{-1/2}(1, ..., 1) when c = k, the diagonal point when c > k.
inline std::vector<CriticalPointRecord> critical_data_ek(int k, int c) {
  if (k < 3) throw InvalidArgument("critical data needs k >= 3");
  if (k > c) throw InvalidArgument("e_k over c variables needs k <= c");
  const long double kk = k, cc = c;
  const long double coord = 1 / std::sqrt(cc);
  const long double base = std::exp(detail::log_binomial(c, k)) * std::pow(cc, -kk / 2);

  long double det;
  if (c == k) {
    det = ((k - 1) % 2 == 0 ? 1 : -1) * std::pow(2.0L, kk - 1) * (kk - 2);
  } else {
    const long double gt = (kk - 1) / (cc - 1);
    det = ((c - 1) % 2 == 0 ? 1 : -1) * std::pow(gt + 1, cc - 1) * (gt * (cc - 1) - 1);
  }

  std::vector<std::vector<long double>> points;
  if (c == k) {
    // first coordinate fixed positive: one representative per antipodal pair
    for (std::uint32_t mask = 0; mask < (1u << (c - 1)); ++mask) {
      std::vector<long double> x(static_cast<std::size_t>(c), coord);
      for (int i = 1; i < c; ++i)
        if (mask & (1u << (c - 1 - i))) x[static_cast<std::size_t>(i)] = -coord;
      points.push_back(std::move(x));
    }
  } else {
    points.emplace_back(static_cast<std::size_t>(c), coord);
  }

  std::vector<CriticalPointRecord> out;
  for (const auto& x : points) {
    int sigma = 1;
    for (long double xi : x)
      if (xi < 0) sigma = -sigma;
    for (const Complex& tau : tau_roots(sigma * base, k)) {
      CriticalPointRecord rec;
      rec.x = x;
      rec.tau = tau;
      for (long double xi : x) rec.z.push_back(tau * xi);
      rec.g_of_z = tau * tau * (2 - kk) / (2 * kk);
      rec.hess_det_g = det;
      rec.hess_det_sphere = std::pow(kk, cc - 1) / (kk - 2) * det;
      rec.nondegenerate = true;
      rec.residual_ok = true;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

struct TupleCaps {
  int max_n = 4;
  int max_c = 4;
};

// Number of c-tuples of symmetric 0/1 matrices with zero diagonal, each a
// partial matching, whose sum has every row sum equal to k.
inline Integer brute_force_tuples(int n, int k, int c, const TupleCaps& caps = {}) {
  if (n < 0 || k < 0 || c < 1) throw InvalidArgument("tuple count needs n, k >= 0 and c >= 1");
  if (n > caps.max_n || c > caps.max_c)
    throw CapExceeded("tuple enumeration limited to n <= " + std::to_string(caps.max_n) + " and c <= " +
                      std::to_string(caps.max_c));
  if (c > 31) throw CapExceeded("too many colors");
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  // colors already used at each vertex; the popcount is its degree
  std::vector<std::uint32_t> used(static_cast<std::size_t>(n), 0);
  // last pair index touching each vertex, for early closing checks
  std::vector<std::size_t> last(static_cast<std::size_t>(n), 0);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    last[static_cast<std::size_t>(pairs[p].first)] = p;
    last[static_cast<std::size_t>(pairs[p].second)] = p;
  }
  const std::uint32_t all = (1u << c) - 1;

  Integer count = 0;
  auto rec = [&](auto&& self, std::size_t p) -> void {
    if (p == pairs.size()) {
      for (auto u : used)
        if (std::popcount(u) != k) return;
      ++count;
      return;
    }
    const auto a = static_cast<std::size_t>(pairs[p].first), b = static_cast<std::size_t>(pairs[p].second);
    const std::uint32_t free = all & ~used[a] & ~used[b];
    // every subset of the free colors, including the empty one
    for (std::uint32_t s = free;; s = (s - 1) & free) {
      if (std::popcount(used[a] | s) <= k && std::popcount(used[b] | s) <= k) {
        used[a] |= s;
        used[b] |= s;
        const bool ok = (last[a] != p || std::popcount(used[a]) == k) && (last[b] != p || std::popcount(used[b]) == k);
        if (ok) self(self, p + 1);
        used[a] &= ~s;
        used[b] &= ~s;
      }
      if (s == 0) break;
    }
  };
  if (n == 0) return 1;
  if (n == 1) return k == 0 ? 1 : 0;
  rec(rec, 0);
  return count;
}

// (kn/e)^{kn/2} sqrt 2 exp((k^2-4k+3)/4) / (k!)^n: asymptotic number of
// k-regular vertex-labeled loopless multigraphs.
inline LogMagnitudeValue bender_canfield_count(int n, int k) {
  if (n < 1 || k < 3) throw InvalidArgument("the count needs n >= 1 and k >= 3");
  if ((static_cast<long>(n) * k) % 2 != 0) return LogMagnitudeValue::zero();
  const long double kn = static_cast<long double>(k) * n, kk = k;
  return LogMagnitudeValue::from_log(kn / 2 * (std::log(kn) - 1) + std::log(2.0L) / 2 + (kk * kk - 4 * kk + 3) / 4 -
                                     n * std::lgamma(kk + 1));
}

// Expected number of proper c-edge-colorings of a uniform k-regular
// vertex-labeled multigraph, leading order.
inline LogMagnitudeValue closed_form_E(const ColoringRequest& r) {
  detail::check_coloring(r);
  if (r.k < 3) throw InvalidArgument("closed forms need k >= 3");
  const EstimateRequest e = r.estimate();
  if (!e.integral() || r.c < r.k || e.ell() < 1) return LogMagnitudeValue::zero();
  const long double k = r.k, c = r.c, n = r.n;
  const long double tail = -(k * k - 4 * k + 3) / 4;
  if (r.c == r.k) {
    if (r.n % 2 != 0) return LogMagnitudeValue::zero();
    return LogMagnitudeValue::from_log((k - 1) / 2 * std::log(2.0L) + n * (std::lgamma(k + 1) - k / 2 * std::log(k)) + tail);
  }
  const long double gt = (k - 1) / (c - 1);
  return LogMagnitudeValue::from_log((1 - c) / 2 * std::log(gt + 1) +
                                     n * (std::lgamma(k + 1) + detail::log_binomial(r.c, r.k)) - n * k / 2 * std::log(c) +
                                     tail);
}

// n! P / (asymptotic multigraph count).
inline LogMagnitudeValue empirical_E(const ColoringRequest& r) {
  const Rational p = exact_P(r);
  if (p == 0) return LogMagnitudeValue::zero();
  return LogMagnitudeValue::from_rational(p * Rational(factorial(static_cast<unsigned long>(r.n)))) /
         bender_canfield_count(r.n, r.k);
}

}  // namespace wickenum
