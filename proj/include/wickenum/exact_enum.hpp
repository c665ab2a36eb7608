#pragma once

// Exact values of the automorphism-weighted count
//
//   A(n) = sum over k-regular c-edge-colored multigraphs G on n vertices
//          of prod_v Lambda_deg(v) / |Aut(G)|
//
// by three routes that share no code beyond rational arithmetic:
//   * coefficient extraction from V^n / n!,
//   * a sum over vertex multidegree multiplicities,
//   * explicit set partitions of labeled half-edges.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wickenum/errors.hpp"
#include "wickenum/multipoly.hpp"
#include "wickenum/rational.hpp"
#include "wickenum/weights.hpp"

namespace wickenum {

// t!! with (-1)!! = 0!! = 1.
inline Integer double_factorial(long t) {
  if (t < -1) throw InvalidArgument("double factorial is defined for t >= -1");
  if (t <= 0) return 1;
  Integer r;
  mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(t));
  return r;
}

// prod_i (2 s_i - 1)!!: perfect matchings of the half-edges, color by color.
inline Integer matching_count(const MultiIndex& s) {
  Integer r = 1;
  for (int si : s.exps) r *= double_factorial(2L * si - 1);
  return r;
}

// Coefficient route on a homogeneous V of degree k:
//   A(n) = sum_{|s| = m} prod_i (2 s_i - 1)!! [x^{2s}] V^n / n!,   m = nk/2.
inline Rational exact_A_series(int n, const RationalPolynomial& v) {
  if (n < 0) throw InvalidArgument("n must be non-negative");
  if (n == 0) return 1;
  if (v.is_zero()) return 0;
  auto k = v.homogeneous_degree();
  if (!k) throw InvalidArgument("exact_A_series needs a homogeneous V");
  if ((static_cast<long>(n) * *k) % 2 != 0) return 0;

  const RationalPolynomial vn = pow(v, static_cast<unsigned>(n));
  Rational sum = 0;
  for (const auto& [w, coeff] : vn.terms()) {
    if (!w.all_even()) continue;
    MultiIndex s = w;
    for (int& e : s.exps) e /= 2;
    sum += Rational(matching_count(s)) * coeff;
  }
  return sum / Rational(factorial(static_cast<unsigned long>(n)));
}

inline Rational exact_A_series(int n, const WeightSpec& spec) { return exact_A_series(n, potential(spec)); }

// Multiplicity route: sum over functions w -> t_w with sum t_w = n and
// sum t_w w = 2s of prod_i (2s_i - 1)!! prod_w Lambda_w^t_w / (t_w! (w!)^t_w).
inline Rational exact_A_partition_sum(int n, const WeightSpec& spec) {
  if (n < 0) throw InvalidArgument("n must be non-negative");
  if (n == 0) return 1;
  const auto c = static_cast<std::size_t>(spec.colors());

  struct Support {
    MultiIndex w;
    Rational lambda;
    Integer wfact;
  };
  std::vector<Support> support;
  for (const auto& [w, lambda] : spec.weights()) support.push_back({w, lambda, w.factorial()});

  Rational total = 0;
  std::vector<int> degree_sum(c, 0);
  // weight carries prod Lambda^t / (t! (w!)^t) for the multiplicities fixed so far
  auto rec = [&](auto&& self, std::size_t idx, int left, const Rational& weight) -> void {
    if (left == 0) {
      MultiIndex s(degree_sum);
      if (!s.all_even()) return;
      for (int& e : s.exps) e /= 2;
      total += weight * Rational(matching_count(s));
      return;
    }
    if (idx == support.size()) return;
    const Support& sup = support[idx];
    Rational w_t = weight;
    for (int t = 0; t <= left; ++t) {
      if (t > 0) {
        w_t *= sup.lambda / Rational(sup.wfact * t);
        for (std::size_t i = 0; i < c; ++i) degree_sum[i] += sup.w[i];
      }
      self(self, idx + 1, left - t, w_t);
    }
    for (std::size_t i = 0; i < c; ++i) degree_sum[i] -= left * sup.w[i];
  };
  rec(rec, 0, n, Rational(1));
  return total;
}

struct BruteForceOptions {
  int half_edge_cap = 8;
  // Enumerate the per-color perfect matchings instead of using (2s-1)!!.
  // Limited to n*k <= 6.
  bool exhaustive_matchings = false;
};

namespace detail {

// Number of perfect matchings of `labels` found by explicit enumeration.
inline std::uint64_t enumerate_matchings(std::uint32_t labels) {
  if (labels == 0) return 1;
  const int first = __builtin_ctz(labels);
  const std::uint32_t rest = labels & ~(1u << first);
  std::uint64_t count = 0;
  for (std::uint32_t r = rest; r; r &= r - 1) {
    const int partner = __builtin_ctz(r);
    count += enumerate_matchings(rest & ~(1u << partner));
  }
  return count;
}

}  // namespace detail

// Half-edge oracle.  For each color split s with |s| = m, labels
// H_1 ⊔ ... ⊔ H_c (|H_i| = 2 s_i) are partitioned into n vertices of size k
// (restricted growth strings), each partition weighted by prod_v Lambda_deg(v),
// then paired into edges color by color and divided by prod_i (2 s_i)!.
inline Rational brute_force_A(int n, const WeightSpec& spec, const BruteForceOptions& opts = {}) {
  if (n < 0) throw InvalidArgument("n must be non-negative");
  const int k = spec.degree();
  const long half_edges = static_cast<long>(n) * k;
  if (half_edges > opts.half_edge_cap)
    throw CapExceeded("brute force needs n*k <= " + std::to_string(opts.half_edge_cap) + ", got " +
                      std::to_string(half_edges));
  if (opts.exhaustive_matchings && half_edges > 6)
    throw CapExceeded("exhaustive matching mode needs n*k <= 6");
  if (n == 0) return 1;
  if (half_edges % 2 != 0) return 0;
  const int m = static_cast<int>(half_edges / 2);
  const auto c = static_cast<std::size_t>(spec.colors());
  const auto nb = static_cast<std::size_t>(n);

  Rational total = 0;
  for (const MultiIndex& s : compositions(m, spec.colors())) {
    std::vector<int> color_of;
    for (std::size_t i = 0; i < c; ++i) color_of.insert(color_of.end(), 2 * static_cast<std::size_t>(s[i]), static_cast<int>(i));
    const std::size_t labels = color_of.size();

    std::vector<int> block_size(nb, 0);
    std::vector<std::vector<int>> block_deg(nb, std::vector<int>(c, 0));
    Rational partitions_weight = 0;

    auto rec = [&](auto&& self, std::size_t label, std::size_t used, const Rational& weight) -> void {
      if (label == labels) {
        partitions_weight += weight;
        return;
      }
      const auto color = static_cast<std::size_t>(color_of[label]);
      const std::size_t limit = std::min(used + 1, nb);
      for (std::size_t b = 0; b < limit; ++b) {
        if (block_size[b] == k) continue;
        ++block_size[b];
        ++block_deg[b][color];
        Rational next = weight;
        bool alive = true;
        if (block_size[b] == k) {
          const Rational lambda = spec.weight(MultiIndex(block_deg[b]));
          if (lambda == 0)
            alive = false;
          else
            next *= lambda;
        }
        if (alive) self(self, label + 1, std::max(used, b + 1), next);
        --block_deg[b][color];
        --block_size[b];
      }
    };
    rec(rec, 0, 0, Rational(1));
    if (partitions_weight == 0) continue;

    Integer matchings = 1;
    Integer label_group = 1;
    std::uint32_t offset = 0;
    for (std::size_t i = 0; i < c; ++i) {
      const int size = 2 * s[i];
      if (opts.exhaustive_matchings) {
        const std::uint32_t mask = size == 0 ? 0u : (((1u << size) - 1u) << offset);
        matchings *= static_cast<unsigned long>(detail::enumerate_matchings(mask));
      } else {
        matchings *= double_factorial(size - 1);
      }
      label_group *= factorial(static_cast<unsigned long>(size));
      offset += static_cast<std::uint32_t>(size);
    }
    total += partitions_weight * Rational(matchings) / Rational(label_group);
  }
  return total;
}

enum class CountMethod { series, partition_sum, brute_force };

inline const char* to_string(CountMethod m) {
  switch (m) {
    case CountMethod::series: return "series";
    case CountMethod::partition_sum: return "partition-sum";
    case CountMethod::brute_force: return "brute-force";
  }
  return "?";
}

inline Rational exact_A(int n, const WeightSpec& spec, CountMethod method) {
  switch (method) {
    case CountMethod::series: return exact_A_series(n, spec);
    case CountMethod::partition_sum: return exact_A_partition_sum(n, spec);
    case CountMethod::brute_force: return brute_force_A(n, spec);
  }
  throw InvalidArgument("unknown count method");
}

struct CountTable {
  struct Entry {
    Rational value;
    CountMethod method;
  };
  std::map<int, Entry> entries;
};

inline CountTable count_table(const WeightSpec& spec, std::span<const int> ns, CountMethod method) {
  CountTable table;
  for (int n : ns) table.entries[n] = {exact_A(n, spec, method), method};
  return table;
}

// ---------------------------------------------------------------------------
// One-edge sanity check of the generating function with unconstrained degrees.

// Formal weights lambda_w on all w with |w| in {1, 2}.
struct FormalWeights {
  int colors = 3;
  std::map<MultiIndex, Rational, GradedLex> lambda;

  void set(const MultiIndex& w, const Rational& value) {
    if (static_cast<int>(w.size()) != colors) throw InvalidArgument("formal weight key has wrong length");
    if (w.total() < 1 || w.total() > 2) throw InvalidArgument("formal weights live on |w| in {1, 2}");
    Rational canon = value;
    canon.canonicalize();
    lambda[w] = canon;
  }
  Rational get(const MultiIndex& w) const {
    auto it = lambda.find(w);
    return it == lambda.end() ? Rational(0) : it->second;
  }
};

struct OneEdgeReport {
  std::vector<Rational> series;  // [x_i^2] exp(sum lambda_w x^w / w!)
  std::vector<Rational> graphs;  // lambda_{e_i}^2 / 2 + lambda_{2 e_i} / 2
  bool agree = false;

  Rational series_total() const {
    Rational t = 0;
    for (const auto& q : series) t += q;
    return t;
  }
};

inline OneEdgeReport one_edge_check(const FormalWeights& weights) {
  const auto c = static_cast<std::size_t>(weights.colors);
  RationalPolynomial p(c);
  for (const auto& [w, l] : weights.lambda) p.add_term(w, l / Rational(w.factorial()));
  // exp(p) up to total degree 2; p has no constant term.
  RationalPolynomial e = RationalPolynomial::constant(c, 1) + p + (p * p).truncated(2) * Rational(1, 2);

  OneEdgeReport report;
  report.agree = true;
  for (std::size_t i = 0; i < c; ++i) {
    Rational s = e.coefficient(MultiIndex::unit(c, i, 2));
    Rational le = weights.get(MultiIndex::unit(c, i, 1));
    Rational l2 = weights.get(MultiIndex::unit(c, i, 2));
    Rational g = le * le / 2 + l2 / 2;
    report.agree = report.agree && (s == g);
    report.series.push_back(s);
    report.graphs.push_back(g);
  }
  return report;
}

}  // namespace wickenum
