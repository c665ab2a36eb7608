#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "wickenum/errors.hpp"
#include "wickenum/multipoly.hpp"
#include "wickenum/rational.hpp"

namespace wickenum {

// All compositions of `total` into `parts` non-negative parts, in graded-lex order.
inline std::vector<MultiIndex> compositions(int total, int parts) {
  if (parts < 1 || total < 0) throw InvalidArgument("compositions need parts >= 1 and total >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(parts), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == parts - 1) {
      cur[static_cast<std::size_t>(i)] = left;
      out.emplace_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

// Vertex weights Lambda_w on compositions w of the degree k into c colors.
// Zero weights are not stored.
class WeightSpec {
 public:
  using Map = std::map<MultiIndex, Rational, GradedLex>;

  WeightSpec(int colors, int degree) : colors_(colors), degree_(degree) {
    if (colors < 1) throw InvalidArgument("color count must be >= 1");
    if (degree < 1) throw InvalidArgument("degree must be >= 1");
  }

  int colors() const { return colors_; }
  int degree() const { return degree_; }
  const Map& weights() const { return weights_; }
  bool empty() const { return weights_.empty(); }

  void set(const MultiIndex& w, const Rational& value) {
    check_key(w);
    Rational canon = value;
    canon.canonicalize();
    if (canon == 0)
      weights_.erase(w);
    else
      weights_[w] = canon;
  }

  Rational weight(const MultiIndex& w) const {
    auto it = weights_.find(w);
    return it == weights_.end() ? Rational(0) : it->second;
  }

  void check_key(const MultiIndex& w) const {
    if (static_cast<int>(w.size()) != colors_)
      throw InvalidArgument("weight key " + w.str() + " does not have " + std::to_string(colors_) + " entries");
    if (w.total() != degree_)
      throw InvalidArgument("weight key " + w.str() + " does not sum to k = " + std::to_string(degree_));
  }

  friend bool operator==(const WeightSpec&, const WeightSpec&) = default;

 private:
  int colors_;
  int degree_;
  Map weights_;
};

// V(x) = sum_w Lambda_w x^w / w!
inline RationalPolynomial potential(const WeightSpec& spec) {
  RationalPolynomial v(static_cast<std::size_t>(spec.colors()));
  for (const auto& [w, lambda] : spec.weights()) v.add_term(w, lambda / Rational(w.factorial()));
  return v;
}

// g(x) = -sum_i x_i^2 / 2 + V(x)
inline RationalPolynomial build_g(const WeightSpec& spec) {
  const auto c = static_cast<std::size_t>(spec.colors());
  RationalPolynomial g = potential(spec);
  for (std::size_t i = 0; i < c; ++i) g.add_term(MultiIndex::unit(c, i, 2), Rational(-1, 2));
  return g;
}

// g = -|x|^2/2 + V for an already assembled V.
inline RationalPolynomial g_from_potential(const RationalPolynomial& v) {
  RationalPolynomial g = v;
  for (std::size_t i = 0; i < v.nvars(); ++i) g.add_term(MultiIndex::unit(v.nvars(), i, 2), Rational(-1, 2));
  return g;
}

// e_k(x_1, ..., x_c)
inline RationalPolynomial build_elementary_symmetric(int c, int k) {
  if (k < 1 || c < 1) throw InvalidArgument("elementary symmetric polynomial needs c, k >= 1");
  if (k > c) throw InvalidArgument("e_k over c variables needs k <= c");
  RationalPolynomial e(static_cast<std::size_t>(c));
  std::vector<int> pick(static_cast<std::size_t>(c), 0);
  std::fill(pick.end() - k, pick.end(), 1);
  do {
    e.add_term(MultiIndex(pick), 1);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return e;
}

// Lambda_w = 1 on 0/1 compositions; then x^w / w! = x^w and V = e_k.
inline WeightSpec elementary_symmetric_weights(int c, int k) {
  WeightSpec spec(c, k);
  for (const auto& w : compositions(k, c)) {
    bool squarefree = std::all_of(w.exps.begin(), w.exps.end(), [](int v) { return v <= 1; });
    if (squarefree) spec.set(w, 1);
  }
  return spec;
}

// Re-indexes colors: color i of `spec` becomes color perm[i].
inline WeightSpec permute_colors(const WeightSpec& spec, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != spec.colors()) throw InvalidArgument("permutation has wrong length");
  WeightSpec out(spec.colors(), spec.degree());
  for (const auto& [w, lambda] : spec.weights()) {
    std::vector<int> e(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) e.at(static_cast<std::size_t>(perm[i])) = w[i];
    out.set(MultiIndex(e), lambda);
  }
  return out;
}

inline WeightSpec scaled(const WeightSpec& spec, const Rational& t) {
  WeightSpec out(spec.colors(), spec.degree());
  for (const auto& [w, lambda] : spec.weights()) out.set(w, lambda * t);
  return out;
}

}  // namespace wickenum
