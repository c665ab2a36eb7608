#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// Terms live in a map keyed by exponent vectors in graded lexicographic
// order, so iteration (and anything printed from it) is reproducible.
// Coefficients are only rounded when a polynomial is evaluated.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "wickenum/errors.hpp"
#include "wickenum/rational.hpp"

namespace wickenum {

// Exponent vector w = (w_1, ..., w_c).
struct MultiIndex {
  std::vector<int> exps;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : exps(std::move(e)) {
    for (int v : exps)
      if (v < 0) throw InvalidArgument("negative exponent in multi-index");
  }
  MultiIndex(std::initializer_list<int> e) : MultiIndex(std::vector<int>(e)) {}

  static MultiIndex zero(std::size_t c) { return MultiIndex(std::vector<int>(c, 0)); }
  static MultiIndex unit(std::size_t c, std::size_t i, int power = 1) {
    MultiIndex w = zero(c);
    w.exps.at(i) = power;
    return w;
  }

  std::size_t size() const { return exps.size(); }
  int operator[](std::size_t i) const { return exps[i]; }
  int total() const { return std::accumulate(exps.begin(), exps.end(), 0); }

  // w! = w_1! ... w_c!
  Integer factorial() const {
    Integer r = 1;
    for (int v : exps) r *= wickenum::factorial(static_cast<unsigned long>(v));
    return r;
  }

  bool all_even() const {
    return std::all_of(exps.begin(), exps.end(), [](int v) { return v % 2 == 0; });
  }

  MultiIndex operator+(const MultiIndex& o) const {
    if (o.size() != size()) throw DimensionMismatch("multi-index length mismatch");
    MultiIndex r = *this;
    for (std::size_t i = 0; i < size(); ++i) r.exps[i] += o.exps[i];
    return r;
  }

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(exps[i]);
    }
    return s + ")";
  }
};

// Graded lexicographic: lower total degree first, ties lexicographic.
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const int ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return a.exps < b.exps;
  }
};

class RationalPolynomial {
 public:
  using TermMap = std::map<MultiIndex, Rational, GradedLex>;

  explicit RationalPolynomial(std::size_t nvars = 1) : nvars_(nvars) {
    if (nvars == 0) throw InvalidArgument("polynomial needs at least one variable");
  }

  static RationalPolynomial constant(std::size_t nvars, const Rational& q) {
    RationalPolynomial p(nvars);
    p.add_term(MultiIndex::zero(nvars), q);
    return p;
  }

  static RationalPolynomial variable(std::size_t nvars, std::size_t i) {
    RationalPolynomial p(nvars);
    p.add_term(MultiIndex::unit(nvars, i), 1);
    return p;
  }

  static RationalPolynomial monomial(const MultiIndex& w, const Rational& q) {
    RationalPolynomial p(w.size());
    p.add_term(w, q);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const MultiIndex& w) const {
    check_index(w);
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  // Accumulates q into the coefficient of x^w; zero results are erased.
  void add_term(const MultiIndex& w, const Rational& q) {
    check_index(w);
    Rational canon = q;
    canon.canonicalize();
    add_canonical(w, canon);
  }

  // -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.total(); }

  // Common total degree of all terms; empty for the zero polynomial or mixed degrees.
  std::optional<int> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    const int lo = terms_.begin()->first.total();
    if (lo != terms_.rbegin()->first.total()) return std::nullopt;
    return lo;
  }

  bool is_homogeneous(int k) const {
    auto d = homogeneous_degree();
    return d && *d == k;
  }

  RationalPolynomial derivative(std::size_t i) const {
    if (i >= nvars_) throw DimensionMismatch("derivative index out of range");
    RationalPolynomial r(nvars_);
    for (const auto& [w, q] : terms_) {
      if (w[i] == 0) continue;
      MultiIndex d = w;
      d.exps[i] -= 1;
      r.add_term(d, q * w[i]);
    }
    return r;
  }

  // Drops all terms of total degree above max_degree.
  RationalPolynomial truncated(int max_degree) const {
    RationalPolynomial r(nvars_);
    for (const auto& [w, q] : terms_)
      if (w.total() <= max_degree) r.terms_.emplace_hint(r.terms_.end(), w, q);
    return r;
  }

  RationalPolynomial& operator+=(const RationalPolynomial& o) {
    check_same(o);
    for (const auto& [w, q] : o.terms_) add_term(w, q);
    return *this;
  }

  RationalPolynomial& operator-=(const RationalPolynomial& o) {
    check_same(o);
    for (const auto& [w, q] : o.terms_) add_term(w, -q);
    return *this;
  }

  RationalPolynomial& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, q] : terms_) q *= s;
    return *this;
  }

  friend RationalPolynomial operator+(RationalPolynomial p, const RationalPolynomial& q) { return p += q; }
  friend RationalPolynomial operator-(RationalPolynomial p, const RationalPolynomial& q) { return p -= q; }
  friend RationalPolynomial operator-(RationalPolynomial p) { return p *= Rational(-1); }
  friend RationalPolynomial operator*(RationalPolynomial p, const Rational& s) { return p *= s; }
  friend RationalPolynomial operator*(const Rational& s, RationalPolynomial p) { return p *= s; }

  friend RationalPolynomial operator*(const RationalPolynomial& p, const RationalPolynomial& q) {
    p.check_same(q);
    RationalPolynomial r(p.nvars_);
    Rational prod;
    for (const auto& [wp, cp] : p.terms_) {
      for (const auto& [wq, cq] : q.terms_) {
        mpq_mul(prod.get_mpq_t(), cp.get_mpq_t(), cq.get_mpq_t());
        r.add_canonical(wp + wq, prod);
      }
    }
    return r;
  }

  friend bool operator==(const RationalPolynomial& a, const RationalPolynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [w, q] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + to_string(q) + ")";
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (w[i] == 0) continue;
        s += "*x" + std::to_string(i + 1);
        if (w[i] > 1) s += "^" + std::to_string(w[i]);
      }
    }
    return s;
  }

 private:
  void add_canonical(const MultiIndex& w, const Rational& q) {
    if (q == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, q);
    if (!inserted) {
      it->second += q;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void check_index(const MultiIndex& w) const {
    if (w.size() != nvars_) throw DimensionMismatch("multi-index length does not match variable count");
  }
  void check_same(const RationalPolynomial& o) const {
    if (o.nvars_ != nvars_) throw DimensionMismatch("polynomials have different variable counts");
  }

  std::size_t nvars_;
  TermMap terms_;
};

// p^n by repeated squaring; p^0 = 1.
inline RationalPolynomial pow(const RationalPolynomial& p, unsigned n) {
  RationalPolynomial result = RationalPolynomial::constant(p.nvars(), 1);
  RationalPolynomial base = p;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

inline std::vector<RationalPolynomial> gradient(const RationalPolynomial& p) {
  std::vector<RationalPolynomial> g;
  g.reserve(p.nvars());
  for (std::size_t i = 0; i < p.nvars(); ++i) g.push_back(p.derivative(i));
  return g;
}

using PolynomialMatrix = std::vector<std::vector<RationalPolynomial>>;

inline PolynomialMatrix hessian(const RationalPolynomial& p) {
  const std::size_t c = p.nvars();
  PolynomialMatrix h(c, std::vector<RationalPolynomial>(c, RationalPolynomial(c)));
  for (std::size_t i = 0; i < c; ++i) {
    RationalPolynomial di = p.derivative(i);
    for (std::size_t j = i; j < c; ++j) {
      h[i][j] = di.derivative(j);
      if (j != i) h[j][i] = h[i][j];
    }
  }
  return h;
}

// ---------------------------------------------------------------------------
// Floating evaluation

template <class T>
struct real_of {
  using type = T;
};
template <class T>
struct real_of<std::complex<T>> {
  using type = T;
};
template <class T>
using real_of_t = typename real_of<T>::type;

// Evaluation precision for the floating side of the pipeline.
enum class Precision { double_precision, extended };

inline Precision precision_from_bits(int bits) {
  if (bits == 53) return Precision::double_precision;
  if (bits == 64) return Precision::extended;
  throw InvalidArgument("precision_bits must be 53 (double) or 64 (extended)");
}

// A polynomial whose coefficients have been rounded to Real, laid out for
// repeated evaluation.  Build one per evaluation batch.
template <class Real>
class FloatPolynomial {
 public:
  FloatPolynomial() = default;

  explicit FloatPolynomial(const RationalPolynomial& p) : nvars_(p.nvars()) {
    exps_.reserve(p.size() * nvars_);
    coefs_.reserve(p.size());
    for (const auto& [w, q] : p.terms()) {
      exps_.insert(exps_.end(), w.exps.begin(), w.exps.end());
      coefs_.push_back(to_floating<Real>(q));
      max_exp_ = std::max(max_exp_, *std::max_element(w.exps.begin(), w.exps.end()));
    }
  }

  std::size_t nvars() const { return nvars_; }

  template <class T>
  T operator()(std::span<const T> z) const {
    if (z.size() != nvars_) throw DimensionMismatch("evaluation point has wrong length");
    if (coefs_.empty()) return T(0);
    const std::size_t stride = static_cast<std::size_t>(max_exp_) + 1;
    std::vector<T> powers(nvars_ * stride);
    for (std::size_t i = 0; i < nvars_; ++i) {
      T* row = &powers[i * stride];
      row[0] = T(1);
      for (std::size_t e = 1; e < stride; ++e) row[e] = row[e - 1] * z[i];
    }
    T sum(0);
    for (std::size_t t = 0; t < coefs_.size(); ++t) {
      T term(coefs_[t]);
      const int* w = &exps_[t * nvars_];
      for (std::size_t i = 0; i < nvars_; ++i)
        if (w[i]) term *= powers[i * stride + static_cast<std::size_t>(w[i])];
      sum += term;
    }
    return sum;
  }

  template <class T>
  T operator()(const std::vector<T>& z) const {
    return (*this)(std::span<const T>(z));
  }

 private:
  std::size_t nvars_ = 0;
  int max_exp_ = 0;
  std::vector<int> exps_;
  std::vector<Real> coefs_;
};

// Direct sum of monomial values; coefficients are rounded to the real type of T here.
template <class T>
T eval(const RationalPolynomial& p, std::span<const T> z) {
  return FloatPolynomial<real_of_t<T>>(p)(z);
}

template <class T>
T eval(const RationalPolynomial& p, const std::vector<T>& z) {
  return eval(p, std::span<const T>(z));
}

// Value, gradient and Hessian of one polynomial, rounded once.
template <class Real>
struct FloatJet {
  FloatPolynomial<Real> value;
  std::vector<FloatPolynomial<Real>> grad;
  std::vector<std::vector<FloatPolynomial<Real>>> hess;

  FloatJet() = default;
  explicit FloatJet(const RationalPolynomial& p) : value(p) {
    for (const auto& g : gradient(p)) grad.emplace_back(g);
    for (const auto& row : hessian(p)) {
      hess.emplace_back();
      for (const auto& h : row) hess.back().emplace_back(h);
    }
  }

  std::size_t nvars() const { return grad.size(); }
};

}  // namespace wickenum
