#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "wickenum/multipoly.hpp"
#include "wickenum/weights.hpp"

using namespace wickenum;
using cd = std::complex<double>;

namespace {

RationalPolynomial x(std::size_t c, std::size_t i) { return RationalPolynomial::variable(c, i); }

RationalPolynomial random_homogeneous(std::mt19937_64& rng, std::size_t c, int k) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  RationalPolynomial p(c);
  for (const auto& w : compositions(k, static_cast<int>(c))) p.add_term(w, make_rational(num(rng), den(rng)));
  return p;
}

}  // namespace

TEST(MultiPoly, AddDropsCancelledTerms) {
  RationalPolynomial sum = x(1, 0) + (-x(1, 0));
  EXPECT_TRUE(sum.is_zero());
  EXPECT_EQ(sum.degree(), -1);

  RationalPolynomial p = RationalPolynomial::monomial({2, 0}, Rational(1, 2)) + x(2, 0) * x(2, 1);
  EXPECT_EQ(p.size(), 2u);
  EXPECT_EQ(p.coefficient({2, 0}), Rational(1, 2));
  EXPECT_EQ(p.coefficient({1, 1}), 1);

  RationalPolynomial e2 = build_elementary_symmetric(2, 2);
  EXPECT_EQ(e2 + e2, RationalPolynomial::monomial({1, 1}, 2));
}

TEST(MultiPoly, DimensionMismatchThrows) {
  EXPECT_THROW(x(1, 0) + x(2, 0), DimensionMismatch);
  EXPECT_THROW(x(1, 0) * x(2, 0), DimensionMismatch);
  EXPECT_THROW(x(2, 0).coefficient({1}), DimensionMismatch);
}

TEST(MultiPoly, Multiplication) {
  RationalPolynomial a = x(2, 0) + x(2, 1), b = x(2, 0) - x(2, 1);
  RationalPolynomial expect = RationalPolynomial::monomial({2, 0}, 1) + RationalPolynomial::monomial({0, 2}, -1);
  EXPECT_EQ(a * b, expect);

  RationalPolynomial one = RationalPolynomial::constant(2, 1);
  EXPECT_EQ(one * a, a);

  RationalPolynomial m = RationalPolynomial::monomial({1, 1, 1}, 1);
  EXPECT_EQ(m * m, RationalPolynomial::monomial({2, 2, 2}, 1));
}

TEST(MultiPoly, Power) {
  RationalPolynomial m = RationalPolynomial::monomial({1, 1, 1}, 1);
  EXPECT_EQ(pow(m, 0), RationalPolynomial::constant(3, 1));
  EXPECT_EQ(pow(m, 2), RationalPolynomial::monomial({2, 2, 2}, 1));
  RationalPolynomial cubic = RationalPolynomial::monomial({3}, Rational(1, 6));
  EXPECT_EQ(pow(cubic, 2), RationalPolynomial::monomial({6}, Rational(1, 36)));

  // repeated squaring agrees with repeated multiplication
  RationalPolynomial p = x(2, 0) + RationalPolynomial::monomial({0, 1}, Rational(-2, 3));
  RationalPolynomial slow = RationalPolynomial::constant(2, 1);
  for (int i = 0; i < 7; ++i) slow = slow * p;
  EXPECT_EQ(pow(p, 7), slow);
}

TEST(MultiPoly, Coefficient) {
  RationalPolynomial p = RationalPolynomial::monomial({6}, Rational(1, 36));
  EXPECT_EQ(p.coefficient({6}), Rational(1, 36));
  EXPECT_EQ(p.coefficient({5}), 0);
  // (x1 x2 x3)^2 / 2 expanded by hand
  RationalPolynomial q = pow(RationalPolynomial::monomial({1, 1, 1}, 1), 2) * Rational(1, 2);
  EXPECT_EQ(q.coefficient({2, 2, 2}), Rational(1, 2));
}

TEST(MultiPoly, GradientAndHessian) {
  auto g = gradient(RationalPolynomial::monomial({2}, Rational(1, 2)));
  ASSERT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], x(1, 0));

  auto g3 = gradient(RationalPolynomial::monomial({1, 1, 1}, 1));
  EXPECT_EQ(g3[0], RationalPolynomial::monomial({0, 1, 1}, 1));
  EXPECT_EQ(g3[1], RationalPolynomial::monomial({1, 0, 1}, 1));
  EXPECT_EQ(g3[2], RationalPolynomial::monomial({1, 1, 0}, 1));

  auto h1 = hessian(RationalPolynomial::monomial({2}, Rational(1, 2)));
  EXPECT_EQ(h1[0][0], RationalPolynomial::constant(1, 1));

  auto h2 = hessian(RationalPolynomial::monomial({1, 1}, 1));
  EXPECT_TRUE(h2[0][0].is_zero());
  EXPECT_EQ(h2[0][1], RationalPolynomial::constant(2, 1));
  EXPECT_EQ(h2[1][0], RationalPolynomial::constant(2, 1));
  EXPECT_TRUE(h2[1][1].is_zero());
}

TEST(MultiPoly, HessianOfGHasMinusOneDiagonalPlusHessV) {
  WeightSpec spec(3, 3);
  spec.set({1, 1, 1}, 1);
  spec.set({2, 1, 0}, Rational(3, 5));
  spec.set({3, 0, 0}, -2);
  auto hg = hessian(build_g(spec));
  auto hv = hessian(potential(spec));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      RationalPolynomial expect = hv[i][j];
      if (i == j) expect.add_term(MultiIndex::zero(3), -1);
      EXPECT_EQ(hg[i][j], expect);
    }
}

TEST(MultiPoly, EulerRelationExactOnRandomHomogeneous) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t c = 1 + trial % 3;
    const int k = 3 + trial % 2;
    RationalPolynomial v = random_homogeneous(rng, c, k);
    auto grad = gradient(v);
    // symbolic identity sum_i x_i dV/dx_i = k V
    RationalPolynomial euler(c);
    for (std::size_t i = 0; i < c; ++i) euler += x(c, i) * grad[i];
    EXPECT_EQ(euler, v * Rational(k));
    // and at 100 random rational points, exactly
    for (int pt = 0; pt < 100; ++pt) {
      std::vector<Rational> z;
      for (std::size_t i = 0; i < c; ++i) z.push_back(make_rational(num(rng), den(rng)));
      auto exact_eval = [&](const RationalPolynomial& p) {
        Rational s = 0;
        for (const auto& [w, q] : p.terms()) {
          Rational t = q;
          for (std::size_t i = 0; i < c; ++i) t *= pow(z[i], static_cast<unsigned long>(w[i]));
          s += t;
        }
        return s;
      };
      Rational lhs = 0;
      for (std::size_t i = 0; i < c; ++i) lhs += z[i] * exact_eval(grad[i]);
      EXPECT_EQ(lhs - Rational(k) * exact_eval(v), 0);
    }
  }
}

TEST(MultiPoly, HessianIsSymmetric) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    RationalPolynomial v = random_homogeneous(rng, 3, 4) + random_homogeneous(rng, 3, 2);
    auto h = hessian(v);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(h[i][j], h[j][i]);
  }
}

TEST(MultiPoly, PowerPreservesHomogeneity) {
  std::mt19937_64 rng(3);
  for (int k = 2; k <= 4; ++k) {
    RationalPolynomial v = random_homogeneous(rng, 2, k);
    ASSERT_TRUE(v.is_homogeneous(k));
    for (unsigned n = 1; n <= 4; ++n) EXPECT_TRUE(pow(v, n).is_homogeneous(static_cast<int>(n) * k));
  }
  EXPECT_FALSE((x(2, 0) + RationalPolynomial::monomial({1, 1}, 1)).homogeneous_degree().has_value());
}

TEST(MultiPoly, Eval) {
  std::vector<double> ones{1.0, 1.0, 1.0};
  EXPECT_DOUBLE_EQ(eval(RationalPolynomial::monomial({1, 1, 1}, 1), ones), 1.0);

  const double r = 1.0 / std::sqrt(3.0);
  std::vector<double> diag{r, r, r};
  EXPECT_NEAR(eval(build_elementary_symmetric(3, 3), diag), std::pow(3.0, -1.5), 1e-15);

  // g = -x^2/2 + x^3/6: at the critical point 2 the value is -2/3,
  // at sqrt(3) it is -3/2 + sqrt(3)/2.
  WeightSpec spec(1, 3);
  spec.set({3}, 1);
  RationalPolynomial g = build_g(spec);
  EXPECT_NEAR(eval(g, std::vector<double>{2.0}), -2.0 / 3.0, 1e-15);
  EXPECT_NEAR(eval(g, std::vector<double>{std::sqrt(3.0)}), -1.5 + std::sqrt(3.0) / 2.0, 1e-15);

  // extended precision path
  std::vector<long double> two{2.0L};
  EXPECT_NEAR(static_cast<double>(eval(g, two) + 2.0L / 3.0L), 0.0, 1e-18);
}

TEST(MultiPoly, EvalIsCompatibleWithMultiplication) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    RationalPolynomial p = random_homogeneous(rng, 3, 3), q = random_homogeneous(rng, 3, 2);
    std::vector<cd> z{{nd(rng), nd(rng)}, {nd(rng), nd(rng)}, {nd(rng), nd(rng)}};
    cd prod = eval(p, z) * eval(q, z);
    EXPECT_LE(std::abs(eval(p * q, z) - prod), 1e-12 * (1 + std::abs(prod)));
  }
}

TEST(BuildG, FromWeights) {
  WeightSpec cubic(1, 3);
  cubic.set({3}, 1);
  RationalPolynomial expect = RationalPolynomial::monomial({2}, Rational(-1, 2)) +
                              RationalPolynomial::monomial({3}, Rational(1, 6));
  EXPECT_EQ(build_g(cubic), expect);

  WeightSpec tri(3, 3);
  tri.set({1, 1, 1}, 1);
  RationalPolynomial g3 = RationalPolynomial::monomial({1, 1, 1}, 1);
  for (std::size_t i = 0; i < 3; ++i) g3.add_term(MultiIndex::unit(3, i, 2), Rational(-1, 2));
  EXPECT_EQ(build_g(tri), g3);

  WeightSpec empty(2, 3);
  RationalPolynomial quad = RationalPolynomial::monomial({2, 0}, Rational(-1, 2)) +
                            RationalPolynomial::monomial({0, 2}, Rational(-1, 2));
  EXPECT_EQ(build_g(empty), quad);

  EXPECT_THROW(cubic.set({2}, 1), InvalidArgument);
  EXPECT_THROW(tri.set({1, 1}, 1), InvalidArgument);
}

TEST(ElementarySymmetric, Terms) {
  EXPECT_EQ(build_elementary_symmetric(3, 3), RationalPolynomial::monomial({1, 1, 1}, 1));
  RationalPolynomial e34 = build_elementary_symmetric(4, 3);
  EXPECT_EQ(e34.size(), 4u);
  for (const auto& [w, q] : e34.terms()) EXPECT_EQ(q, 1);
  EXPECT_EQ(build_elementary_symmetric(6, 3).size(), 20u);
  EXPECT_THROW(build_elementary_symmetric(3, 4), InvalidArgument);

  // Lambda_w = 1 on 0/1 compositions reproduces e_k
  for (int c = 3; c <= 5; ++c)
    for (int k = 3; k <= c; ++k) EXPECT_EQ(potential(elementary_symmetric_weights(c, k)), build_elementary_symmetric(c, k));
}

TEST(MultiPoly, GradedLexIteration) {
  RationalPolynomial p = RationalPolynomial::monomial({0, 2}, 1) + RationalPolynomial::monomial({1, 0}, 1) +
                         RationalPolynomial::monomial({2, 0}, 1) + RationalPolynomial::monomial({1, 1}, 1);
  std::vector<MultiIndex> order;
  for (const auto& [w, q] : p.terms()) order.push_back(w);
  std::vector<MultiIndex> expect{{1, 0}, {0, 2}, {1, 1}, {2, 0}};
  EXPECT_EQ(order, expect);
}
