#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "wickenum/exact_enum.hpp"

using namespace wickenum;

namespace {

WeightSpec cubic_single_color() {
  WeightSpec s(1, 3);
  s.set({3}, 1);
  return s;
}

WeightSpec random_full_spec(std::mt19937_64& rng, int c, int k) {
  std::uniform_int_distribution<int> num(-6, 9), den(1, 5);
  WeightSpec s(c, k);
  for (const auto& w : compositions(k, c)) s.set(w, make_rational(num(rng), den(rng)));
  return s;
}

std::vector<std::pair<int, int>> small_shapes() { return {{1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 3}}; }

}  // namespace

TEST(DoubleFactorial, Values) {
  EXPECT_EQ(double_factorial(5), 15);
  EXPECT_EQ(double_factorial(-1), 1);
  EXPECT_EQ(double_factorial(0), 1);
  EXPECT_EQ(double_factorial(7), 105);
  EXPECT_EQ(double_factorial(8), 384);
  EXPECT_THROW(double_factorial(-3), InvalidArgument);
}

TEST(ExactSeries, KnownValues) {
  // theta graph 1/12 plus dumbbell 1/8
  EXPECT_EQ(exact_A_series(2, cubic_single_color()), Rational(5, 24));
  WeightSpec tri(3, 3);
  tri.set({1, 1, 1}, 1);
  EXPECT_EQ(exact_A_series(2, tri), Rational(1, 2));
  EXPECT_EQ(exact_A_series(1, tri), 0);
  EXPECT_EQ(exact_A_series(1, cubic_single_color()), 0);
  EXPECT_EQ(exact_A_series(0, tri), 1);

  // quartic, one color: a vertex with two loops has |Aut| = 8; on two vertices
  // the classes have |Aut| = 48, 16 and 128.
  WeightSpec quartic(1, 4);
  quartic.set({4}, 1);
  EXPECT_EQ(exact_A_series(1, quartic), Rational(1, 8));
  EXPECT_EQ(exact_A_series(2, quartic), Rational(1, 48) + Rational(1, 16) + Rational(1, 128));
}

TEST(ExactPartitionSum, KnownValues) {
  EXPECT_EQ(exact_A_partition_sum(2, cubic_single_color()), Rational(5, 24));
  WeightSpec tri(3, 3);
  tri.set({1, 1, 1}, 1);
  EXPECT_EQ(exact_A_partition_sum(2, tri), Rational(1, 2));
  EXPECT_EQ(exact_A_partition_sum(0, tri), 1);
  EXPECT_EQ(exact_A_partition_sum(3, WeightSpec(2, 4)), 0);
}

TEST(BruteForce, KnownValues) {
  EXPECT_EQ(brute_force_A(2, cubic_single_color()), Rational(5, 24));
  EXPECT_EQ(brute_force_A(0, cubic_single_color()), 1);

  // Monochromatic vertices: each color contributes the one-color cubic value
  // 5/24; a mixed pair cannot close its odd half-edge sets.
  WeightSpec mono(2, 3);
  mono.set({3, 0}, 1);
  mono.set({0, 3}, 1);
  EXPECT_EQ(brute_force_A(2, mono), Rational(5, 12));
  EXPECT_EQ(exact_A_series(2, mono), Rational(5, 12));
}

TEST(BruteForce, CapAndExhaustiveMatchings) {
  EXPECT_THROW(brute_force_A(3, cubic_single_color()), CapExceeded);
  BruteForceOptions wide;
  wide.half_edge_cap = 12;
  EXPECT_EQ(brute_force_A(4, cubic_single_color(), wide), exact_A_series(4, cubic_single_color()));

  BruteForceOptions exhaustive;
  exhaustive.exhaustive_matchings = true;
  std::mt19937_64 rng(17);
  for (auto [c, k] : small_shapes()) {
    WeightSpec spec = random_full_spec(rng, c, k);
    for (int n = 0; n * k <= 6; ++n) EXPECT_EQ(brute_force_A(n, spec, exhaustive), exact_A_series(n, spec));
  }
  WeightSpec q(1, 4);
  q.set({4}, 1);
  EXPECT_THROW(brute_force_A(2, q, exhaustive), CapExceeded);
}

TEST(ExactEnum, TripleAgreementOnRandomWeights) {
  std::mt19937_64 rng(2024);
  for (auto [c, k] : small_shapes()) {
    for (int trial = 0; trial < 3; ++trial) {
      WeightSpec spec = random_full_spec(rng, c, k);
      for (int n = 0; n * k <= 8; ++n) {
        Rational a = exact_A_series(n, spec);
        EXPECT_EQ(a, exact_A_partition_sum(n, spec)) << "c=" << c << " k=" << k << " n=" << n;
        EXPECT_EQ(a, brute_force_A(n, spec)) << "c=" << c << " k=" << k << " n=" << n;
      }
    }
  }
}

TEST(ExactEnum, ParityVanishing) {
  std::mt19937_64 rng(99);
  for (auto [c, k] : small_shapes()) {
    WeightSpec spec = random_full_spec(rng, c, k);
    for (int n = 1; n <= 7; n += 2)
      if ((n * k) % 2) EXPECT_EQ(exact_A_series(n, spec), 0);
  }
}

TEST(ExactEnum, ColorPermutationEquivariance) {
  std::mt19937_64 rng(5);
  WeightSpec spec = random_full_spec(rng, 3, 4);
  std::vector<int> perm{0, 1, 2};
  do {
    WeightSpec p = permute_colors(spec, perm);
    for (int n = 0; n <= 3; ++n) EXPECT_EQ(exact_A_series(n, p), exact_A_series(n, spec));
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(ExactEnum, PositiveWeightsWithEvenCompositionGivePositiveCounts) {
  WeightSpec spec(2, 4);
  spec.set({2, 2}, Rational(1, 3));
  spec.set({3, 1}, 2);
  for (int n = 0; n <= 6; ++n) EXPECT_GT(exact_A_series(n, spec), 0) << n;
}

TEST(ExactEnum, ScalingWeightsScalesByPowerOfN) {
  std::mt19937_64 rng(31);
  WeightSpec spec = random_full_spec(rng, 2, 3);
  const Rational t(-5, 3);
  WeightSpec s = scaled(spec, t);
  for (int n = 0; n <= 6; ++n) EXPECT_EQ(exact_A_series(n, s), pow(t, static_cast<unsigned long>(n)) * exact_A_series(n, spec));
}

TEST(ExactEnum, CountTableRecordsMethod) {
  std::vector<int> ns{0, 1, 2};
  CountTable t = count_table(cubic_single_color(), ns, CountMethod::partition_sum);
  ASSERT_EQ(t.entries.size(), 3u);
  EXPECT_EQ(t.entries.at(0).value, 1);
  EXPECT_EQ(t.entries.at(1).value, 0);
  EXPECT_EQ(t.entries.at(2).value, Rational(5, 24));
  EXPECT_EQ(t.entries.at(2).method, CountMethod::partition_sum);
}

TEST(OneEdge, MatchesGraphSum) {
  FormalWeights fw;
  fw.set({1, 0, 0}, 2);
  fw.set({2, 0, 0}, 4);
  OneEdgeReport r = one_edge_check(fw);
  EXPECT_TRUE(r.agree);
  EXPECT_EQ(r.series[0], 4);

  FormalWeights zero;
  OneEdgeReport rz = one_edge_check(zero);
  EXPECT_TRUE(rz.agree);
  EXPECT_EQ(rz.series_total(), 0);

  FormalWeights single;
  single.set({1, 0, 0}, 1);
  EXPECT_EQ(one_edge_check(single).series[0], Rational(1, 2));

  // every |w| in {1, 2} populated with random rationals, including mixed colors
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 4);
  FormalWeights full;
  for (int d = 1; d <= 2; ++d)
    for (const auto& w : compositions(d, 3)) full.set(w, make_rational(num(rng), den(rng)));
  EXPECT_TRUE(one_edge_check(full).agree);
  EXPECT_THROW(full.set({1, 1, 1}, 1), InvalidArgument);
}
