// Cubic multigraphs: the exact automorphism-weighted count against the
// saddle-point estimate, and proper 3-edge-colorings of the same graphs.

#include <array>
#include <cstdio>

#include "wickenum/wickenum.hpp"

using namespace wickenum;

int main() {
  WeightSpec cubic(1, 3);
  cubic.set(MultiIndex({3}), Rational(1));

  const std::array<int, 6> ns{2, 6, 10, 20, 40, 80};
  std::printf("cubic multigraphs, V = x^3/6\n%4s %32s %14s %12s\n", "n", "A(n)", "estimate", "ratio-1");
  for (const auto& row : convergence_table(cubic, ns)) {
    const std::string exact = row.exact.get_str();
    std::printf("%4d %32s %14.6Le %12.3Le\n", row.n, exact.size() > 32 ? "(large)" : exact.c_str(),
                row.estimate.to_real(), row.ratio - 1);
  }

  std::printf("\nproper 3-edge-colorings, V = x1 x2 x3\n%4s %16s %16s %12s\n", "n", "P exact", "closed form", "E[colorings]");
  for (int n : {4, 8, 16, 32}) {
    const ColoringRequest r{n, 3, 3};
    std::printf("%4d %16.6Le %16.6Le %12.4Lf\n", n, LogMagnitudeValue::from_rational(exact_P(r)).to_real(),
                closed_form_P(r).to_real(), empirical_E(r).to_real());
  }
}
