#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <set>

#include "doctest.h"
#include "treemix/spectral.hpp"

using namespace treemix;

namespace {

Rational q(long num, long den) { return make_rational(num, den); }

Rational trace_of_power(const RationalKernel& k, int p) {
  RationalMatrix power = RationalMatrix::Identity(k.entries.rows(), k.entries.cols());
  for (int step = 0; step < p; ++step) power = (power * k.entries).eval();
  Rational tr = 0;
  for (Index i = 0; i < power.rows(); ++i) tr += power(i, i);
  return tr;
}

Rational spectral_power_sum(const Spectrum& s, int p) {
  Rational total = 0;
  for (const auto& [lambda, mult] : s.eigenvalues) total += Rational(mult) * rational_pow(lambda, p);
  return total;
}

}  // namespace

TEST_CASE("spectra at the worked sizes") {
  const Spectrum s3 = down_up_spectrum(3);
  REQUIRE(s3.eigenvalues.size() == 2);
  CHECK(s3.eigenvalues[0] == std::pair{Rational(1), BigInt(1)});
  CHECK(s3.eigenvalues[1] == std::pair{Rational(0), BigInt(1)});

  const Spectrum s4 = down_up_spectrum(4);
  REQUIRE(s4.eigenvalues.size() == 3);
  CHECK(s4.eigenvalues[0] == std::pair{Rational(1), BigInt(1)});
  CHECK(s4.eigenvalues[1] == std::pair{q(1, 2), BigInt(1)});
  CHECK(s4.eigenvalues[2] == std::pair{Rational(0), BigInt(2)});
  CHECK(spectral_power_sum(s4, 1) == q(3, 2));

  const Spectrum s6 = down_up_spectrum(6);
  std::vector<BigInt> mults;
  for (const auto& [lambda, mult] : s6.eigenvalues) mults.push_back(mult);
  CHECK(mults == std::vector<BigInt>{1, 1, 2, 5, 11});
}

TEST_CASE("multiplicities fill the state space and eigenvalues descend") {
  for (int n = 3; n <= 10; ++n) {
    const Spectrum s = down_up_spectrum(n);
    BigInt total = 0;
    for (size_t i = 0; i < s.eigenvalues.size(); ++i) {
      total += s.eigenvalues[i].second;
      if (i > 0) CHECK(s.eigenvalues[i].first < s.eigenvalues[i - 1].first);
    }
    CHECK(total == count_trees(n));
  }
}

TEST_CASE("kernel traces match spectral power sums") {
  for (int n = 2; n <= 7; ++n) {
    const RationalKernel k = down_up_kernel(n);
    const Spectrum s = down_up_spectrum(n);
    for (int p = 1; p <= 4; ++p) CHECK(trace_of_power(k, p) == spectral_power_sum(s, p));
  }
}

TEST_CASE("separation values frozen at small sizes") {
  CHECK(separation_eigen(4, 1) == 1);
  CHECK(separation_eigen(4, 2) == q(1, 2));
  CHECK(separation_eigen(5, 3) == q(41, 50));
  CHECK(separation_eigen(6, 10) == make_rational(BigInt("306109643"), BigInt("854296875")));
  CHECK(separation_eigen(7, 20) ==
        make_rational(BigInt("90265246469138457360103"),
                      BigInt("490685060753000967614103")));
}

TEST_CASE("the three separation routes agree") {
  for (int n = 2; n <= 6; ++n) {
    for (long r = 0; r <= 10; ++r) {
      const Rational a = separation_eigen(n, r);
      const Rational b = separation_recurrence(n, r);
      const Rational c = separation_bruteforce(n, r).value;
      CHECK(a == b);
      CHECK(a == c);
    }
  }
}

TEST_CASE("matrix-power argmax pairs at size 4 and 5") {
  const BruteforceSeparation s42 = separation_bruteforce(4, 2);
  CHECK(s42.value == q(1, 2));
  const std::set<std::pair<Index, Index>> got42(s42.argmax.begin(), s42.argmax.end());
  const std::set<std::pair<Index, Index>> want42{{0, 3}, {1, 3}, {3, 0}, {3, 1}};
  CHECK(got42 == want42);

  const BruteforceSeparation s54 = separation_bruteforce(5, 4);
  CHECK(s54.value == q(311, 500));
  const std::set<std::pair<Index, Index>> got54(s54.argmax.begin(), s54.argmax.end());
  const std::set<std::pair<Index, Index>> want54{{0, 8}, {1, 8}, {2, 8}, {4, 8},
                                                 {8, 0}, {8, 1}, {8, 2}, {8, 4}};
  CHECK(got54 == want54);

  // path and star are always extremal pairs
  const TreeTable t5 = enumerate_trees(5);
  const Index path = t5.index_of(CanonicalTree::path(5).encoding());
  const Index star = t5.index_of(CanonicalTree::star(5).encoding());
  CHECK(got54.count({path, star}) == 1);
  CHECK(got54.count({star, path}) == 1);
}

TEST_CASE("r = 0 separation is certain except for trivial chains") {
  for (int n = 1; n <= 6; ++n) {
    const Rational expected = count_trees(n) >= 2 ? 1 : 0;
    CHECK(separation_eigen(n, 0) == expected);
    CHECK(separation_recurrence(n, 0) == expected);
    CHECK(separation_bruteforce(n, 0).value == expected);
  }
}

TEST_CASE("bruteforce refuses sizes beyond the cap") {
  CHECK_THROWS_AS(separation_bruteforce(9, 1), ResourceLimitError);
  CHECK_NOTHROW(separation_bruteforce(9, 1, 9));
}

TEST_CASE("up-down separation shifts the down-up curve") {
  for (int n = 2; n <= 7; ++n) {
    for (long r = 0; r <= 20; ++r) CHECK(separation_updown(n, r) == separation_eigen(n + 1, r + 1));
  }
}

TEST_CASE("up-down separation matches direct powers of the up-down kernel") {
  for (int n = 2; n <= 5; ++n) {
    const RationalKernel ud = up_down_kernel(n);
    const Measure pi = plancherel_measure(ud.row_table);
    RationalMatrix power =
        RationalMatrix::Identity(ud.entries.rows(), ud.entries.cols());
    for (long r = 1; r <= 12; ++r) {
      power = (power * ud.entries).eval();
      Rational worst = 0;
      for (Index i = 0; i < power.rows(); ++i) {
        for (Index j = 0; j < power.cols(); ++j) {
          const Rational sep = 1 - power(i, j) / pi.probs(j);
          if (sep > worst) worst = sep;
        }
      }
      CHECK(worst == separation_updown(n, r));
    }
  }
}

TEST_CASE("geometric tail estimates track the exact curve") {
  const double exact_610 = mpq_get_d(separation_eigen(6, 10).get_mpq_t());
  const double est = geometric_tail(6, 10, 200000, 12345);
  const double sigma = std::sqrt(exact_610 * (1 - exact_610) / 200000.0);
  CHECK(std::abs(est - exact_610) < 4 * sigma);
}

TEST_CASE("geometric tail is deterministic and degenerate cases are exact") {
  CHECK(geometric_tail(6, 10, 5000, 42) == geometric_tail(6, 10, 5000, 42));
  CHECK(geometric_tail(3, 0, 1000, 7) == 1.0);   // one geometric, always > 0
  CHECK(geometric_tail(3, 1, 1000, 7) == 0.0);   // success rate 1, T = 1 surely
}

TEST_CASE("limit profile values") {
  const LimitSeries one = limit_value(1.0);
  CHECK(one.value == doctest::Approx(0.024572641273329778).epsilon(1e-14));
  CHECK(one.tail_bound <= 1e-12);
  CHECK(one.terms_used >= 3);

  const LimitSeries half = limit_value(0.5);
  CHECK(half.value == doctest::Approx(0.4147448397153968).epsilon(1e-13));

  const LimitSeries quarter = limit_value(0.25);
  CHECK(quarter.value == doctest::Approx(0.9561845519130039).epsilon(1e-13));
}

TEST_CASE("floating route matches the exact one where both run") {
  for (int n = 4; n <= 7; ++n) {
    for (long r : {1L, 2L, 5L, 10L, 25L}) {
      const double exact = mpq_get_d(separation_eigen(n, r).get_mpq_t());
      CHECK(separation_float(n, r) == doctest::Approx(exact).epsilon(1e-12));
    }
  }
  CHECK(separation_float(3, 100) == 0.0);
  CHECK(separation_float(50, 0) == 1.0);
}

TEST_CASE("floating route approaches the limit profile as n grows") {
  const double target = limit_value(1.0).value;
  const double at100 = std::abs(separation_float(100, 10000) - target);
  const double at200 = std::abs(separation_float(200, 40000) - target);
  CHECK(at100 < 3e-3);
  CHECK(at200 < at100);
}

TEST_CASE("separation curves along each route") {
  const SeparationCurve eigen = separation_curve(4, 6, SeparationRoute::kEigenFormula);
  REQUIRE(eigen.exact);
  REQUIRE(eigen.exact_values.size() == 7);
  CHECK(eigen.exact_values[0] == 1);
  CHECK(eigen.exact_values[2] == q(1, 2));

  const SeparationCurve rec = separation_curve(4, 6, SeparationRoute::kARecurrence);
  const SeparationCurve mat = separation_curve(4, 6, SeparationRoute::kMatrixPower);
  REQUIRE(rec.exact);
  REQUIRE(mat.exact);
  for (size_t r = 0; r < 7; ++r) {
    CHECK(rec.exact_values[r] == eigen.exact_values[r]);
    CHECK(mat.exact_values[r] == eigen.exact_values[r]);
  }

  // large n switches the eigen route to floating point
  const SeparationCurve big = separation_curve(31, 3, SeparationRoute::kEigenFormula);
  CHECK_FALSE(big.exact);
  REQUIRE(big.float_values.size() == 4);
  CHECK(big.float_values[0] == 1.0);

  CHECK_THROWS_AS(separation_curve(9, 3, SeparationRoute::kMatrixPower), ResourceLimitError);
  CHECK_THROWS_AS(separation_curve(4, -1, SeparationRoute::kEigenFormula), std::domain_error);
}

TEST_CASE("route names") {
  CHECK(route_name(SeparationRoute::kEigenFormula) == "eigen-formula");
  CHECK(route_name(SeparationRoute::kARecurrence) == "A-recurrence");
  CHECK(route_name(SeparationRoute::kMatrixPower) == "matrix-power");
}
