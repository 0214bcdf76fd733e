#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <map>

#include "doctest.h"
#include "treemix/chain.hpp"

using namespace treemix;

namespace {

Rational q(long num, long den) { return make_rational(num, den); }

bool kernels_equal(const RationalKernel& a, const RationalKernel& b) {
  if (a.entries.rows() != b.entries.rows() || a.entries.cols() != b.entries.cols()) return false;
  for (Index i = 0; i < a.entries.rows(); ++i) {
    for (Index j = 0; j < a.entries.cols(); ++j) {
      if (a.entries(i, j) != b.entries(i, j)) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("m_values matches per-tree statistics") {
  const TreeTable t5 = enumerate_trees(5);
  const std::vector<BigInt> m = m_values(t5);
  REQUIRE(m.size() == static_cast<size_t>(t5.count()));
  for (Index i = 0; i < t5.count(); ++i) CHECK(m[static_cast<size_t>(i)] == tree_stats(t5.at(i)).m);
}

TEST_CASE("stationary measure at the worked sizes") {
  const Measure mu1 = plancherel_measure(1);
  REQUIRE(mu1.probs.size() == 1);
  CHECK(mu1.probs(0) == 1);

  const Measure mu4 = plancherel_measure(4);
  REQUIRE(mu4.probs.size() == 4);
  CHECK(mu4.probs(0) == q(1, 18));
  CHECK(mu4.probs(1) == q(1, 9));
  CHECK(mu4.probs(2) == q(1, 2));
  CHECK(mu4.probs(3) == q(1, 3));

  // the path tree carries weight 1/prod C(i,2)
  const Measure mu7 = plancherel_measure(7);
  CHECK(mu7.probs(mu7.table.index_of(CanonicalTree::path(7).encoding())) == q(1, 56700));
}

TEST_CASE("measure construction validates itself up to size 10") {
  for (int n = 1; n <= 10; ++n) {
    const Measure mu = plancherel_measure(n);
    Rational total = 0;
    for (Index i = 0; i < mu.probs.size(); ++i) {
      CHECK(mu.probs(i) > 0);
      total += mu.probs(i);
    }
    CHECK(total == 1);
  }
}

TEST_CASE("up kernel at the smallest sizes") {
  const RationalKernel u2 = up_kernel(2);
  REQUIRE(u2.entries.rows() == 1);
  REQUIRE(u2.entries.cols() == 1);
  CHECK(u2.entries(0, 0) == 1);

  const RationalKernel u4 = up_kernel(4);
  REQUIRE(u4.entries.rows() == 2);
  REQUIRE(u4.entries.cols() == 4);
  const Index path3 = u4.row_table.index_of("((()))");
  const Index star3 = u4.row_table.index_of("(()())");
  CHECK(u4.entries(path3, 0) == q(1, 6));
  CHECK(u4.entries(path3, 1) == q(1, 3));
  CHECK(u4.entries(path3, 2) == q(1, 2));
  CHECK(u4.entries(path3, 3) == 0);
  CHECK(u4.entries(star3, 0) == 0);
  CHECK(u4.entries(star3, 1) == 0);
  CHECK(u4.entries(star3, 2) == q(1, 2));
  CHECK(u4.entries(star3, 3) == q(1, 2));
}

TEST_CASE("down kernel at the smallest sizes") {
  const RationalKernel d2 = down_kernel(2);
  REQUIRE(d2.entries.rows() == 1);
  REQUIRE(d2.entries.cols() == 1);
  CHECK(d2.entries(0, 0) == 1);

  const RationalKernel d4 = down_kernel(4);
  const Index path3 = d4.col_table.index_of("((()))");
  const Index star3 = d4.col_table.index_of("(()())");
  // deep chain: both prunable leaves land on the path
  CHECK(d4.entries(1, path3) == 1);
  CHECK(d4.entries(1, star3) == 0);
  // the fork splits 1/3 vs 2/3 by the m-weights
  CHECK(d4.entries(2, path3) == q(1, 3));
  CHECK(d4.entries(2, star3) == q(2, 3));
}

TEST_CASE("the worked size-4 down-up kernel") {
  const RationalKernel k = down_up_kernel(4);
  const Rational expected[4][4] = {
      {q(1, 6), q(1, 3), q(1, 2), Rational(0)},
      {q(1, 6), q(1, 3), q(1, 2), Rational(0)},
      {q(1, 18), q(1, 9), q(1, 2), q(1, 3)},
      {Rational(0), Rational(0), q(1, 2), q(1, 2)},
  };
  REQUIRE(k.entries.rows() == 4);
  REQUIRE(k.entries.cols() == 4);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = 0; j < 4; ++j) CHECK(k.entries(i, j) == expected[i][j]);
  }
}

TEST_CASE("size-1 kernels are the identity") {
  const RationalKernel k1 = down_up_kernel(1);
  REQUIRE(k1.entries.rows() == 1);
  CHECK(k1.entries(0, 0) == 1);
  const RationalKernel ud1 = up_down_kernel(1);
  REQUIRE(ud1.entries.rows() == 1);
  CHECK(ud1.entries(0, 0) == 1);
}

TEST_CASE("composed kernels equal their conjugation constructions") {
  for (int n = 1; n <= 8; ++n) {
    CHECK(kernels_equal(down_up_kernel(n), down_up_conjugation(n)));
  }
  for (int n = 1; n <= 7; ++n) {
    CHECK(kernels_equal(up_down_kernel(n), up_down_conjugation(n)));
  }
}

TEST_CASE("up kernel's two displayed forms agree") {
  for (int n = 2; n <= 8; ++n) {
    const TreeTable lo = enumerate_trees(n - 1);
    const TreeTable hi = enumerate_trees(n);
    const RationalKernel u = up_kernel(lo, hi);
    std::vector<BigInt> nw_lo, nw_hi;
    for (Index i = 0; i < lo.count(); ++i) nw_lo.push_back(tree_stats(lo.at(i)).n_weight);
    for (Index j = 0; j < hi.count(); ++j) nw_hi.push_back(tree_stats(hi.at(j)).n_weight);
    const BigInt norm = choose2(n);
    RationalMatrix alt = RationalMatrix::Zero(lo.count(), hi.count());
    for (Index j = 0; j < hi.count(); ++j) {
      for (const auto& [t, count] : prune(hi.at(j))) {
        const Index i = lo.index_of(t.encoding());
        alt(i, j) = make_rational(count * nw_hi[static_cast<size_t>(j)],
                                  norm * nw_lo[static_cast<size_t>(i)]);
      }
    }
    for (Index i = 0; i < lo.count(); ++i) {
      for (Index j = 0; j < hi.count(); ++j) CHECK(u.entries(i, j) == alt(i, j));
    }
  }
}

TEST_CASE("growth and pruning steps intertwine the stationary measures") {
  for (int n = 2; n <= 8; ++n) {
    const TreeTable lo = enumerate_trees(n - 1);
    const TreeTable hi = enumerate_trees(n);
    const Measure pi_lo = plancherel_measure(lo);
    const Measure pi_hi = plancherel_measure(hi);
    const RationalKernel u = up_kernel(lo, hi);
    const RationalKernel d = down_kernel(hi, lo);
    for (Index j = 0; j < hi.count(); ++j) {
      Rational s = 0;
      for (Index i = 0; i < lo.count(); ++i) s += pi_lo.probs(i) * u.entries(i, j);
      CHECK(s == pi_hi.probs(j));
    }
    for (Index j = 0; j < lo.count(); ++j) {
      Rational s = 0;
      for (Index i = 0; i < hi.count(); ++i) s += pi_hi.probs(i) * d.entries(i, j);
      CHECK(s == pi_lo.probs(j));
    }
  }
}

TEST_CASE("the down-up chain is reversible and stationary") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(verify_reversibility(n));
    const RationalKernel k = down_up_kernel(n);
    const Measure pi = plancherel_measure(k.row_table);
    for (Index j = 0; j < k.entries.cols(); ++j) {
      Rational s = 0;
      for (Index i = 0; i < k.entries.rows(); ++i) s += pi.probs(i) * k.entries(i, j);
      CHECK(s == pi.probs(j));
    }
  }
}

TEST_CASE("trajectories are reproducible and validated") {
  const CanonicalTree start = CanonicalTree::path(4);
  const TrajectorySample a = sample_trajectory(4, 50, start, 99);
  const TrajectorySample b = sample_trajectory(4, 50, start, 99);
  CHECK(a.states == b.states);
  CHECK(a.generator == "mt19937_64");
  CHECK(a.seed == 99);
  REQUIRE(a.states.size() == 51);
  for (Index s : a.states) {
    CHECK(s >= 0);
    CHECK(s < 4);
  }

  const TrajectorySample c = sample_trajectory(4, 50, start, 100);
  CHECK(a.states != c.states);

  const TrajectorySample still = sample_trajectory(4, 0, start, 1);
  CHECK(still.states == std::vector<Index>{0});

  const TrajectorySample one = sample_trajectory(1, 5, CanonicalTree("()"), 7);
  CHECK(one.states == std::vector<Index>(6, 0));

  CHECK_THROWS_AS(sample_trajectory(4, 5, CanonicalTree("()"), 0), std::invalid_argument);
  CHECK_THROWS_AS(sample_trajectory(4, -1, start, 0), std::domain_error);
}

TEST_CASE("long trajectories visit states with stationary frequencies") {
  const long steps = 100000;
  const TrajectorySample traj = sample_trajectory(4, steps, CanonicalTree::path(4), 2024);
  const Measure pi = plancherel_measure(4);
  std::map<Index, long> visits;
  for (size_t s = 1; s < traj.states.size(); ++s) visits[traj.states[s]] += 1;
  for (Index i = 0; i < 4; ++i) {
    const double freq = static_cast<double>(visits[i]) / static_cast<double>(steps);
    const double target = mpq_get_d(pi.probs(i).get_mpq_t());
    // the chain correlates consecutive visits, so allow a few multiples of
    // the i.i.d. binomial deviation
    const double sigma = std::sqrt(target * (1 - target) / static_cast<double>(steps));
    CHECK(std::abs(freq - target) < 8 * sigma);
  }
}
