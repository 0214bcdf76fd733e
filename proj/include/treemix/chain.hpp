#pragma once

#include <cstdint>
#include <string>

#include "treemix/operators.hpp"

namespace treemix {

// m(t) for every tree of a table, in table order.
std::vector<BigInt> m_values(const TreeTable& table);

// A probability measure on the trees of one table, exact rationals in table
// order.
struct Measure {
  TreeTable table;
  RationalVector probs;
};

// The stationary measure pi_n(t) = m(t) n(t) / prod_{i=2}^n C(i,2).  Both
// closed forms (the m*n quotient and n 2^{n-1} / (sg * prod h^2)) are
// evaluated and must agree; the probabilities must sum to exactly 1.
Measure plancherel_measure(const TreeTable& table);
Measure plancherel_measure(int n, int max_size = kMaxEnumerationSize);

// A row-stochastic transition matrix between two tables of trees, exact
// rationals.  Rows index source trees, columns target trees.
struct RationalKernel {
  TreeTable row_table;
  TreeTable col_table;
  RationalMatrix entries;
};

// One growth step conditioned on the stationary weights: from size n-1 to
// size n, P_u(t, t') = n(t, t') m(t') / (C(n,2) m(t)).
RationalKernel up_kernel(const TreeTable& from, const TreeTable& to);
RationalKernel up_kernel(int n, int max_size = kMaxEnumerationSize);

// One pruning step: from size n to size n-1, P_d(t, t') = m(t', t) m(t') / m(t).
RationalKernel down_kernel(const TreeTable& from, const TreeTable& to);
RationalKernel down_kernel(int n, int max_size = kMaxEnumerationSize);

// The down-up chain K_n on size-n trees: one pruning step followed by one
// growth step.  K_1 is the 1x1 identity by convention.
RationalKernel down_up_kernel(int n, int max_size = kMaxEnumerationSize);

// The same kernel via the commutation route: (1/C(n,2)) times the integer
// product P_n G_{n-1}, conjugated entry-wise by the m-weights.  Must equal
// down_up_kernel entry for entry; kept separate so the two constructions
// stay independent cross-checks.
RationalKernel down_up_conjugation(int n, int max_size = kMaxEnumerationSize);

// The up-down chain on size-n trees: one growth step to size n+1, then one
// pruning step back.
RationalKernel up_down_kernel(int n, int max_size = kMaxEnumerationSize);

// Up-down via the commutation route: (1/C(n+1,2)) times G_n P_{n+1},
// conjugated entry-wise by the m-weights.
RationalKernel up_down_conjugation(int n, int max_size = kMaxEnumerationSize);

// Exact detailed balance of the down-up chain against the stationary
// measure: pi(t) K(t,t') = pi(t') K(t',t) for all pairs.
bool verify_reversibility(int n, int max_size = kMaxEnumerationSize);

// A realized down-up trajectory; states are positions in the size-n table,
// states[0] the start.  Sampling inverts exact rational row CDFs against
// u = v / 2^64 built from one raw 64-bit draw per transition, so a seed
// fixes the trajectory on every platform.
struct TrajectorySample {
  int n = 0;
  std::uint64_t seed = 0;
  std::string generator;  // "mt19937_64"
  std::vector<Index> states;
};
TrajectorySample sample_trajectory(int n, long steps, const CanonicalTree& start,
                                   std::uint64_t seed, int max_size = kMaxEnumerationSize);

}  // namespace treemix
